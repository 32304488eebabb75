#include "entire/tiling.hpp"

#include <cmath>

#include "entire/errors.hpp"

namespace entire {

namespace {

struct PatternInfo {
  Shape shape;                 // required domain shape (RadialNone accepts any)
  std::array<int, 4> parity;   // per canonical edge: -1 odd, +1 even, 0 not a generator
  int n_edges;
};

PatternInfo pattern_info(TilingPattern p) {
  switch (p) {
    case TilingPattern::RectEven: return {Shape::Rectangle, {+1, +1, +1, +1}, 4};
    case TilingPattern::RectBreather: return {Shape::Strip, {0, +1, 0, +1}, 4};
    case TilingPattern::RectSignVertical: return {Shape::Rectangle, {+1, -1, +1, -1}, 4};
    case TilingPattern::RectSignChecker: return {Shape::Rectangle, {-1, -1, -1, -1}, 4};
    case TilingPattern::TriEvenHex: return {Shape::Equilateral, {+1, +1, +1, 0}, 3};
    case TilingPattern::TriOdd: return {Shape::Equilateral, {-1, -1, -1, 0}, 3};
    case TilingPattern::TriOddOneSide: return {Shape::Equilateral, {-1, +1, +1, 0}, 3};
    case TilingPattern::Tri3060Odd: return {Shape::RightTriangle3060, {-1, -1, -1, 0}, 3};
    case TilingPattern::Tri4545Odd: return {Shape::RightTriangle4545, {-1, -1, -1, 0}, 3};
    case TilingPattern::StripBreatherSign: return {Shape::Strip, {0, -1, 0, -1}, 4};
    case TilingPattern::RadialNone: return {Shape::Rectangle, {0, 0, 0, 0}, 0};
  }
  throw InternalError("unknown tiling pattern");
}

std::vector<Vec2> domain_corners(const DomainSpec& s) {
  const double R = s.R;
  switch (s.shape) {
    case Shape::Rectangle: return {{0, 0}, {R, 0}, {R, s.aspect * R}, {0, s.aspect * R}};
    case Shape::Equilateral: return {{0, 0}, {R, 0}, {R / 2, std::sqrt(3.0) / 2 * R}};
    case Shape::RightTriangle3060: return {{0, 0}, {std::sqrt(3.0) / 2 * R, 0}, {0, R / 2}};
    case Shape::RightTriangle4545: return {{0, 0}, {R, 0}, {0, R}};
    case Shape::Strip: {
      const double T = s.strip_T();
      return {{0, -T}, {R, -T}, {R, T}, {0, T}};
    }
    case Shape::Interval: return {{-R, 0}, {R, 0}};
  }
  return {};
}

// fold x into [0, L] under reflections in {x = 0} and {x = L};
// .second = number of residual reflections mod 2
std::pair<double, int> fold_segment(double x, double L) {
  double t = std::fmod(x, 2 * L);
  if (t < 0) t += 2 * L;
  if (t <= L) return {t, 0};
  return {2 * L - t, 1};
}

} // namespace

std::string pattern_name(TilingPattern p) {
  switch (p) {
    case TilingPattern::RectEven: return "rect_even";
    case TilingPattern::RectBreather: return "rect_breather";
    case TilingPattern::RectSignVertical: return "rect_sign_vertical";
    case TilingPattern::RectSignChecker: return "rect_sign_checker";
    case TilingPattern::TriEvenHex: return "tri_even_hex";
    case TilingPattern::TriOdd: return "tri_odd";
    case TilingPattern::TriOddOneSide: return "tri_odd_one_side";
    case TilingPattern::Tri3060Odd: return "tri_30_60_odd";
    case TilingPattern::Tri4545Odd: return "tri_45_45_odd";
    case TilingPattern::StripBreatherSign: return "strip_breather_sign";
    case TilingPattern::RadialNone: return "radial_none";
  }
  return "radial_none";
}

TilingPattern pattern_from_name(const std::string& name) {
  for (TilingPattern p :
       {TilingPattern::RectEven, TilingPattern::RectBreather, TilingPattern::RectSignVertical,
        TilingPattern::RectSignChecker, TilingPattern::TriEvenHex, TilingPattern::TriOdd,
        TilingPattern::TriOddOneSide, TilingPattern::Tri3060Odd, TilingPattern::Tri4545Odd,
        TilingPattern::StripBreatherSign, TilingPattern::RadialNone})
    if (pattern_name(p) == name) return p;
  throw PreconditionError("invalid-tiling", "unknown tiling pattern: " + name);
}

TilingSpec build_tiling_unchecked(const DomainSpec& domain, TilingPattern pattern) {
  TilingSpec spec;
  spec.pattern = pattern;
  spec.domain = domain;
  if (pattern == TilingPattern::RadialNone) return spec;

  const PatternInfo info = pattern_info(pattern);
  const auto corners = domain_corners(domain);
  const int n = static_cast<int>(corners.size());
  for (int e = 0; e < n; ++e) {
    if (info.parity[e] == 0) continue;
    const Vec2 a = corners[e], b = corners[(e + 1) % n];
    Vec2 d = b - a;
    const Vec2 nrm = (1.0 / norm(d)) * Vec2{d.y, -d.x}; // outward for a CCW polygon
    spec.generators.push_back({nrm, dot(nrm, a), info.parity[e], e});
  }

  if (domain.shape == Shape::Rectangle || domain.shape == Shape::Strip) {
    spec.axis_fold = true;
    spec.period_half_x = domain.R;
    spec.parity_x = info.parity[1]; // left/right pair
    spec.fold_y = domain.shape == Shape::Rectangle;
    spec.period_half_y = domain.aspect * domain.R;
    spec.parity_y = info.parity[0]; // bottom/top pair
  }
  return spec;
}

bool check_sign_consistency(const TilingSpec& spec) {
  if (spec.generators.size() < 2) return true;
  const auto corners = domain_corners(spec.domain);
  const int n = static_cast<int>(corners.size());
  for (int c = 0; c < n; ++c) {
    const int e_prev = (c + n - 1) % n;
    const int e_next = c;
    const Generator* ga = nullptr;
    const Generator* gb = nullptr;
    for (const Generator& g : spec.generators) {
      if (g.edge_id == e_prev) ga = &g;
      if (g.edge_id == e_next) gb = &g;
    }
    if (!ga || !gb) continue;
    // interior angle at corner c
    const Vec2 va = corners[(c + n - 1) % n] - corners[c];
    const Vec2 vb = corners[(c + 1) % n] - corners[c];
    const double ang = std::acos(std::clamp(dot(va, vb) / (norm(va) * norm(vb)), -1.0, 1.0));
    const double ratio = M_PI / ang;
    const long m = std::lround(ratio);
    if (std::abs(ratio - m) > 1e-6) return false; // angle does not tile
    if (ga->parity * gb->parity < 0 && m % 2 != 0) return false;
  }
  return true;
}

TilingSpec make_tiling(const DomainSpec& domain, TilingPattern pattern) {
  if (pattern != TilingPattern::RadialNone) {
    const PatternInfo info = pattern_info(pattern);
    if (info.shape != domain.shape)
      throw PreconditionError("invalid-tiling",
                              "pattern " + pattern_name(pattern) + " requires a " +
                                  shape_name(info.shape) + " domain");
    for (int e = 0; e < info.n_edges; ++e) {
      const EdgeCondition cond = domain.edge_conditions.empty()
                                     ? EdgeCondition::Natural
                                     : domain.edge_conditions[static_cast<std::size_t>(e)];
      if (info.parity[e] == -1 && cond != EdgeCondition::DirichletZero)
        throw PreconditionError("invalid-tiling",
                                "odd reflection across edge " + std::to_string(e) +
                                    " requires a dirichlet_zero tag");
      if (info.parity[e] == +1 && cond != EdgeCondition::Natural)
        throw PreconditionError("invalid-tiling",
                                "even reflection across edge " + std::to_string(e) +
                                    " requires a natural tag");
    }
  }
  TilingSpec spec = build_tiling_unchecked(domain, pattern);
  if (!check_sign_consistency(spec))
    throw PreconditionError("obstruction",
                            "reflection signs cannot close up for pattern " + pattern_name(pattern));
  return spec;
}

double evaluate_entire(const Field& u, const TilingSpec& spec, Vec2 point) {
  const Mesh& m = *u.mesh;
  const double tol = 1e-12 * m.spec.R;

  if (spec.pattern == TilingPattern::RadialNone)
    return m.contains(point, tol) ? m.interpolate(u.values, point) : 0.0;

  double sign = 1.0;
  if (spec.axis_fold) {
    auto [fx, kx] = fold_segment(point.x, spec.period_half_x);
    point.x = fx;
    if (kx && spec.parity_x < 0) sign = -sign;
    if (spec.fold_y) {
      auto [fy, ky] = fold_segment(point.y, spec.period_half_y);
      point.y = fy;
      if (ky && spec.parity_y < 0) sign = -sign;
    } else if (!m.contains(point, tol)) {
      return 0.0; // beyond the truncated decay direction
    }
    return sign * m.interpolate(u.values, point);
  }

  const int cap = static_cast<int>(64 * (1 + norm(point) / m.spec.R));
  for (int it = 0; it <= cap; ++it) {
    int worst = -1;
    double dmax = tol;
    for (std::size_t gi = 0; gi < spec.generators.size(); ++gi) {
      const double d = dot(spec.generators[gi].normal, point) - spec.generators[gi].offset;
      if (d > dmax) {
        dmax = d;
        worst = static_cast<int>(gi);
      }
    }
    if (worst < 0) return sign * m.interpolate(u.values, point);
    point = point - (2 * dmax) * spec.generators[worst].normal;
    if (spec.generators[worst].parity < 0) sign = -sign;
  }
  throw InternalError("reflection fold exceeded its cap; spec does not tile the plane");
}

GridField sample_entire(const Field& u, const TilingSpec& spec, const Window& window, double hs) {
  if (!(hs > 0)) throw PreconditionError("invalid-spec", "sample spacing hs must be positive");
  GridField g;
  g.hs = hs;
  g.x0 = window.x0;
  g.y0 = window.y0;
  if (window.x1 >= window.x0 && window.y1 >= window.y0) {
    g.nx = static_cast<int>(std::floor((window.x1 - window.x0) / hs + 1e-9)) + 1;
    g.ny = static_cast<int>(std::floor((window.y1 - window.y0) / hs + 1e-9)) + 1;
  }
  g.values.resize(static_cast<std::size_t>(g.nx) * g.ny);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      g.at(ix, iy) = evaluate_entire(u, spec, {window.x0 + ix * hs, window.y0 + iy * hs});
  return g;
}

std::pair<double, double> tiled_residual(const GridField& grid) {
  if (grid.nx < 5 || grid.ny < 5)
    throw PreconditionError("invalid-grid", "tiled_residual needs at least 5x5 samples");
  const double inv_h2 = 1.0 / (grid.hs * grid.hs);
  double sup = 0, l2 = 0;
  for (int iy = 1; iy + 1 < grid.ny; ++iy)
    for (int ix = 1; ix + 1 < grid.nx; ++ix) {
      const double f = grid.at(ix, iy);
      const double lap = (grid.at(ix + 1, iy) + grid.at(ix - 1, iy) + grid.at(ix, iy + 1) +
                          grid.at(ix, iy - 1) - 4 * f) * inv_h2;
      const double r = -lap + f - f * f * f;
      sup = std::max(sup, std::abs(r));
      l2 += r * r;
    }
  return {sup, std::sqrt(l2 * grid.hs * grid.hs)};
}

} // namespace entire
