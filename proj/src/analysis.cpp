#include "entire/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "entire/errors.hpp"

namespace entire::analysis {

double mass_in_ball(const Field& u, Vec2 center, double rho, double q) {
  if (rho < 0) throw PreconditionError("invalid-spec", "ball radius must be nonnegative");
  const Mesh& m = *u.mesh;
  double s = 0;
  for (std::size_t v = 0; v < u.values.size(); ++v)
    if (dist(m.vertices[v], center) <= rho)
      s += m.vertex_weights[v] * std::pow(std::abs(u.values[v]), q);
  return s;
}

namespace {

// per-vertex q-mass within a unit ball, via a bucket grid over the vertices
std::vector<double> unit_ball_mass(const Field& u, double q) {
  const Mesh& m = *u.mesh;
  const std::size_t n = u.values.size();
  Vec2 lo = m.vertices[0], hi = m.vertices[0];
  for (const Vec2& v : m.vertices) {
    lo.x = std::min(lo.x, v.x);
    lo.y = std::min(lo.y, v.y);
    hi.x = std::max(hi.x, v.x);
    hi.y = std::max(hi.y, v.y);
  }
  const double cell = 1.0;
  const int bx = std::max(1, static_cast<int>((hi.x - lo.x) / cell) + 1);
  const int by = std::max(1, static_cast<int>((hi.y - lo.y) / cell) + 1);
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(bx) * by);
  auto bucket_of = [&](Vec2 p) {
    const int ix = std::clamp(static_cast<int>((p.x - lo.x) / cell), 0, bx - 1);
    const int iy = std::clamp(static_cast<int>((p.y - lo.y) / cell), 0, by - 1);
    return iy * bx + ix;
  };
  for (std::size_t v = 0; v < n; ++v) buckets[bucket_of(m.vertices[v])].push_back(static_cast<int>(v));

  std::vector<double> wq(n);
  for (std::size_t v = 0; v < n; ++v)
    wq[v] = m.vertex_weights[v] * std::pow(std::abs(u.values[v]), q);

  std::vector<double> out(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    const Vec2 c = m.vertices[v];
    const int cx = std::clamp(static_cast<int>((c.x - lo.x) / cell), 0, bx - 1);
    const int cy = std::clamp(static_cast<int>((c.y - lo.y) / cell), 0, by - 1);
    double s = 0;
    for (int iy = std::max(0, cy - 1); iy <= std::min(by - 1, cy + 1); ++iy)
      for (int ix = std::max(0, cx - 1); ix <= std::min(bx - 1, cx + 1); ++ix)
        for (int w : buckets[static_cast<std::size_t>(iy) * bx + ix])
          if (dist(m.vertices[w], c) <= 1.0) s += wq[w];
    out[v] = s;
  }
  return out;
}

} // namespace

ConcentrationReport concentration_report(const Field& u, double q) {
  const Mesh& m = *u.mesh;
  ConcentrationReport rep;
  rep.total_mass = lq_norm_q(u, q);
  if (!(rep.total_mass > 0)) throw PreconditionError("zero-mass", "concentration report of a zero field");

  const std::vector<double> local = unit_ball_mass(u, q);
  std::size_t best = 0;
  for (std::size_t v = 1; v < local.size(); ++v)
    if (local[v] > local[best]) best = v;
  rep.center = m.vertices[best];

  // a competing center well away from the dominant one
  double runner = 0;
  for (std::size_t v = 0; v < local.size(); ++v)
    if (dist(m.vertices[v], rep.center) > 2.0) runner = std::max(runner, local[v]);
  rep.tied = runner >= 0.95 * local[best];

  Vec2 lo = m.vertices[0], hi = m.vertices[0];
  for (const Vec2& v : m.vertices) {
    lo.x = std::min(lo.x, v.x);
    lo.y = std::min(lo.y, v.y);
    hi.x = std::max(hi.x, v.x);
    hi.y = std::max(hi.y, v.y);
  }
  const double diam = dist(lo, hi);

  // smallest radius holding 99% of the mass, capped at diam/4 (beyond that
  // there is no dominant concentration to speak of)
  const double target = 0.99 * rep.total_mass;
  const double rcap = diam / 4;
  if (mass_in_ball(u, rep.center, rcap, q) < target) {
    rep.rho99 = rcap;
  } else {
    double alo = 0, ahi = rcap;
    while (ahi - alo > 1e-3) {
      const double mid = (alo + ahi) / 2;
      (mass_in_ball(u, rep.center, mid, q) >= target ? ahi : alo) = mid;
    }
    rep.rho99 = ahi;
  }
  rep.weight_hat = mass_in_ball(u, rep.center, rep.rho99, q) / rep.total_mass;
  rep.dominant = rep.weight_hat >= 0.5;
  return rep;
}

double cut_off_profile(double r, double rho, double rho_prime) {
  const double a = (11 * rho + rho_prime) / 12;
  const double b = (5 * rho + rho_prime) / 6;
  const double c = (rho + 5 * rho_prime) / 6;
  const double d = (rho + 11 * rho_prime) / 12;
  if (r <= a || r >= d) return 1.0;
  if (r >= b && r <= c) return 0.0;
  if (r < b) return (b - r) / (b - a);
  return (r - c) / (d - c);
}

Field cut_off(std::shared_ptr<const Mesh> mesh, Vec2 center, double rho, double rho_prime) {
  if (!(rho_prime > rho) || !(rho > 0))
    throw PreconditionError("invalid-radii", "cut_off needs rho_prime > rho > 0");
  Field sigma(std::move(mesh));
  const Mesh& m = *sigma.mesh;
  for (std::size_t v = 0; v < sigma.values.size(); ++v)
    sigma.values[v] = cut_off_profile(dist(m.vertices[v], center), rho, rho_prime);
  return sigma;
}

namespace {

// 0 = empty, else bitmask of which inputs are nonzero on the vertex
int support_mask(std::size_t v, const Field& a, const Field& b, const Field& c) {
  return (a.values[v] != 0 ? 1 : 0) | (b.values[v] != 0 ? 2 : 0) | (c.values[v] != 0 ? 4 : 0);
}

} // namespace

Field hump_recombine(const Field& a, const Field& b, const Field& c,
                     const QuotientParams& params) {
  const Mesh& m = *a.mesh;
  if (b.mesh.get() != a.mesh.get() || c.mesh.get() != a.mesh.get())
    throw PreconditionError("support-overlap", "hump_recombine inputs must share one mesh");

  // separated supports: no element may mix nonzero vertices of two inputs
  auto element_mask = [&](std::span<const int> verts) {
    int mask = 0;
    for (int v : verts) mask |= support_mask(static_cast<std::size_t>(v), a, b, c);
    return mask;
  };
  auto overlapping = [](int mask) { return mask != 0 && (mask & (mask - 1)) != 0; };
  if (m.dim == 2) {
    for (const auto& tri : m.triangles) {
      const int vs[3] = {tri[0], tri[1], tri[2]};
      if (overlapping(element_mask(vs)))
        throw PreconditionError("support-overlap", "hump_recombine inputs must have separated supports");
    }
  } else {
    for (const auto& seg : m.segments) {
      const int vs[2] = {seg[0], seg[1]};
      if (overlapping(element_mask(vs)))
        throw PreconditionError("support-overlap", "hump_recombine inputs must have separated supports");
    }
  }

  const double q = params.q, p = params.p;
  const double nb = lq_norm_q(b, q), nc = lq_norm_q(c, q);
  if (!(nb > 0) || !(nc > 0))
    throw PreconditionError("zero-hump", "hump_recombine needs b and c nonzero");
  const double eb = wp_energy_p(b, p), ec = wp_energy_p(c, p);
  if (eb / nb < ec / nc * (1 - 1e-12))
    throw PreconditionError("hump-inequality",
                            "energy-to-mass ratio of b must dominate c (swap b and c)");

  const double factor = std::pow(nb + nc, 1.0 / q) / std::pow(nc, 1.0 / q);
  Field U = a;
  for (std::size_t v = 0; v < U.values.size(); ++v)
    if (c.values[v] != 0) U.values[v] += factor * c.values[v];
  return U;
}

GridField steiner_symmetrize_y(const GridField& grid) {
  if (grid.ny % 2 == 0)
    throw PreconditionError("invalid-grid", "steiner_symmetrize_y needs an odd number of rows");
  GridField out = grid;
  const int center = grid.ny / 2;
  std::vector<double> col(grid.ny);
  for (int ix = 0; ix < grid.nx; ++ix) {
    for (int iy = 0; iy < grid.ny; ++iy) col[iy] = grid.at(ix, iy);
    std::sort(col.begin(), col.end(), std::greater<>());
    for (int r = 0; r < grid.ny; ++r) {
      const int offset = (r + 1) / 2;          // 0, 1, 1, 2, 2, ...
      const int row = r % 2 ? center + offset  // odd ranks go up first
                            : center - offset;
      out.at(ix, row) = col[r];
    }
  }
  return out;
}

RadialProfile radial_rearrange(const GridField& grid, double hs) {
  if (!(hs > 0)) throw PreconditionError("invalid-spec", "hs must be positive");
  for (double v : grid.values)
    if (v < 0)
      throw PreconditionError("negative-values",
                              "radial_rearrange needs a nonnegative grid (apply to |u| first)");
  RadialProfile prof;
  prof.values = grid.values;
  std::sort(prof.values.begin(), prof.values.end(), std::greater<>());
  prof.radii.resize(prof.values.size());
  const double cell = hs * hs;
  for (std::size_t k = 0; k < prof.values.size(); ++k)
    prof.radii[k] = std::sqrt((k + 1) * cell / M_PI);
  return prof;
}

double grid_h1_seminorm_sq(const GridField& grid) {
  double s = 0;
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      if (ix + 1 < grid.nx) {
        const double d = grid.at(ix + 1, iy) - grid.at(ix, iy);
        s += d * d;
      }
      if (iy + 1 < grid.ny) {
        const double d = grid.at(ix, iy + 1) - grid.at(ix, iy);
        s += d * d;
      }
    }
  return s; // (d/hs)^2 * hs^2 -- the spacing cancels
}

double profile_h1_seminorm_sq(const RadialProfile& profile) {
  // piecewise-linear interpolant through annulus midpoints
  double s = 0;
  for (std::size_t k = 0; k + 1 < profile.values.size(); ++k) {
    const double r0 = k == 0 ? profile.radii[0] / 2 : (profile.radii[k - 1] + profile.radii[k]) / 2;
    const double r1 = (profile.radii[k] + profile.radii[k + 1]) / 2;
    if (r1 <= r0) continue;
    const double slope = (profile.values[k + 1] - profile.values[k]) / (r1 - r0);
    s += slope * slope * M_PI * (r1 * r1 - r0 * r0);
  }
  return s;
}

} // namespace entire::analysis
