#include "entire/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "entire/errors.hpp"

namespace entire {

namespace {

[[noreturn]] void invalid_spec(const std::string& what) {
  throw PreconditionError("invalid-spec", what);
}

int cells_per_length(double length, double h) {
  return std::max(1, static_cast<int>(std::ceil(length / h - 1e-12)));
}

// vertex index in the k-subdivided triangle lattice, row j holds k-j+1 entries
int tri_index(int k, int i, int j) { return j * (k + 1) - j * (j - 1) / 2 + i; }

} // namespace

std::string shape_name(Shape s) {
  switch (s) {
    case Shape::Rectangle: return "rect";
    case Shape::Equilateral: return "tri";
    case Shape::RightTriangle3060: return "tri3060";
    case Shape::RightTriangle4545: return "tri4545";
    case Shape::Strip: return "strip";
    case Shape::Interval: return "interval";
  }
  return "rect";
}

Shape shape_from_name(const std::string& name) {
  if (name == "rect" || name == "rectangle") return Shape::Rectangle;
  if (name == "tri" || name == "equilateral") return Shape::Equilateral;
  if (name == "tri3060") return Shape::RightTriangle3060;
  if (name == "tri4545") return Shape::RightTriangle4545;
  if (name == "strip") return Shape::Strip;
  if (name == "interval") return Shape::Interval;
  invalid_spec("unknown domain shape: " + name);
}

std::string CapRegion::name(Shape shape) const {
  std::string base = kind == RegionKind::Sector ? "sector" : "ball";
  return base + corner_label(shape, corner);
}

int corner_id_from_label(Shape shape, const std::string& label) {
  if (shape == Shape::RightTriangle3060) {
    if (label == "Z" || label == "z") return 0;
    if (label == "Y" || label == "y") return 1;
    if (label == "X" || label == "x") return 2;
  }
  try {
    std::size_t pos = 0;
    int id = std::stoi(label, &pos);
    if (pos == label.size()) return id;
  } catch (const std::exception&) {
  }
  invalid_spec("unknown corner label: " + label);
}

std::string corner_label(Shape shape, int corner) {
  if (shape == Shape::RightTriangle3060) {
    switch (corner) {
      case 0: return "Z";
      case 1: return "Y";
      case 2: return "X";
    }
  }
  return std::to_string(corner);
}

int DomainSpec::edge_count() const {
  switch (shape) {
    case Shape::Rectangle:
    case Shape::Strip: return 4;
    case Shape::Equilateral:
    case Shape::RightTriangle3060:
    case Shape::RightTriangle4545: return 3;
    case Shape::Interval: return 2;
  }
  return 0;
}

int DomainSpec::corner_count() const {
  switch (shape) {
    case Shape::Rectangle:
    case Shape::Strip: return 4;
    case Shape::Equilateral:
    case Shape::RightTriangle3060:
    case Shape::RightTriangle4545: return 3;
    case Shape::Interval: return 2;
  }
  return 0;
}

void DomainSpec::validate() const {
  if (!(R > 0)) invalid_spec("scale R must be positive");
  if (!(h > 0)) invalid_spec("mesh spacing h must be positive");
  if (h > R / 8 + 1e-15 * R) invalid_spec("mesh spacing violates h <= R/8");
  if (shape == Shape::Rectangle && aspect < 1.0) invalid_spec("rectangle aspect must be >= 1");
  if (shape == Shape::Strip && half_height < 0) invalid_spec("strip half-height must be positive");
  if (!edge_conditions.empty() &&
      edge_conditions.size() != static_cast<std::size_t>(edge_count()))
    invalid_spec("edge_conditions must list every canonical edge");
  for (const CapRegion& r : constraint_regions) {
    if (r.corner < 0 || r.corner >= corner_count()) invalid_spec("constraint region corner id out of range");
    if (!(r.cap > 0)) invalid_spec("constraint cap must be positive");
  }
}

DomainSpec& DomainSpec::with_dirichlet_all() {
  edge_conditions.assign(edge_count(), EdgeCondition::DirichletZero);
  return *this;
}

DomainSpec& DomainSpec::with_dirichlet(std::initializer_list<int> edges) {
  if (edge_conditions.empty()) edge_conditions.assign(edge_count(), EdgeCondition::Natural);
  for (int e : edges) edge_conditions.at(e) = EdgeCondition::DirichletZero;
  return *this;
}

DomainSpec DomainSpec::rectangle(double R, double aspect, double h) {
  DomainSpec s;
  s.shape = Shape::Rectangle;
  s.R = R;
  s.aspect = aspect;
  s.h = h;
  return s;
}

DomainSpec DomainSpec::equilateral(double R, double h) {
  DomainSpec s;
  s.shape = Shape::Equilateral;
  s.R = R;
  s.h = h;
  return s;
}

DomainSpec DomainSpec::tri3060(double R, double h) {
  DomainSpec s;
  s.shape = Shape::RightTriangle3060;
  s.R = R;
  s.h = h;
  return s;
}

DomainSpec DomainSpec::tri4545(double R, double h) {
  DomainSpec s;
  s.shape = Shape::RightTriangle4545;
  s.R = R;
  s.h = h;
  return s;
}

DomainSpec DomainSpec::strip(double R, double T, double h) {
  DomainSpec s;
  s.shape = Shape::Strip;
  s.R = R;
  s.half_height = T;
  s.h = h;
  return s;
}

DomainSpec DomainSpec::interval(double R, double h) {
  DomainSpec s;
  s.shape = Shape::Interval;
  s.R = R;
  s.h = h;
  return s;
}

namespace {

// canonical corner coordinates, in edge order (edge e runs corner e -> e+1)
std::vector<Vec2> shape_corners(const DomainSpec& s) {
  const double R = s.R;
  switch (s.shape) {
    case Shape::Rectangle:
      return {{0, 0}, {R, 0}, {R, s.aspect * R}, {0, s.aspect * R}};
    case Shape::Equilateral:
      return {{0, 0}, {R, 0}, {R / 2, std::sqrt(3.0) / 2 * R}};
    case Shape::RightTriangle3060:
      // Z (right angle), Y (pi/6), X (pi/3); hypotenuse YX has length R
      return {{0, 0}, {std::sqrt(3.0) / 2 * R, 0}, {0, R / 2}};
    case Shape::RightTriangle4545:
      return {{0, 0}, {R, 0}, {0, R}};
    case Shape::Strip: {
      const double T = s.strip_T();
      return {{0, -T}, {R, -T}, {R, T}, {0, T}};
    }
    case Shape::Interval:
      return {{-R, 0}, {R, 0}};
  }
  return {};
}

EdgeCondition edge_cond(const DomainSpec& s, int edge) {
  if (s.edge_conditions.empty()) return EdgeCondition::Natural;
  return s.edge_conditions[static_cast<std::size_t>(edge)];
}

void finalize_2d(Mesh& m) {
  m.tri_geom.resize(m.triangles.size());
  m.vertex_weights.assign(m.vertex_count(), 0.0);
  m.area = 0;
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    const Vec2 a = m.vertices[tri[0]], b = m.vertices[tri[1]], c = m.vertices[tri[2]];
    const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    if (det <= 0) throw InternalError("triangle with non-positive area");
    TriGeom& g = m.tri_geom[t];
    g.area = det / 2;
    g.gx = {(b.y - c.y) / det, (c.y - a.y) / det, (a.y - b.y) / det};
    g.gy = {(c.x - b.x) / det, (a.x - c.x) / det, (b.x - a.x) / det};
    for (int v : tri) m.vertex_weights[v] += g.area / 3;
    m.area += g.area;
  }
}

void mark_dirichlet(Mesh& m) {
  m.dirichlet.assign(m.vertex_count(), 0);
  for (const BoundaryEdge& e : m.boundary_edges)
    if (e.cond == EdgeCondition::DirichletZero) {
      m.dirichlet[e.a] = 1;
      m.dirichlet[e.b] = 1;
    }
}

Mesh build_grid_mesh(const DomainSpec& spec) {
  // Rectangle or strip: uniform cells split along the lower-left to
  // upper-right diagonal.
  Mesh m;
  m.spec = spec;
  m.dim = 2;
  const double width = spec.R;
  const double ylo = spec.shape == Shape::Strip ? -spec.strip_T() : 0.0;
  const double yhi = spec.shape == Shape::Strip ? spec.strip_T() : spec.aspect * spec.R;
  m.nx = cells_per_length(width, spec.h);
  m.ny = cells_per_length(yhi - ylo, spec.h);
  m.x0 = 0;
  m.y0 = ylo;
  m.hx = width / m.nx;
  m.hy = (yhi - ylo) / m.ny;

  m.vertices.reserve(static_cast<std::size_t>(m.nx + 1) * (m.ny + 1));
  for (int j = 0; j <= m.ny; ++j)
    for (int i = 0; i <= m.nx; ++i)
      m.vertices.push_back({i == m.nx ? width : m.x0 + i * m.hx,
                            j == m.ny ? yhi : m.y0 + j * m.hy});

  auto vid = [&](int i, int j) { return j * (m.nx + 1) + i; };
  for (int j = 0; j < m.ny; ++j)
    for (int i = 0; i < m.nx; ++i) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      m.triangles.push_back({a, b, c});
      m.triangles.push_back({a, c, d});
    }

  for (int i = 0; i < m.nx; ++i) {
    m.boundary_edges.push_back({vid(i, 0), vid(i + 1, 0), 0, edge_cond(spec, 0)});
    m.boundary_edges.push_back({vid(i + 1, m.ny), vid(i, m.ny), 2, edge_cond(spec, 2)});
  }
  for (int j = 0; j < m.ny; ++j) {
    m.boundary_edges.push_back({vid(m.nx, j), vid(m.nx, j + 1), 1, edge_cond(spec, 1)});
    m.boundary_edges.push_back({vid(0, j + 1), vid(0, j), 3, edge_cond(spec, 3)});
  }

  finalize_2d(m);
  mark_dirichlet(m);
  return m;
}

Mesh build_triangle_mesh(const DomainSpec& spec) {
  // Self-similar subdivision into k^2 congruent sub-triangles; slanted edges
  // are exact.
  Mesh m;
  m.spec = spec;
  m.dim = 2;
  const auto corners = shape_corners(spec);
  const int k = cells_per_length(spec.R, spec.h);
  m.ksub = k;
  m.tri_origin = corners[0];
  m.tri_e1 = (1.0 / k) * (corners[1] - corners[0]);
  m.tri_e2 = (1.0 / k) * (corners[2] - corners[0]);
  const double det = m.tri_e1.x * m.tri_e2.y - m.tri_e2.x * m.tri_e1.y;
  m.tri_inv = {m.tri_e2.y / det, -m.tri_e2.x / det, -m.tri_e1.y / det, m.tri_e1.x / det};

  for (int j = 0; j <= k; ++j)
    for (int i = 0; i <= k - j; ++i)
      m.vertices.push_back(m.tri_origin + static_cast<double>(i) * m.tri_e1 +
                           static_cast<double>(j) * m.tri_e2);

  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k - j; ++i) {
      m.triangles.push_back({tri_index(k, i, j), tri_index(k, i + 1, j), tri_index(k, i, j + 1)});
      if (i + j < k - 1)
        m.triangles.push_back(
            {tri_index(k, i + 1, j), tri_index(k, i + 1, j + 1), tri_index(k, i, j + 1)});
    }

  for (int i = 0; i < k; ++i) {
    m.boundary_edges.push_back({tri_index(k, i, 0), tri_index(k, i + 1, 0), 0, edge_cond(spec, 0)});
    // hypotenuse: i + j == k
    m.boundary_edges.push_back(
        {tri_index(k, k - i, i), tri_index(k, k - i - 1, i + 1), 1, edge_cond(spec, 1)});
    m.boundary_edges.push_back({tri_index(k, 0, k - i), tri_index(k, 0, k - i - 1), 2, edge_cond(spec, 2)});
  }

  finalize_2d(m);
  mark_dirichlet(m);
  return m;
}

Mesh build_interval_mesh(const DomainSpec& spec) {
  Mesh m;
  m.spec = spec;
  m.dim = 1;
  m.nx = cells_per_length(2 * spec.R, spec.h);
  m.x0 = -spec.R;
  m.hx = 2 * spec.R / m.nx;
  for (int i = 0; i <= m.nx; ++i)
    m.vertices.push_back({i == m.nx ? spec.R : m.x0 + i * m.hx, 0.0});
  m.vertex_weights.assign(m.vertex_count(), 0.0);
  for (int i = 0; i < m.nx; ++i) {
    m.segments.push_back({i, i + 1});
    const double len = m.vertices[i + 1].x - m.vertices[i].x;
    m.vertex_weights[i] += len / 2;
    m.vertex_weights[i + 1] += len / 2;
    m.area += len;
  }
  m.boundary_edges.push_back({0, 0, 0, edge_cond(spec, 0)});
  m.boundary_edges.push_back({m.nx, m.nx, 1, edge_cond(spec, 1)});
  mark_dirichlet(m);
  return m;
}

} // namespace

Mesh build_mesh(const DomainSpec& spec) {
  spec.validate();
  switch (spec.shape) {
    case Shape::Rectangle:
    case Shape::Strip: return build_grid_mesh(spec);
    case Shape::Equilateral:
    case Shape::RightTriangle3060:
    case Shape::RightTriangle4545: return build_triangle_mesh(spec);
    case Shape::Interval: return build_interval_mesh(spec);
  }
  invalid_spec("unknown shape");
}

int Mesh::corner_vertex(int corner) const {
  const int k = ksub;
  switch (spec.shape) {
    case Shape::Rectangle:
    case Shape::Strip:
      switch (corner) {
        case 0: return 0;
        case 1: return nx;
        case 2: return (ny + 1) * (nx + 1) - 1;
        case 3: return ny * (nx + 1);
      }
      break;
    case Shape::Equilateral:
    case Shape::RightTriangle3060:
    case Shape::RightTriangle4545:
      switch (corner) {
        case 0: return 0;
        case 1: return k;
        case 2: return tri_index(k, 0, k);
      }
      break;
    case Shape::Interval:
      if (corner == 0) return 0;
      if (corner == 1) return nx;
      break;
  }
  invalid_spec("corner id out of range");
}

Vec2 Mesh::corner_position(int corner) const { return vertices[corner_vertex(corner)]; }

Vec2 Mesh::edge_midpoint(int edge) const {
  const auto corners = shape_corners(spec);
  if (edge < 0 || edge >= static_cast<int>(corners.size())) invalid_spec("edge id out of range");
  if (spec.shape == Shape::Interval) return corners[edge];
  const Vec2 a = corners[edge];
  const Vec2 b = corners[(edge + 1) % corners.size()];
  return 0.5 * (a + b);
}

Vec2 Mesh::centroid() const {
  const auto corners = shape_corners(spec);
  Vec2 c{};
  for (Vec2 v : corners) c = c + v;
  return (1.0 / corners.size()) * c;
}

bool Mesh::contains(Vec2 p, double tol) const {
  switch (spec.shape) {
    case Shape::Rectangle:
    case Shape::Strip: {
      const double yhi = y0 + ny * hy;
      return p.x >= x0 - tol && p.x <= x0 + nx * hx + tol && p.y >= y0 - tol && p.y <= yhi + tol;
    }
    case Shape::Interval:
      return p.x >= x0 - tol && p.x <= x0 + nx * hx + tol;
    default: {
      const Vec2 d = p - tri_origin;
      const double a = tri_inv[0] * d.x + tri_inv[1] * d.y;
      const double b = tri_inv[2] * d.x + tri_inv[3] * d.y;
      const double scale_tol = tol / spec.h; // master coordinates are in cell units
      return a >= -scale_tol && b >= -scale_tol && a + b <= ksub + scale_tol;
    }
  }
}

double Mesh::interpolate(std::span<const double> values, Vec2 p) const {
  switch (spec.shape) {
    case Shape::Interval: {
      double t = (p.x - x0) / hx;
      int i = std::clamp(static_cast<int>(std::floor(t)), 0, nx - 1);
      double f = std::clamp(t - i, 0.0, 1.0);
      return values[i] * (1 - f) + values[i + 1] * f;
    }
    case Shape::Rectangle:
    case Shape::Strip: {
      double tx = (p.x - x0) / hx;
      double ty = (p.y - y0) / hy;
      int i = std::clamp(static_cast<int>(std::floor(tx)), 0, nx - 1);
      int j = std::clamp(static_cast<int>(std::floor(ty)), 0, ny - 1);
      double fx = std::clamp(tx - i, 0.0, 1.0);
      double fy = std::clamp(ty - j, 0.0, 1.0);
      const int a = j * (nx + 1) + i;
      const double u00 = values[a], u10 = values[a + 1];
      const double u01 = values[a + nx + 1], u11 = values[a + nx + 2];
      if (fy <= fx) // lower triangle (a, b, c)
        return u00 + fx * (u10 - u00) + fy * (u11 - u10);
      return u00 + fx * (u11 - u01) + fy * (u01 - u00);
    }
    default: {
      const Vec2 d = p - tri_origin;
      double a = tri_inv[0] * d.x + tri_inv[1] * d.y;
      double b = tri_inv[2] * d.x + tri_inv[3] * d.y;
      a = std::clamp(a, 0.0, static_cast<double>(ksub));
      b = std::clamp(b, 0.0, static_cast<double>(ksub));
      if (a + b > ksub) { // clamp epsilon excursions beyond the hypotenuse
        const double excess = (a + b - ksub) / 2;
        a -= excess;
        b -= excess;
        a = std::clamp(a, 0.0, static_cast<double>(ksub));
        b = std::clamp(b, 0.0, static_cast<double>(ksub));
      }
      int i = std::min(static_cast<int>(std::floor(a)), ksub - 1);
      int j = std::min(static_cast<int>(std::floor(b)), ksub - 1);
      if (i + j > ksub - 1) { // fractional parts pushed past the diagonal row
        const int over = i + j - (ksub - 1);
        (a - i > b - j ? j : i) -= over;
        i = std::max(i, 0);
        j = std::max(j, 0);
      }
      double fa = std::clamp(a - i, 0.0, 1.0);
      double fb = std::clamp(b - j, 0.0, 1.0);
      const double v00 = values[tri_index(ksub, i, j)];
      const double v10 = values[tri_index(ksub, i + 1, j)];
      const double v01 = values[tri_index(ksub, i, j + 1)];
      if (fa + fb <= 1.0) return v00 * (1 - fa - fb) + v10 * fa + v01 * fb;
      const double v11 = (i + 1 + j + 1 <= ksub)
                             ? values[tri_index(ksub, i + 1, j + 1)]
                             : v10 + v01 - v00; // unreachable for in-domain points
      return v10 * (1 - fb) + v01 * (1 - fa) + v11 * (fa + fb - 1);
    }
  }
}

std::vector<int> Mesh::region_vertices(const CapRegion& region) const {
  const Vec2 c = corner_position(region.corner);
  const double r = region.radius(spec.R) + 1e-12 * spec.R;
  std::vector<int> out;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (dist(vertices[v], c) <= r) out.push_back(static_cast<int>(v));
  return out;
}

} // namespace entire
