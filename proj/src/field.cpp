#include "entire/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "entire/errors.hpp"

namespace entire {

namespace {

[[noreturn]] void bad_format(const std::string& what) {
  throw PreconditionError("invalid-field-file", what);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double header_a(const DomainSpec& s) {
  if (s.shape == Shape::Rectangle) return s.aspect;
  if (s.shape == Shape::Strip) return s.strip_T() / s.R;
  return 1.0;
}

// "key=value" -> value
std::string header_value(const std::string& token, const std::string& key) {
  if (token.rfind(key + "=", 0) != 0) bad_format("expected '" + key + "=' in header, got: " + token);
  return token.substr(key.size() + 1);
}

} // namespace

double Field::max_abs() const {
  double m = 0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

bool Field::boundary_conforming() const {
  for (std::size_t v = 0; v < values.size(); ++v)
    if (mesh->dirichlet[v] && values[v] != 0.0) return false;
  return true;
}

void write_field(std::ostream& os, const Field& f) {
  const Mesh& m = *f.mesh;
  os << "FIELDv1\n";
  os << "shape=" << shape_name(m.spec.shape) << " R=" << fmt(m.spec.R)
     << " a=" << fmt(header_a(m.spec)) << " h=" << fmt(m.spec.h) << "\n";
  os << "nv=" << m.vertex_count() << " nt=" << m.triangles.size() << "\n";
  for (std::size_t v = 0; v < m.vertex_count(); ++v)
    os << fmt(m.vertices[v].x) << " " << fmt(m.vertices[v].y) << " " << fmt(f.values[v]) << "\n";
  for (const auto& t : m.triangles) os << t[0] << " " << t[1] << " " << t[2] << "\n";
}

void write_field(const std::string& path, const Field& f) {
  std::ofstream os(path);
  if (!os) throw PreconditionError("io", "cannot open for writing: " + path);
  write_field(os, f);
}

Field read_field(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "FIELDv1") bad_format("missing FIELDv1 magic line");

  if (!std::getline(is, line)) bad_format("missing header line");
  std::istringstream hs(line);
  std::string tshape, tR, ta, th;
  hs >> tshape >> tR >> ta >> th;
  DomainSpec spec;
  spec.shape = shape_from_name(header_value(tshape, "shape"));
  spec.R = std::stod(header_value(tR, "R"));
  const double a = std::stod(header_value(ta, "a"));
  spec.h = std::stod(header_value(th, "h"));
  if (spec.shape == Shape::Rectangle) spec.aspect = a;
  if (spec.shape == Shape::Strip) spec.half_height = a * spec.R;

  if (!std::getline(is, line)) bad_format("missing size line");
  std::istringstream ss(line);
  std::string tnv, tnt;
  ss >> tnv >> tnt;
  const std::size_t nv = std::stoul(header_value(tnv, "nv"));
  const std::size_t nt = std::stoul(header_value(tnt, "nt"));

  auto mesh = std::make_shared<Mesh>(build_mesh(spec));
  if (mesh->vertex_count() != nv)
    bad_format("vertex count does not match the header geometry");
  if (mesh->triangles.size() != nt)
    bad_format("triangle count does not match the header geometry");

  Field f(mesh);
  for (std::size_t v = 0; v < nv; ++v) {
    double x, y, val;
    if (!(is >> x >> y >> val)) bad_format("truncated vertex record");
    if (std::abs(x - mesh->vertices[v].x) > 1e-9 * (1 + spec.R) ||
        std::abs(y - mesh->vertices[v].y) > 1e-9 * (1 + spec.R))
      bad_format("vertex coordinates do not match the header geometry");
    f.values[v] = val;
  }
  for (std::size_t t = 0; t < nt; ++t) {
    int i, j, k;
    if (!(is >> i >> j >> k)) bad_format("truncated triangle record");
    const auto& tri = mesh->triangles[t];
    if (i != tri[0] || j != tri[1] || k != tri[2]) bad_format("triangle connectivity mismatch");
  }
  return f;
}

Field read_field(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw PreconditionError("io", "cannot open for reading: " + path);
  return read_field(is);
}

} // namespace entire
