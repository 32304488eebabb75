#include "entire/grid.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "entire/errors.hpp"

namespace entire {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string header_value(const std::string& token, const std::string& key) {
  if (token.rfind(key + "=", 0) != 0)
    throw PreconditionError("invalid-grid-file", "expected '" + key + "=' in header, got: " + token);
  return token.substr(key.size() + 1);
}

} // namespace

void write_grid(std::ostream& os, const GridField& g) {
  os << "GRIDv1\n";
  os << "nx=" << g.nx << " ny=" << g.ny << " hs=" << fmt(g.hs) << " x0=" << fmt(g.x0)
     << " y0=" << fmt(g.y0) << "\n";
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      if (ix) os << ' ';
      os << fmt(g.at(ix, iy));
    }
    os << '\n';
  }
}

void write_grid(const std::string& path, const GridField& g) {
  std::ofstream os(path);
  if (!os) throw PreconditionError("io", "cannot open for writing: " + path);
  write_grid(os, g);
}

GridField read_grid(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "GRIDv1")
    throw PreconditionError("invalid-grid-file", "missing GRIDv1 magic line");
  if (!std::getline(is, line)) throw PreconditionError("invalid-grid-file", "missing header line");
  std::istringstream hs(line);
  std::string tnx, tny, ths, tx0, ty0;
  hs >> tnx >> tny >> ths >> tx0 >> ty0;
  GridField g;
  g.nx = std::stoi(header_value(tnx, "nx"));
  g.ny = std::stoi(header_value(tny, "ny"));
  g.hs = std::stod(header_value(ths, "hs"));
  g.x0 = std::stod(header_value(tx0, "x0"));
  g.y0 = std::stod(header_value(ty0, "y0"));
  g.values.resize(static_cast<std::size_t>(g.nx) * g.ny);
  for (double& v : g.values)
    if (!(is >> v)) throw PreconditionError("invalid-grid-file", "truncated value records");
  return g;
}

GridField read_grid(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw PreconditionError("io", "cannot open for reading: " + path);
  return read_grid(is);
}

} // namespace entire
