#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entire {

// Uniform row-major sample grid (row 0 at y0).
struct GridField {
  int nx = 0;
  int ny = 0;
  double hs = 0;
  double x0 = 0;
  double y0 = 0;
  std::vector<double> values; // nx * ny

  double& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * nx + ix]; }
  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * nx + ix]; }
  bool empty() const { return nx == 0 || ny == 0; }
};

// GRIDv1 plain-text format:
//   line 1: GRIDv1
//   line 2: nx=<int> ny=<int> hs=<real> x0=<real> y0=<real>
//   ny lines of nx values
void write_grid(std::ostream& os, const GridField& g);
void write_grid(const std::string& path, const GridField& g);
GridField read_grid(std::istream& is);
GridField read_grid(const std::string& path);

} // namespace entire
