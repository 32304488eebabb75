#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entire/minimize.hpp"
#include "entire/tiling.hpp"

namespace entire {

// Resolved configuration of one CLI run. Exit codes: 0 success,
// 2 precondition/config error, 3 convergence failure (partial artifacts and
// a failure report are still written).
struct RunConfig {
  enum class Command { Solve, Tile, Radial, Galerkin, Sweep };

  Command command = Command::Solve;
  bool deterministic = true;

  // solve / sweep
  DomainSpec domain;
  QuotientParams params;
  SeedSpec seed;
  std::vector<CapRegion> caps;
  ToleranceSet tol;
  std::vector<double> sweep_Rs;

  // tile
  std::string field_in;
  std::string pattern = "rect_even";
  Window window{};
  double hs = 0.25;

  // radial
  int radial_n = 2;
  int radial_nodes = 0;
  double bracket_lo = 1.0;
  double bracket_hi = 2.0;
  double radial_step = 1e-3;
  double radial_rmax = 40.0;

  // galerkin
  std::string galerkin_mode = "integrate"; // integrate | family | reconstruct | eigen
  double gl_l = 2 * M_PI;
  double gl_theta = 0;
  double gl_x0 = -10, gl_x1 = 10;
  double gl_step = 1e-3;
  std::vector<double> gl_state; // 6 initial values for integrate
  double eigen_L = 20, eigen_h = 0.005;

  // outputs
  std::string out_path;    // FIELDv1 / GRIDv1 / profile text
  std::string report_path; // JSON report
  std::string gnuplot_path;
};

int run(const RunConfig& config);

} // namespace entire
