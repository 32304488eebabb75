#pragma once

#include <utility>
#include <vector>

namespace entire::radial {

// One shot of u'' + (n-1)/r u' - u + u^3 = 0, u(0) = alpha, u'(0) = 0.
// RK4 from r0 = 10*step with the series start u ~ alpha + (alpha-alpha^3) r^2/(2n).
struct ShootOptions {
  double r_max = 40.0;
  double step = 1e-3;
  double decay_tol = 1e-8;    // |u|, |u'| below this with u*u' <= 0 ends as Decay
  double blowup_factor = 2.0; // |u| > blowup_factor * alpha ends as Blowup
};

enum class ShootClass {
  Decay,
  Overshoot,  // still crossing zero near r_max
  Undershoot, // trapped oscillation in a fixed sign band
  Blowup,
};

struct ShootResult {
  ShootClass classification = ShootClass::Undershoot;
  int node_count = 0; // interior zero crossings
  std::vector<std::pair<double, double>> profile; // (r, u), uniform in r
};

ShootResult shoot(double alpha, int n, const ShootOptions& opts = {});

struct RadialSolution {
  double alpha = 0;
  int nodes = 0;
  std::vector<std::pair<double, double>> profile; // truncated at closest approach to 0
  double residual_sup = 0; // finite-difference ODE residual along the profile
};

// Bisection on alpha (to relative width 1e-12) for the solution with exactly
// k interior zeros. The bracket must satisfy node_count(lo) <= k and
// node_count(hi) > k, else a "bracket" precondition error is thrown.
RadialSolution find_k_node_solution(int k, int n, std::pair<double, double> bracket,
                                    const ShootOptions& opts = {});

// Scans [alpha_lo, alpha_hi] in `coarse` steps and bisects every node-count
// jump, returning the amplitudes of the k = 0..k_max solutions.
std::vector<RadialSolution> find_node_family(int k_max, int n, double alpha_lo, double alpha_hi,
                                             double coarse = 0.25, const ShootOptions& opts = {});

} // namespace entire::radial
