#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "entire/geometry.hpp"
#include "entire/grid.hpp"

namespace entire::galerkin {

// Three-mode reduction of lap u - u + u^3 = 0 for fields l-periodic in y:
//   u(x,y) = U0(x) + 2 U1(x) cos(2 pi y / l) - 2 V1(x) sin(2 pi y / l).
struct Params {
  double l = 2 * M_PI; // period in y, > 0
  double omega() const { return 2 * M_PI / l; }
  double lambda() const { return std::sqrt(omega() * omega() + 1.0); }
};

// Phase variables; p0 = U0', p1 = U1', q1 = V1'.
struct State {
  double U0 = 0, p0 = 0, U1 = 0, p1 = 0, V1 = 0, q1 = 0;
};

State vector_field(const State& s, const Params& params);

// H = (p0^2+p1^2+q1^2)/2 - (U0^2 + lambda^2 (U1^2+V1^2))/2
//     + U0^4/2 + 3 U0^2 (U1^2+V1^2) + (3/4)(U1^2+V1^2)^2
double hamiltonian(const State& s, const Params& params);

// K = p1 V1 - q1 U1
double integral_K(const State& s);

struct Trajectory {
  std::vector<double> xs;
  std::vector<State> states;
  double h_drift = 0; // max |H - H(s0)| along the trajectory
  double k_drift = 0; // max |K - K(s0)|
  bool failed = false;  // non-finite / diverged state; samples up to failure kept
  double fail_x = 0;
};

Trajectory integrate(const State& s0, const Params& params, double x_begin, double x_end,
                     double step);

// Homoclinic loop in the invariant plane U1 = p1 = V1 = q1 = 0:
// U0 = sech x, p0 = -sech x tanh x.
State planar_homoclinic(double x);

// One-parameter family in the invariant 4-plane U0 = p0 = 0:
//   U1 = r(x) cos theta, V1 = r(x) sin theta,
//   r(x) = -2 lambda / (e^(lambda x) + (3/2) e^(-lambda x)),
// with p1, q1 the exact x-derivatives.
State family_homoclinic(double x, double theta, const Params& params);
double family_r(double x, const Params& params);
double family_r_prime(double x, const Params& params);

double reconstruct_breather(const State& s, const Params& params, double y);

// Reconstruction over a window from the closed-form family ...
GridField sample_family_breather(const Params& params, double theta, const Window& window,
                                 double hs);
// ... or from an integrated trajectory (linear interpolation in x).
GridField sample_trajectory_breather(const Trajectory& traj, const Params& params,
                                     const Window& window, double hs);

// Finite-difference residual of lap u - u + u^3 on a sampled reconstruction;
// nonzero by construction (the ansatz drops the third harmonic).
std::pair<double, double> anzatz_residual(const GridField& grid);

// Smallest eigenvalues of -phi'' + (1 - 3 (sqrt2 sech x)^2) phi on even
// functions (reflection condition at 0, zero at L), by Sturm-sequence
// bisection on the tridiagonal discretization.
struct WallEigen {
  double eigenvalue = 0;        // smallest
  double second_eigenvalue = 0; // next spectral point
  std::vector<double> xs;
  std::vector<double> phi;      // eigenfunction, unit sup norm, phi(0) > 0
};

WallEigen wall_linearization_eigen(double L, double h);

} // namespace entire::galerkin
