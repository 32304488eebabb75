#pragma once

#include <utility>
#include <vector>

#include "entire/energy.hpp"
#include "entire/grid.hpp"

namespace entire::analysis {

struct ConcentrationReport {
  Vec2 center{};          // vertex maximizing the unit-ball q-mass
  double rho99 = 0;       // smallest radius holding 99% of the q-mass, capped at diam/4
  double weight_hat = 0;  // mass fraction within rho99
  double total_mass = 0;
  bool dominant = false;  // weight_hat >= 0.5
  bool tied = false;      // a far-away center carries nearly the same local mass
};

// Lumped integral of |u|^q over vertices within distance rho of center.
double mass_in_ball(const Field& u, Vec2 center, double rho, double q);

ConcentrationReport concentration_report(const Field& u, double q);

// Radial plateau/zero-band cut-off:
//   sigma = 1 for r <= (11 rho + rho')/12 and r >= (rho + 11 rho')/12,
//   sigma = 0 for (5 rho + rho')/6 <= r <= (rho + 5 rho')/6,
// linear in r between; slope magnitude is exactly 12/(rho' - rho).
double cut_off_profile(double r, double rho, double rho_prime);
Field cut_off(std::shared_ptr<const Mesh> mesh, Vec2 center, double rho, double rho_prime);

// Two separated humps b, c (with energy-to-mass ratio of b at least that of
// c) are replaced by one rescaled copy of c:
//   U = a + ((lq(b) + lq(c))^(1/q) / lq(c)^(1/q)) * c,
// preserving the L_q mass of a+b+c exactly and strictly lowering the
// W^1_p energy.
Field hump_recombine(const Field& a, const Field& b, const Field& c, const QuotientParams& params);

// Columnwise symmetric-decreasing rearrangement about the center row
// (requires an odd number of rows): sort descending, largest at the center,
// then alternately one step up and one step down.
GridField steiner_symmetrize_y(const GridField& grid);

struct RadialProfile {
  std::vector<double> radii;  // outer radius of each annulus of area hs^2
  std::vector<double> values; // descending
};

// Measure-preserving rearrangement of the sample-value distribution onto
// concentric annuli of cell area hs^2. Requires nonnegative values.
RadialProfile radial_rearrange(const GridField& grid, double hs);

// Discrete Dirichlet energies used to compare a grid with its radial
// rearrangement: forward-difference seminorm of the grid, and the H1
// seminorm of the piecewise-linear radial interpolant through annulus
// midpoints.
double grid_h1_seminorm_sq(const GridField& grid);
double profile_h1_seminorm_sq(const RadialProfile& profile);

} // namespace entire::analysis
