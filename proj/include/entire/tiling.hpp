#pragma once

#include <string>
#include <utility>
#include <vector>

#include "entire/field.hpp"
#include "entire/grid.hpp"

namespace entire {

// Reflection patterns extending a fundamental-domain solution to the plane.
// Odd generators require DirichletZero on the corresponding edges of the
// source solve, even generators require Natural. TriOddOneSide is the
// built-in obstruction case: it never passes the sign-consistency check.
enum class TilingPattern {
  RectEven,
  RectBreather,
  RectSignVertical,
  RectSignChecker,
  TriEvenHex,
  TriOdd,
  TriOddOneSide,
  Tri3060Odd,
  Tri4545Odd,
  StripBreatherSign,
  RadialNone,
};

std::string pattern_name(TilingPattern p);
TilingPattern pattern_from_name(const std::string& name);

// Reflection across the line { dot(normal, x) = offset }; parity -1 flips
// the sign of the extended function.
struct Generator {
  Vec2 normal{};
  double offset = 0;
  int parity = +1;
  int edge_id = 0;
};

struct TilingSpec {
  TilingPattern pattern = TilingPattern::RadialNone;
  DomainSpec domain;
  std::vector<Generator> generators;

  // closed-form fold for rectangle/strip groups
  bool axis_fold = false;
  bool fold_y = false;       // strips fold in x only
  double period_half_x = 0;  // R
  double period_half_y = 0;  // aR (or T, unused when !fold_y)
  int parity_x = +1;
  int parity_y = +1;
};

// Parity/edge table for a pattern on a compatible domain; no validation.
TilingSpec build_tiling_unchecked(const DomainSpec& domain, TilingPattern pattern);

// true iff every closed reflection loop of the group composes to sign +1
bool check_sign_consistency(const TilingSpec& spec);

// Validated construction. Throws PreconditionError("invalid-tiling") for a
// shape/edge-tag mismatch and PreconditionError("obstruction") when the
// requested signs cannot close up.
TilingSpec make_tiling(const DomainSpec& domain, TilingPattern pattern);

// Value of the entire extension at an arbitrary point: folds the point into
// the fundamental domain across violated edges (accumulating signs of odd
// generators), then interpolates u. Points in a non-periodic decay direction
// beyond the truncated domain evaluate to 0.
double evaluate_entire(const Field& u, const TilingSpec& spec, Vec2 point);

GridField sample_entire(const Field& u, const TilingSpec& spec, const Window& window, double hs);

// 5-point finite-difference residual of -lap f + f - f^3 on interior sample
// points; returns (sup norm, L2 norm). Requires at least 5x5 samples.
std::pair<double, double> tiled_residual(const GridField& grid);

} // namespace entire
