#pragma once

#include <Eigen/SparseCore>

#include "entire/field.hpp"

namespace entire {

// Exponents of the energy quotient
//   J[u] = ( sum_T area_T |grad u|_T^p + sum_v w_v |u_v|^p )
//          / ( sum_v w_v |u_v|^q )^(p/q),
// with piecewise-constant per-element gradients and lumped vertex
// quadrature for all |u|^s terms.
struct QuotientParams {
  double p = 2.0;
  double q = 4.0;

  bool is_p2q4() const { return p == 2.0 && q == 4.0; }
  // Throws PreconditionError("invalid-spec") unless p > 1, q > p and q is
  // subcritical for dimension n (q < p*n/(n-p) when p < n).
  void validate(int n) const;
};

// sum_v w_v |u_v|^q  (the q-th power of the L_q norm; exact for constants)
double lq_norm_q(const Field& u, double q);

// sum_T area_T |grad u|_T^p + sum_v w_v |u_v|^p
double wp_energy_p(const Field& u, double p);

double quotient(const Field& u, const QuotientParams& params);

// Nodal gradient of the quotient w.r.t. vertex values; entries at Dirichlet
// vertices are zero (those values are constrained).
Field quotient_gradient(const Field& u, const QuotientParams& params);

// Residual of the p=2, q=4 Euler-Lagrange system: r_v = (A u + M(u - u^3))_v / w_v
// with A the P1 stiffness pairing and M the lumped mass.
Field pde_residual(const Field& u);

// sup |r_v| over non-Dirichlet vertices
double residual_sup_free(const Field& r);

// P1 stiffness matrix. With `constrained` = true, rows/columns of Dirichlet
// vertices are replaced by the identity.
Eigen::SparseMatrix<double> assemble_stiffness(const Mesh& mesh, bool constrained);

// out += A u without assembling A
void stiffness_apply(const Mesh& mesh, std::span<const double> u, std::span<double> out);

} // namespace entire
