#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "entire/energy.hpp"

namespace entire {

enum class SeedKind { Corner, EdgeMidpoint, Centroid, Explicit };

struct SeedSpec {
  SeedKind kind = SeedKind::Centroid;
  int index = 0;       // corner or edge id
  Vec2 point{};        // Explicit
  double width = 1.0;  // Gaussian width w in exp(-|x-x0|^2 / w^2)
};

struct ToleranceSet {
  double grad_rel = 1e-7;           // stage-1 stop: sup|grad| <= grad_rel * J
  double grad_rel_stage1_only = 1e-5; // looser stop when no Newton stage runs (p != 2)
  double newton_rel = 1e-9;         // stage-2 stop: sup|residual| <= newton_rel * max|v|
  double handoff_rel = 1e-3;        // hand off to Newton at this gradient level
  double penalty_violation = 1e-10; // cap violation accepted after escalation
  long stage1_budget = 100000;
  int newton_budget = 50;
};

struct CapStatus {
  CapRegion region;
  double value = 0; // converged region integral of |u|^q
  double cap = 0;
  bool active = false;
};

struct MinimizeResult {
  Field u;            // normalized: lq_norm_q(u, q) == 1
  double lambda = 0;  // attained minimum == quotient(u)
  long iterations = 0;
  double grad_sup = std::numeric_limits<double>::quiet_NaN();
  double newton_residual_sup = std::numeric_limits<double>::quiet_NaN();
  bool newton_polished = false;
  bool converged = false; // false: iteration budget exhausted; fields hold the best iterate
  std::vector<CapStatus> constraints;
  std::vector<double> descent_trace; // quotient value at each accepted stage-1 iterate
};

// Gaussian bump at the seed location, zeroed on Dirichlet vertices and
// normalized to lq_norm_q = 1. Throws "degenerate-seed" if nothing remains.
Field seed_field(std::shared_ptr<const Mesh> mesh, const SeedSpec& seed, double q = 4.0);

// Two-stage solve of the constrained minimization: projected
// Barzilai-Borwein descent on { lq_norm_q(u) = 1 } with quadratic cap
// penalties (weights escalated x10 until violations <= tol.penalty_violation),
// then, for p=2, q=4 with all caps inactive, a damped Newton polish of
// -lap v + v - v^3 = 0 on v = sqrt(lambda) u followed by renormalization.
MinimizeResult minimize_quotient(std::shared_ptr<const Mesh> mesh,
                                 const QuotientParams& params,
                                 const SeedSpec& seed,
                                 const std::vector<CapRegion>& caps = {},
                                 const ToleranceSet& tol = {});

// lambda^(1/(q-p)) * u: a discrete solution of
//   lap_p u - |u|^(p-2) u + |u|^(q-2) u = 0.
Field scale_to_solution(const MinimizeResult& res, const QuotientParams& params);

struct SweepPoint {
  double R = 0;
  double lambda = 0;
  bool converged = false;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  double lambda_min = 0;
  double lambda_max = 0;
  bool all_converged = true;
};

// lambda(R) over a list of scales with fixed physical mesh spacing.
SweepResult lambda_sweep(DomainSpec domain_template, const std::vector<double>& Rs,
                         const SeedSpec& seed, const QuotientParams& params,
                         const ToleranceSet& tol = {});

} // namespace entire
