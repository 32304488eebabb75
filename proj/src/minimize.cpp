#include "entire/minimize.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "entire/errors.hpp"

namespace entire {

namespace {

double sup_abs(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

double dot_v(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// normalize to lq_norm_q = 1; returns false when the field vanishes
bool normalize_lq(Field& u, double q) {
  const double nq = lq_norm_q(u, q);
  if (!(nq > 0) || !std::isfinite(nq)) return false;
  const double s = std::pow(nq, -1.0 / q);
  for (double& v : u.values) v *= s;
  return true;
}

struct CapWork {
  CapRegion region;
  std::vector<int> mask;
  double mu = 0;
  double mass = 0; // most recent region integral of |u|^q
};

double region_mass(const Field& u, const std::vector<int>& mask, double q) {
  const Mesh& m = *u.mesh;
  double s = 0;
  for (int v : mask) s += m.vertex_weights[v] * std::pow(std::abs(u.values[v]), q);
  return s;
}

// J + sum_c mu_c max(0, m_c - cap)^2; fills per-cap masses
double penalized_objective(const Field& u, const QuotientParams& params,
                           std::vector<CapWork>& caps, double& J_out) {
  J_out = quotient(u, params);
  double F = J_out;
  for (CapWork& c : caps) {
    c.mass = region_mass(u, c.mask, params.q);
    const double viol = std::max(0.0, c.mass - c.region.cap);
    F += c.mu * viol * viol;
  }
  return F;
}

Field penalized_gradient(const Field& u, const QuotientParams& params,
                         const std::vector<CapWork>& caps) {
  Field g = quotient_gradient(u, params);
  const Mesh& m = *u.mesh;
  const double q = params.q;
  for (const CapWork& c : caps) {
    const double viol = std::max(0.0, c.mass - c.region.cap);
    if (viol <= 0) continue;
    const double coef = 2 * c.mu * viol * q;
    for (int v : c.mask) {
      if (m.dirichlet[v]) continue;
      const double uv = u.values[v];
      if (uv != 0) g.values[v] += coef * m.vertex_weights[v] * std::pow(std::abs(uv), q - 2) * uv;
    }
  }
  return g;
}

struct BBState {
  double J = 0;
  double F = 0;
  double grad_sup = 0;
  bool stalled = false;
};

// Monotone projected Barzilai-Borwein descent on the normalized iterate.
// Stops when sup|grad| <= tol_rel * J or the iteration budget runs out.
BBState run_bb(Field& u, const QuotientParams& params, std::vector<CapWork>& caps,
               double tol_rel, long budget, long& iterations,
               std::vector<double>& trace) {
  BBState st;
  st.F = penalized_objective(u, params, caps, st.J);
  Field g = penalized_gradient(u, params, caps);
  st.grad_sup = sup_abs(g.values);
  double alpha = 0.1 / (1.0 + st.grad_sup);

  while (iterations < budget) {
    if (st.grad_sup <= tol_rel * st.J) return st;

    Field trial(u.mesh);
    double a = std::min(alpha, 1e12);
    bool accepted = false;
    double F_t = 0, J_t = 0;
    for (int bt = 0; bt < 64 && !accepted; ++bt) {
      trial.values = u.values;
      for (std::size_t i = 0; i < trial.values.size(); ++i)
        trial.values[i] -= a * g.values[i];
      if (!normalize_lq(trial, params.q)) {
        a /= 2;
        continue;
      }
      F_t = penalized_objective(trial, params, caps, J_t);
      if (std::isfinite(F_t) && F_t <= st.F * (1 + 1e-15) + 1e-300)
        accepted = true;
      else
        a /= 2;
    }
    if (!accepted) {
      st.stalled = true;
      // masses in `caps` refer to the accepted iterate
      penalized_objective(u, params, caps, st.J);
      return st;
    }

    std::vector<double> s(u.values.size()), y;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = trial.values[i] - u.values[i];
    u.values = trial.values;
    Field g_new = penalized_gradient(u, params, caps);
    y = g_new.values;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= g.values[i];

    const double sy = dot_v(s, y), ss = dot_v(s, s), yy = dot_v(y, y);
    double bb = sy > 0 ? ss / sy : (yy > 0 ? std::abs(sy) / yy : 2 * a);
    if (!(bb > 0) || !std::isfinite(bb)) bb = 2 * a;
    alpha = std::clamp(bb, 1e-14, 1e12);

    g = std::move(g_new);
    st.grad_sup = sup_abs(g.values);
    st.F = F_t;
    st.J = J_t;
    ++iterations;
    trace.push_back(st.J);
  }
  return st;
}

// Damped Newton on A v + M(v - v^3) = 0 over free vertices; v enters as
// sqrt(lambda) u and leaves as the polished solution.
bool newton_polish(Field& v, const ToleranceSet& tol, long& iterations, double& residual_sup) {
  const Mesh& m = *v.mesh;
  const int n = static_cast<int>(m.vertex_count());
  const Eigen::SparseMatrix<double> A = assemble_stiffness(m, /*constrained=*/true);

  auto eval_residual = [&](const std::vector<double>& w, Eigen::VectorXd& F) {
    std::vector<double> Aw(w.size(), 0.0);
    stiffness_apply(m, w, Aw);
    double sup = 0;
    for (int i = 0; i < n; ++i) {
      if (m.dirichlet[i]) {
        F[i] = 0;
        continue;
      }
      const double wi = w[i];
      F[i] = Aw[i] + m.vertex_weights[i] * (wi - wi * wi * wi);
      sup = std::max(sup, std::abs(F[i]) / m.vertex_weights[i]);
    }
    return sup;
  };

  Eigen::VectorXd F(n), F_trial(n);
  double sup_r = eval_residual(v.values, F);
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;

  for (int it = 0; it < tol.newton_budget; ++it) {
    residual_sup = sup_r;
    if (sup_r <= tol.newton_rel * std::max(v.max_abs(), 1e-30)) return true;

    Eigen::SparseMatrix<double> J = A;
    for (int i = 0; i < n; ++i)
      if (!m.dirichlet[i])
        J.coeffRef(i, i) += m.vertex_weights[i] * (1 - 3 * v.values[i] * v.values[i]);
    lu.compute(J);
    if (lu.info() != Eigen::Success) return false;
    const Eigen::VectorXd delta = lu.solve(-F);

    std::vector<double> trial(v.values);
    double s = 1.0;
    double sup_t = 0;
    for (int ls = 0; ls < 30; ++ls) {
      for (int i = 0; i < n; ++i) trial[i] = v.values[i] + s * delta[i];
      sup_t = eval_residual(trial, F_trial);
      if (std::isfinite(sup_t) && sup_t <= (1 - 0.25 * s) * sup_r) break;
      s /= 2;
      if (s < 1e-6) break;
    }
    if (!(std::isfinite(sup_t)) || sup_t >= sup_r) return false; // no progress
    v.values = trial;
    F = F_trial;
    sup_r = sup_t;
    ++iterations;
  }
  residual_sup = sup_r;
  return sup_r <= tol.newton_rel * std::max(v.max_abs(), 1e-30);
}

} // namespace

Field seed_field(std::shared_ptr<const Mesh> mesh, const SeedSpec& seed, double q) {
  const Mesh& m = *mesh;
  if (!(seed.width > 0)) throw PreconditionError("invalid-spec", "seed width must be positive");
  Vec2 c{};
  switch (seed.kind) {
    case SeedKind::Corner: c = m.corner_position(seed.index); break;
    case SeedKind::EdgeMidpoint: c = m.edge_midpoint(seed.index); break;
    case SeedKind::Centroid: c = m.centroid(); break;
    case SeedKind::Explicit:
      c = seed.point;
      if (!m.contains(c, 1e-9 * m.spec.R))
        throw PreconditionError("degenerate-seed", "explicit seed lies outside the domain closure");
      break;
  }
  Field u(std::move(mesh));
  const double w2 = seed.width * seed.width;
  for (std::size_t v = 0; v < u.values.size(); ++v) {
    if (m.dirichlet[v]) continue;
    const Vec2 d = m.vertices[v] - c;
    u.values[v] = std::exp(-dot(d, d) / w2);
  }
  if (!normalize_lq(u, q))
    throw PreconditionError("degenerate-seed", "seed vanishes after Dirichlet zeroing");
  return u;
}

MinimizeResult minimize_quotient(std::shared_ptr<const Mesh> mesh, const QuotientParams& params,
                                 const SeedSpec& seed, const std::vector<CapRegion>& caps,
                                 const ToleranceSet& tol) {
  const Mesh& m = *mesh;
  params.validate(m.dim == 1 ? 1 : 2);

  MinimizeResult res;
  res.u = seed_field(mesh, seed, params.q);

  std::vector<CapWork> work;
  for (const CapRegion& r : caps) {
    CapWork c;
    c.region = r;
    c.mask = m.region_vertices(r);
    c.mu = 10.0;
    work.push_back(std::move(c));
  }

  const bool can_newton = params.is_p2q4();
  const double stage1_tol = can_newton ? tol.handoff_rel : tol.grad_rel_stage1_only;

  // stage 1 with penalty escalation
  BBState st;
  bool caps_satisfied = true;
  for (int esc = 0; esc < 20; ++esc) {
    st = run_bb(res.u, params, work, stage1_tol, tol.stage1_budget, res.iterations, res.descent_trace);
    caps_satisfied = true;
    for (CapWork& c : work)
      if (c.mass - c.region.cap > tol.penalty_violation) caps_satisfied = false;
    if (caps_satisfied || res.iterations >= tol.stage1_budget) break;
    for (CapWork& c : work)
      if (c.mass - c.region.cap > tol.penalty_violation) c.mu *= 10;
  }

  const bool budget_hit = res.iterations >= tol.stage1_budget &&
                          st.grad_sup > stage1_tol * st.J;

  bool any_active = false;
  for (const CapWork& c : work)
    if (c.mass >= c.region.cap * (1 - 1e-4)) any_active = true;

  // stage 2: drop the (inactive) penalties and polish the Euler-Lagrange system
  bool newton_ok = false;
  if (can_newton && !budget_hit && !any_active) {
    Field v = res.u;
    const double lam = quotient(res.u, params);
    for (double& x : v.values) x *= std::sqrt(lam);
    double rs = 0;
    newton_ok = newton_polish(v, tol, res.iterations, rs);
    if (newton_ok) {
      res.newton_polished = true;
      res.newton_residual_sup = rs;
      res.u = v;
      normalize_lq(res.u, params.q);
    }
  }

  res.lambda = quotient(res.u, params);
  {
    std::vector<CapWork> final_caps = work;
    if (res.newton_polished)
      for (CapWork& c : final_caps) c.mu = 0; // penalty dropped; report the pure gradient
    double Jtmp = 0;
    penalized_objective(res.u, params, final_caps, Jtmp);
    res.grad_sup = sup_abs(penalized_gradient(res.u, params, final_caps).values);
    for (CapWork& c : final_caps)
      res.constraints.push_back({c.region, c.mass, c.region.cap,
                                 c.mass >= c.region.cap * (1 - 1e-4)});
  }
  if (can_newton && !res.newton_polished)
    res.newton_residual_sup = residual_sup_free(pde_residual(scale_to_solution(res, params)));

  res.converged = !budget_hit && (!can_newton || any_active || res.newton_polished);
  return res;
}

Field scale_to_solution(const MinimizeResult& res, const QuotientParams& params) {
  if (!(res.lambda > 0)) throw PreconditionError("invalid-spec", "scale_to_solution needs lambda > 0");
  Field out = res.u;
  const double s = std::pow(res.lambda, 1.0 / (params.q - params.p));
  for (double& v : out.values) v *= s;
  return out;
}

SweepResult lambda_sweep(DomainSpec domain_template, const std::vector<double>& Rs,
                         const SeedSpec& seed, const QuotientParams& params,
                         const ToleranceSet& tol) {
  SweepResult out;
  for (double R : Rs) {
    DomainSpec d = domain_template;
    d.R = R;
    if (domain_template.shape == Shape::Strip && domain_template.half_height > 0)
      d.half_height = domain_template.half_height / domain_template.R * R;
    auto mesh = std::make_shared<Mesh>(build_mesh(d));
    MinimizeResult r = minimize_quotient(mesh, params, seed, d.constraint_regions, tol);
    out.points.push_back({R, r.lambda, r.converged});
    out.all_converged = out.all_converged && r.converged;
  }
  if (!out.points.empty()) {
    out.lambda_min = out.points.front().lambda;
    out.lambda_max = out.points.front().lambda;
    for (const SweepPoint& p : out.points) {
      out.lambda_min = std::min(out.lambda_min, p.lambda);
      out.lambda_max = std::max(out.lambda_max, p.lambda);
    }
  }
  return out;
}

} // namespace entire
