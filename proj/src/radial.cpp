#include "entire/radial.hpp"

#include <algorithm>
#include <cmath>

#include "entire/errors.hpp"

namespace entire::radial {

namespace {

struct Deriv {
  double du, dw;
};

Deriv rhs(double r, double u, double w, int n) {
  return {w, -(n - 1) / r * w + u - u * u * u};
}

} // namespace

ShootResult shoot(double alpha, int n, const ShootOptions& opts) {
  if (!(alpha > 0) || !(opts.r_max > 0) || !(opts.step > 0) || n < 1)
    throw PreconditionError("invalid-spec", "shoot needs alpha, r_max, step > 0 and n >= 1");

  const double h = opts.step;
  const double r0 = 10 * h;
  // series start around the regular singular point
  double u = alpha + (alpha - alpha * alpha * alpha) * r0 * r0 / (2 * n);
  double w = (alpha - alpha * alpha * alpha) * r0 / n;
  double r = r0;

  ShootResult out;
  out.profile.reserve(static_cast<std::size_t>((opts.r_max - r0) / h) + 2);
  out.profile.emplace_back(r, u);

  const double blow = opts.blowup_factor * alpha;
  double last_cross = r0;

  while (r < opts.r_max - h / 2) {
    const Deriv k1 = rhs(r, u, w, n);
    const Deriv k2 = rhs(r + h / 2, u + h / 2 * k1.du, w + h / 2 * k1.dw, n);
    const Deriv k3 = rhs(r + h / 2, u + h / 2 * k2.du, w + h / 2 * k2.dw, n);
    const Deriv k4 = rhs(r + h, u + h * k3.du, w + h * k3.dw, n);
    const double u_new = u + h / 6 * (k1.du + 2 * k2.du + 2 * k3.du + k4.du);
    const double w_new = w + h / 6 * (k1.dw + 2 * k2.dw + 2 * k3.dw + k4.dw);
    r += h;

    if (!std::isfinite(u_new) || !std::isfinite(w_new))
      throw PreconditionError("numerical-failure", "non-finite state in radial integration");

    if (u * u_new < 0) {
      ++out.node_count;
      last_cross = r;
    }
    u = u_new;
    w = w_new;
    out.profile.emplace_back(r, u);

    if (std::abs(u) > blow) {
      out.classification = ShootClass::Blowup;
      return out;
    }
    if (std::abs(u) < opts.decay_tol && std::abs(w) < opts.decay_tol && u * w <= 0) {
      out.classification = ShootClass::Decay;
      return out;
    }
  }
  // still crossing zero near the end of the range means the orbit is not
  // trapped in a sign band
  const double tail = r0 + 0.75 * (opts.r_max - r0);
  out.classification = last_cross > tail ? ShootClass::Overshoot : ShootClass::Undershoot;
  return out;
}

namespace {

// finite-difference residual of u'' + (n-1)/r u' - u + u^3 along a uniform profile
double profile_residual_sup(const std::vector<std::pair<double, double>>& prof, int n) {
  double sup = 0;
  for (std::size_t i = 1; i + 1 < prof.size(); ++i) {
    const double h = prof[i + 1].first - prof[i].first;
    const double u = prof[i].second;
    const double upp = (prof[i + 1].second - 2 * u + prof[i - 1].second) / (h * h);
    const double up = (prof[i + 1].second - prof[i - 1].second) / (2 * h);
    sup = std::max(sup, std::abs(upp + (n - 1) / prof[i].first * up - u + u * u * u));
  }
  return sup;
}

// cut the profile at its closest approach to zero after the last node; the
// tail beyond that is bisection noise blowing up along the unstable manifold
void truncate_at_closest_approach(std::vector<std::pair<double, double>>& prof, int nodes) {
  std::size_t last_node = 0;
  int seen = 0;
  for (std::size_t i = 1; i < prof.size() && seen < nodes; ++i)
    if (prof[i - 1].second * prof[i].second < 0) {
      last_node = i;
      ++seen;
    }
  std::size_t best = prof.size() - 1;
  for (std::size_t i = last_node + 1; i < prof.size(); ++i)
    if (std::abs(prof[i].second) < std::abs(prof[best].second)) best = i;
  prof.resize(best + 1);
}

} // namespace

RadialSolution find_k_node_solution(int k, int n, std::pair<double, double> bracket,
                                    const ShootOptions& opts) {
  if (k < 0) throw PreconditionError("invalid-spec", "node count k must be nonnegative");
  double lo = bracket.first, hi = bracket.second;
  if (!(0 < lo && lo < hi)) throw PreconditionError("bracket", "need 0 < alpha_lo < alpha_hi");

  const ShootResult rlo = shoot(lo, n, opts);
  const ShootResult rhi = shoot(hi, n, opts);
  if (rlo.node_count > k)
    throw PreconditionError("bracket", "lower bracket end already exceeds k sign changes");
  if (rhi.node_count <= k)
    throw PreconditionError("bracket", "upper bracket end does not exceed k sign changes");

  while (hi - lo > 1e-12 * hi) {
    const double mid = (lo + hi) / 2;
    (shoot(mid, n, opts).node_count > k ? hi : lo) = mid;
  }

  RadialSolution sol;
  sol.alpha = (lo + hi) / 2;
  ShootResult fin = shoot(lo, n, opts);
  truncate_at_closest_approach(fin.profile, k);
  sol.profile = std::move(fin.profile);
  sol.nodes = k;
  sol.residual_sup = profile_residual_sup(sol.profile, n);
  return sol;
}

std::vector<RadialSolution> find_node_family(int k_max, int n, double alpha_lo, double alpha_hi,
                                             double coarse, const ShootOptions& opts) {
  std::vector<RadialSolution> out;
  double prev_alpha = alpha_lo;
  int prev_nodes = shoot(alpha_lo, n, opts).node_count;
  if (prev_nodes > 0)
    throw PreconditionError("bracket", "scan must start below the ground-state amplitude");
  for (double a = alpha_lo + coarse; a <= alpha_hi + coarse / 2 && static_cast<int>(out.size()) <= k_max;
       a += coarse) {
    const int nodes = shoot(a, n, opts).node_count;
    for (int k = prev_nodes; k < nodes && static_cast<int>(out.size()) <= k_max; ++k)
      out.push_back(find_k_node_solution(k, n, {prev_alpha, a}, opts));
    prev_nodes = std::max(prev_nodes, nodes);
    prev_alpha = a;
  }
  if (static_cast<int>(out.size()) <= k_max)
    throw PreconditionError("bracket", "scan range exhausted before finding all requested nodes");
  return out;
}

} // namespace entire::radial
