#include "entire/galerkin.hpp"

#include <algorithm>
#include <cmath>

#include "entire/errors.hpp"

namespace entire::galerkin {

State vector_field(const State& s, const Params& params) {
  const double lam2 = params.lambda() * params.lambda();
  const double r2 = s.U1 * s.U1 + s.V1 * s.V1;
  State d;
  d.U0 = s.p0;
  d.U1 = s.p1;
  d.V1 = s.q1;
  d.p0 = s.U0 - 2 * s.U0 * s.U0 * s.U0 - 6 * r2 * s.U0;
  d.p1 = lam2 * s.U1 - 6 * s.U1 * s.U0 * s.U0 - 3 * r2 * s.U1;
  d.q1 = lam2 * s.V1 - 6 * s.V1 * s.U0 * s.U0 - 3 * r2 * s.V1;
  return d;
}

double hamiltonian(const State& s, const Params& params) {
  const double lam2 = params.lambda() * params.lambda();
  const double r2 = s.U1 * s.U1 + s.V1 * s.V1;
  return (s.p0 * s.p0 + s.p1 * s.p1 + s.q1 * s.q1) / 2 -
         (s.U0 * s.U0 + lam2 * r2) / 2 + std::pow(s.U0, 4) / 2 +
         3 * s.U0 * s.U0 * r2 + 0.75 * r2 * r2;
}

double integral_K(const State& s) { return s.p1 * s.V1 - s.q1 * s.U1; }

namespace {

State axpy(const State& a, double h, const State& d) {
  return {a.U0 + h * d.U0, a.p0 + h * d.p0, a.U1 + h * d.U1,
          a.p1 + h * d.p1, a.V1 + h * d.V1, a.q1 + h * d.q1};
}

bool finite(const State& s) {
  return std::isfinite(s.U0) && std::isfinite(s.p0) && std::isfinite(s.U1) &&
         std::isfinite(s.p1) && std::isfinite(s.V1) && std::isfinite(s.q1);
}

double magnitude(const State& s) {
  return std::max({std::abs(s.U0), std::abs(s.p0), std::abs(s.U1), std::abs(s.p1),
                   std::abs(s.V1), std::abs(s.q1)});
}

} // namespace

Trajectory integrate(const State& s0, const Params& params, double x_begin, double x_end,
                     double step) {
  if (!(step > 0) || !(x_end > x_begin))
    throw PreconditionError("invalid-spec", "integrate needs step > 0 and x_end > x_begin");
  Trajectory traj;
  const double H0 = hamiltonian(s0, params);
  const double K0 = integral_K(s0);
  const long nsteps = std::lround((x_end - x_begin) / step);

  State s = s0;
  traj.xs.push_back(x_begin);
  traj.states.push_back(s);
  for (long i = 0; i < nsteps; ++i) {
    const double x = x_begin + i * step;
    const State k1 = vector_field(s, params);
    const State k2 = vector_field(axpy(s, step / 2, k1), params);
    const State k3 = vector_field(axpy(s, step / 2, k2), params);
    const State k4 = vector_field(axpy(s, step, k3), params);
    State d;
    d.U0 = (k1.U0 + 2 * k2.U0 + 2 * k3.U0 + k4.U0) / 6;
    d.p0 = (k1.p0 + 2 * k2.p0 + 2 * k3.p0 + k4.p0) / 6;
    d.U1 = (k1.U1 + 2 * k2.U1 + 2 * k3.U1 + k4.U1) / 6;
    d.p1 = (k1.p1 + 2 * k2.p1 + 2 * k3.p1 + k4.p1) / 6;
    d.V1 = (k1.V1 + 2 * k2.V1 + 2 * k3.V1 + k4.V1) / 6;
    d.q1 = (k1.q1 + 2 * k2.q1 + 2 * k3.q1 + k4.q1) / 6;
    s = axpy(s, step, d);
    if (!finite(s) || magnitude(s) > 1e6) {
      traj.failed = true;
      traj.fail_x = x + step;
      return traj;
    }
    traj.xs.push_back(x + step);
    traj.states.push_back(s);
    traj.h_drift = std::max(traj.h_drift, std::abs(hamiltonian(s, params) - H0));
    traj.k_drift = std::max(traj.k_drift, std::abs(integral_K(s) - K0));
  }
  return traj;
}

State planar_homoclinic(double x) {
  const double sech = 1.0 / std::cosh(x);
  State s;
  s.U0 = sech;
  s.p0 = -sech * std::tanh(x);
  return s;
}

double family_r(double x, const Params& params) {
  const double lam = params.lambda();
  return -2 * lam / (std::exp(lam * x) + 1.5 * std::exp(-lam * x));
}

double family_r_prime(double x, const Params& params) {
  const double lam = params.lambda();
  const double ep = std::exp(lam * x), en = std::exp(-lam * x);
  const double D = ep + 1.5 * en;
  return 2 * lam * lam * (ep - 1.5 * en) / (D * D);
}

State family_homoclinic(double x, double theta, const Params& params) {
  const double r = family_r(x, params);
  const double rp = family_r_prime(x, params);
  State s;
  s.U1 = r * std::cos(theta);
  s.V1 = r * std::sin(theta);
  s.p1 = rp * std::cos(theta);
  s.q1 = rp * std::sin(theta);
  return s;
}

double reconstruct_breather(const State& s, const Params& params, double y) {
  const double w = params.omega() * y;
  return s.U0 + 2 * s.U1 * std::cos(w) - 2 * s.V1 * std::sin(w);
}

namespace {

GridField sample_breather(const Window& window, double hs,
                          const std::function<State(double)>& state_at, const Params& params) {
  if (!(hs > 0)) throw PreconditionError("invalid-spec", "hs must be positive");
  GridField g;
  g.hs = hs;
  g.x0 = window.x0;
  g.y0 = window.y0;
  if (window.x1 >= window.x0 && window.y1 >= window.y0) {
    g.nx = static_cast<int>(std::floor((window.x1 - window.x0) / hs + 1e-9)) + 1;
    g.ny = static_cast<int>(std::floor((window.y1 - window.y0) / hs + 1e-9)) + 1;
  }
  g.values.resize(static_cast<std::size_t>(g.nx) * g.ny);
  for (int ix = 0; ix < g.nx; ++ix) {
    const State s = state_at(window.x0 + ix * hs);
    for (int iy = 0; iy < g.ny; ++iy)
      g.at(ix, iy) = reconstruct_breather(s, params, window.y0 + iy * hs);
  }
  return g;
}

} // namespace

GridField sample_family_breather(const Params& params, double theta, const Window& window,
                                 double hs) {
  return sample_breather(
      window, hs, [&](double x) { return family_homoclinic(x, theta, params); }, params);
}

GridField sample_trajectory_breather(const Trajectory& traj, const Params& params,
                                     const Window& window, double hs) {
  if (traj.xs.size() < 2)
    throw PreconditionError("invalid-spec", "trajectory too short to reconstruct from");
  auto state_at = [&](double x) {
    if (x <= traj.xs.front()) return traj.states.front();
    if (x >= traj.xs.back()) return traj.states.back();
    const auto it = std::upper_bound(traj.xs.begin(), traj.xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - traj.xs.begin()) - 1;
    const double f = (x - traj.xs[i]) / (traj.xs[i + 1] - traj.xs[i]);
    const State &s0 = traj.states[i], &s1 = traj.states[i + 1];
    return State{s0.U0 + f * (s1.U0 - s0.U0), s0.p0 + f * (s1.p0 - s0.p0),
                 s0.U1 + f * (s1.U1 - s0.U1), s0.p1 + f * (s1.p1 - s0.p1),
                 s0.V1 + f * (s1.V1 - s0.V1), s0.q1 + f * (s1.q1 - s0.q1)};
  };
  return sample_breather(window, hs, state_at, params);
}

std::pair<double, double> anzatz_residual(const GridField& grid) {
  if (grid.nx < 5 || grid.ny < 5)
    throw PreconditionError("invalid-grid", "anzatz_residual needs at least 5x5 samples");
  const double inv_h2 = 1.0 / (grid.hs * grid.hs);
  double sup = 0, l2 = 0;
  for (int iy = 1; iy + 1 < grid.ny; ++iy)
    for (int ix = 1; ix + 1 < grid.nx; ++ix) {
      const double f = grid.at(ix, iy);
      const double lap = (grid.at(ix + 1, iy) + grid.at(ix - 1, iy) + grid.at(ix, iy + 1) +
                          grid.at(ix, iy - 1) - 4 * f) * inv_h2;
      const double r = lap - f + f * f * f;
      sup = std::max(sup, std::abs(r));
      l2 += r * r;
    }
  return {sup, std::sqrt(l2 * grid.hs * grid.hs)};
}

WallEigen wall_linearization_eigen(double L, double h) {
  if (!(L >= 10) || !(h <= 0.01) || !(h > 0))
    throw PreconditionError("invalid-spec", "wall_linearization_eigen needs L >= 10 and 0 < h <= 0.01");
  const int N = static_cast<int>(std::lround(L / h)); // unknowns at x = 0 .. (N-1) h, phi(L) = 0
  std::vector<double> diag(N), off(N - 1);
  auto potential = [](double x) {
    const double sech = 1.0 / std::cosh(x);
    return 1.0 - 6.0 * sech * sech; // 1 - 3 u0^2 with u0 = sqrt2 sech
  };
  const double ih2 = 1.0 / (h * h);
  for (int i = 0; i < N; ++i) diag[i] = 2 * ih2 + potential(i * h);
  for (int i = 0; i + 1 < N; ++i) off[i] = -ih2;
  off[0] = -std::sqrt(2.0) * ih2; // even reflection at 0, symmetrized

  auto count_below = [&](double x) {
    int cnt = 0;
    double q = diag[0] - x;
    if (q < 0) ++cnt;
    for (int i = 1; i < N; ++i) {
      const double denom = q == 0 ? 1e-300 : q;
      q = diag[i] - x - off[i - 1] * off[i - 1] / denom;
      if (q < 0) ++cnt;
    }
    return cnt;
  };

  auto kth_eigenvalue = [&](int k) { // 1-based
    double lo = -10, hi = 10;
    while (count_below(lo) >= k) lo *= 2;
    while (count_below(hi) < k) hi *= 2;
    while (hi - lo > 1e-10) {
      const double mid = (lo + hi) / 2;
      (count_below(mid) >= k ? hi : lo) = mid;
    }
    return (lo + hi) / 2;
  };

  WallEigen out;
  out.eigenvalue = kth_eigenvalue(1);
  out.second_eigenvalue = kth_eigenvalue(2);

  // inverse iteration for the eigenvector: tridiagonal Gaussian elimination
  // with partial pivoting on (T - sigma I)
  const double sigma = out.eigenvalue + 1e-11;
  std::vector<double> v(N, 1.0);
  for (int pass = 0; pass < 3; ++pass) {
    std::vector<double> a(N), b(N - 1), c(N > 1 ? N - 2 : 0, 0.0), lower(N - 1), x(v);
    for (int i = 0; i < N; ++i) a[i] = diag[i] - sigma;
    for (int i = 0; i + 1 < N; ++i) {
      b[i] = off[i];
      lower[i] = off[i];
    }
    for (int i = 0; i + 1 < N; ++i) { // forward elimination, pivoting rows i, i+1
      if (std::abs(lower[i]) > std::abs(a[i])) {
        std::swap(a[i], lower[i]);
        std::swap(b[i], a[i + 1]);
        if (i + 2 < N) std::swap(c[i], b[i + 1]);
        std::swap(x[i], x[i + 1]);
      }
      const double f = lower[i] / a[i];
      a[i + 1] -= f * b[i];
      if (i + 2 < N) b[i + 1] -= f * c[i];
      x[i + 1] -= f * x[i];
    }
    for (int i = N - 1; i >= 0; --i) {
      double s = x[i];
      if (i + 1 < N) s -= b[i] * x[i + 1];
      if (i + 2 < N) s -= c[i] * x[i + 2];
      x[i] = s / a[i];
    }
    double mx = 0;
    for (double t : x) mx = std::max(mx, std::abs(t));
    for (double& t : x) t /= mx;
    v = std::move(x);
  }

  v[0] /= std::sqrt(2.0); // undo the symmetrizing scale at the reflection node
  double mx = 0;
  for (double t : v) mx = std::max(mx, std::abs(t));
  const double sgn = v[0] >= 0 ? 1.0 : -1.0;
  out.xs.resize(N);
  out.phi.resize(N);
  for (int i = 0; i < N; ++i) {
    out.xs[i] = i * h;
    out.phi[i] = sgn * v[i] / mx;
  }
  return out;
}

} // namespace entire::galerkin
