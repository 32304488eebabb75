#include "entire/energy.hpp"

#include <cmath>
#include <vector>

#include "entire/errors.hpp"

namespace entire {

void QuotientParams::validate(int n) const {
  if (!(p > 1)) throw PreconditionError("invalid-spec", "exponent p must exceed 1");
  if (!(q > p)) throw PreconditionError("invalid-spec", "exponent q must exceed p");
  if (p < n && !(q < p * n / (n - p)))
    throw PreconditionError("invalid-spec", "exponent q must be subcritical (q < pn/(n-p))");
}

double lq_norm_q(const Field& u, double q) {
  if (!(q >= 1)) throw PreconditionError("invalid-spec", "exponent q must be >= 1");
  const Mesh& m = *u.mesh;
  double s = 0;
  if (q == 4.0) {
    for (std::size_t v = 0; v < u.values.size(); ++v) {
      const double a = u.values[v] * u.values[v];
      s += m.vertex_weights[v] * a * a;
    }
  } else {
    for (std::size_t v = 0; v < u.values.size(); ++v)
      s += m.vertex_weights[v] * std::pow(std::abs(u.values[v]), q);
  }
  return s;
}

namespace {

double grad_sq_tri(const Mesh& m, std::span<const double> u, std::size_t t) {
  const auto& tri = m.triangles[t];
  const TriGeom& g = m.tri_geom[t];
  const double gx = u[tri[0]] * g.gx[0] + u[tri[1]] * g.gx[1] + u[tri[2]] * g.gx[2];
  const double gy = u[tri[0]] * g.gy[0] + u[tri[1]] * g.gy[1] + u[tri[2]] * g.gy[2];
  return gx * gx + gy * gy;
}

} // namespace

double wp_energy_p(const Field& u, double p) {
  if (!(p > 1)) throw PreconditionError("invalid-spec", "exponent p must exceed 1");
  const Mesh& m = *u.mesh;
  double s = 0;
  if (m.dim == 2) {
    if (p == 2.0) {
      for (std::size_t t = 0; t < m.triangles.size(); ++t)
        s += m.tri_geom[t].area * grad_sq_tri(m, u.values, t);
    } else {
      for (std::size_t t = 0; t < m.triangles.size(); ++t)
        s += m.tri_geom[t].area * std::pow(grad_sq_tri(m, u.values, t), p / 2);
    }
  } else {
    for (const auto& seg : m.segments) {
      const double len = m.vertices[seg[1]].x - m.vertices[seg[0]].x;
      const double d = (u.values[seg[1]] - u.values[seg[0]]) / len;
      s += len * (p == 2.0 ? d * d : std::pow(std::abs(d), p));
    }
  }
  if (p == 2.0) {
    for (std::size_t v = 0; v < u.values.size(); ++v)
      s += m.vertex_weights[v] * u.values[v] * u.values[v];
  } else {
    for (std::size_t v = 0; v < u.values.size(); ++v)
      s += m.vertex_weights[v] * std::pow(std::abs(u.values[v]), p);
  }
  return s;
}

double quotient(const Field& u, const QuotientParams& params) {
  const double nq = lq_norm_q(u, params.q);
  if (!(nq > 0)) throw PreconditionError("zero-denominator", "quotient of a zero field");
  return wp_energy_p(u, params.p) / std::pow(nq, params.p / params.q);
}

Field quotient_gradient(const Field& u, const QuotientParams& params) {
  const Mesh& m = *u.mesh;
  const double p = params.p, q = params.q;
  const double nq = lq_norm_q(u, q);
  if (!(nq > 0)) throw PreconditionError("zero-denominator", "gradient of the quotient of a zero field");
  const double energy = wp_energy_p(u, p);

  // dE: gradient of the W^1_p energy
  std::vector<double> dE(u.values.size(), 0.0);
  if (m.dim == 2) {
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
      const auto& tri = m.triangles[t];
      const TriGeom& g = m.tri_geom[t];
      const double gx = u.values[tri[0]] * g.gx[0] + u.values[tri[1]] * g.gx[1] + u.values[tri[2]] * g.gx[2];
      const double gy = u.values[tri[0]] * g.gy[0] + u.values[tri[1]] * g.gy[1] + u.values[tri[2]] * g.gy[2];
      const double g2 = gx * gx + gy * gy;
      const double coef = p == 2.0 ? 1.0 : (g2 > 0 ? std::pow(g2, p / 2 - 1) : 0.0);
      for (int i = 0; i < 3; ++i)
        dE[tri[i]] += g.area * p * coef * (gx * g.gx[i] + gy * g.gy[i]);
    }
  } else {
    for (const auto& seg : m.segments) {
      const double len = m.vertices[seg[1]].x - m.vertices[seg[0]].x;
      const double d = (u.values[seg[1]] - u.values[seg[0]]) / len;
      const double coef = p == 2.0 ? d : (d != 0 ? std::pow(std::abs(d), p - 2) * d : 0.0);
      dE[seg[0]] -= p * coef;
      dE[seg[1]] += p * coef;
    }
  }
  for (std::size_t v = 0; v < u.values.size(); ++v) {
    const double uv = u.values[v];
    const double coef =
        p == 2.0 ? uv : (uv != 0 ? std::pow(std::abs(uv), p - 2) * uv : 0.0);
    dE[v] += m.vertex_weights[v] * p * coef;
  }

  // chain rule for E / N^(p/q)
  const double npq = std::pow(nq, p / q);
  const double cN = (p / q) * energy / (nq * npq);
  Field g(u.mesh);
  for (std::size_t v = 0; v < u.values.size(); ++v) {
    if (m.dirichlet[v]) continue;
    const double uv = u.values[v];
    const double dN =
        q == 4.0 ? 4 * uv * uv * uv : (uv != 0 ? q * std::pow(std::abs(uv), q - 2) * uv : 0.0);
    g.values[v] = dE[v] / npq - cN * m.vertex_weights[v] * dN;
  }
  return g;
}

Field pde_residual(const Field& u) {
  const Mesh& m = *u.mesh;
  Field r(u.mesh);
  stiffness_apply(m, u.values, r.values);
  for (std::size_t v = 0; v < u.values.size(); ++v) {
    const double uv = u.values[v];
    r.values[v] = r.values[v] / m.vertex_weights[v] + uv - uv * uv * uv;
  }
  return r;
}

double residual_sup_free(const Field& r) {
  const Mesh& m = *r.mesh;
  double s = 0;
  for (std::size_t v = 0; v < r.values.size(); ++v)
    if (!m.dirichlet[v]) s = std::max(s, std::abs(r.values[v]));
  return s;
}

void stiffness_apply(const Mesh& m, std::span<const double> u, std::span<double> out) {
  if (m.dim == 2) {
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
      const auto& tri = m.triangles[t];
      const TriGeom& g = m.tri_geom[t];
      const double gx = u[tri[0]] * g.gx[0] + u[tri[1]] * g.gx[1] + u[tri[2]] * g.gx[2];
      const double gy = u[tri[0]] * g.gy[0] + u[tri[1]] * g.gy[1] + u[tri[2]] * g.gy[2];
      for (int i = 0; i < 3; ++i) out[tri[i]] += g.area * (gx * g.gx[i] + gy * g.gy[i]);
    }
  } else {
    for (const auto& seg : m.segments) {
      const double len = m.vertices[seg[1]].x - m.vertices[seg[0]].x;
      const double d = (u[seg[1]] - u[seg[0]]) / len;
      out[seg[0]] -= d;
      out[seg[1]] += d;
    }
  }
}

Eigen::SparseMatrix<double> assemble_stiffness(const Mesh& m, bool constrained) {
  const int n = static_cast<int>(m.vertex_count());
  std::vector<Eigen::Triplet<double>> trips;
  auto keep = [&](int a, int b) {
    return !constrained || (!m.dirichlet[a] && !m.dirichlet[b]);
  };
  if (m.dim == 2) {
    trips.reserve(m.triangles.size() * 9);
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
      const auto& tri = m.triangles[t];
      const TriGeom& g = m.tri_geom[t];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (keep(tri[i], tri[j]))
            trips.emplace_back(tri[i], tri[j],
                               g.area * (g.gx[i] * g.gx[j] + g.gy[i] * g.gy[j]));
    }
  } else {
    for (const auto& seg : m.segments) {
      const double w = 1.0 / (m.vertices[seg[1]].x - m.vertices[seg[0]].x);
      if (keep(seg[0], seg[0])) trips.emplace_back(seg[0], seg[0], w);
      if (keep(seg[1], seg[1])) trips.emplace_back(seg[1], seg[1], w);
      if (keep(seg[0], seg[1])) {
        trips.emplace_back(seg[0], seg[1], -w);
        trips.emplace_back(seg[1], seg[0], -w);
      }
    }
  }
  if (constrained)
    for (int v = 0; v < n; ++v)
      if (m.dirichlet[v]) trips.emplace_back(v, v, 1.0);
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trips.begin(), trips.end());
  return A;
}

} // namespace entire
