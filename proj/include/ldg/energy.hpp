#pragma once

// Discrete equivariant energy
//
//   E = Σ_cells 2π ρ r dr dθ [ ½(|∂_r Q|² + r⁻²|∂_θ Q|²) + |∂_φ Q|²/(2ρ²) + f(Q)/ξ² + g(Q)/η² ]
//
// on the (r, θ) grid. Per cell, ∂_r Q and ∂_θ Q are edge differences whose
// squares are averaged over the two parallel edges; the zeroth-order terms use
// the cell-midpoint value (mean of the four corners) and the midpoint ρ, which
// is positive even on cells touching the axis. The gradient is the exact
// derivative of this sum.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>
#include <vector>

#include "ldg/mesh.hpp"
#include "ldg/potentials.hpp"
#include "ldg/qtensor.hpp"

namespace ldg {

struct EnergyBreakdown {
  double elastic_meridional = 0.0;
  double elastic_azimuthal = 0.0;
  double bulk = 0.0;
  double field = 0.0;
  double total = 0.0;
  double grad_norm = 0.0;
};

struct AssemblyOptions {
  bool check_boundary = true;
  double boundary_tol = 1e-9;
  int threads = 1;
};

namespace detail {

struct CellTerms {
  double merid = 0.0, azim = 0.0, bulk = 0.0, field = 0.0;
};

// Corner order: 0 = (i, j), 1 = (i+1, j), 2 = (i, j+1), 3 = (i+1, j+1).
inline CellTerms cell_energy(const Field2D& f, int i, int j, std::array<QTensor, 4>* grad) {
  const Mesh& m = f.mesh;
  const ModelParams& p = f.params;
  const QTensor& q0 = f.at(i, j);
  const QTensor& q1 = f.at(i + 1, j);
  const QTensor& q2 = f.at(i, j + 1);
  const QTensor& q3 = f.at(i + 1, j + 1);
  const double w = m.cell_weight(i, j);
  const double rm = m.cell_r(i), dr = m.cell_dr(i), dth = m.cell_dtheta(j);
  const double rho = rm * std::sin(m.cell_theta(j));

  const QTensor dr0 = q1 - q0, dr1 = q3 - q2;  // radial edges
  const QTensor dt0 = q2 - q0, dt1 = q3 - q1;  // angular edges
  const double cr = w * 0.25 / (dr * dr);
  const double ct = w * 0.25 / (rm * rm * dth * dth);

  QTensor mid = (q0 + q1 + q2 + q3) * 0.25;
  CellTerms e;
  e.merid = cr * (dr0.norm_sq() + dr1.norm_sq()) + ct * (dt0.norm_sq() + dt1.norm_sq());
  const double ca = w / (2.0 * rho * rho);
  e.azim = ca * azimuthal_grad_sq(mid);
  e.bulk = w / (p.xi * p.xi) * bulk_f(mid, p);
  e.field = w / (p.eta * p.eta) * field_g(mid);

  if (grad) {
    auto& g = *grad;
    const QTensor gr0 = dr0 * (2.0 * cr), gr1 = dr1 * (2.0 * cr);
    const QTensor gt0 = dt0 * (2.0 * ct), gt1 = dt1 * (2.0 * ct);
    const QTensor gmid = (azimuthal_grad_sq_gradient(mid) * ca + bulk_grad(mid, p) * (w / (p.xi * p.xi)) +
                          field_grad_or_zero(mid, p.s_star) * (w / (p.eta * p.eta))) *
                         0.25;
    g[0] = gmid - gr0 - gt0;
    g[1] = gmid + gr0 - gt1;
    g[2] = gmid - gr1 + gt0;
    g[3] = gmid + gr1 + gt1;
  }
  return e;
}

inline void check_field(const Field2D& f, const AssemblyOptions& opt) {
  if (f.values.size() != f.mesh.size()) throw InvalidInput("field size does not match its mesh");
  if (opt.check_boundary) {
    const double v = boundary_violation(f);
    if (v > opt.boundary_tol)
      throw BoundaryViolation("field violates boundary/axis invariants by " + std::to_string(v));
  }
}

// Runs body(row) for every cell row, split over `threads` workers. Each row is
// handled by exactly one worker.
inline void for_rows(int rows, int threads, const std::function<void(int)>& body) {
  threads = std::clamp(threads, 1, std::max(1, rows));
  if (threads == 1) {
    for (int i = 0; i < rows; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < rows; i += threads) body(i);
    });
}

struct Assembly {
  EnergyBreakdown energy;
  std::vector<QTensor> gradient;  // projected; empty unless requested
};

inline Assembly assemble(const Field2D& f, const AssemblyOptions& opt, bool want_grad) {
  check_field(f, opt);
  const Mesh& m = f.mesh;
  const int rows = m.n_r() - 1, cols = m.n_theta() - 1;
  std::vector<CellTerms> row_sums(rows);
  std::vector<std::array<QTensor, 4>> cell_grad(want_grad ? std::size_t(rows) * cols : 0);

  for_rows(rows, opt.threads, [&](int i) {
    CellTerms acc;
    for (int j = 0; j < cols; ++j) {
      auto* g = want_grad ? &cell_grad[std::size_t(i) * cols + j] : nullptr;
      const CellTerms e = cell_energy(f, i, j, g);
      acc.merid += e.merid;
      acc.azim += e.azim;
      acc.bulk += e.bulk;
      acc.field += e.field;
    }
    row_sums[i] = acc;
  });

  Assembly out;
  for (const auto& rs : row_sums) {
    out.energy.elastic_meridional += rs.merid;
    out.energy.elastic_azimuthal += rs.azim;
    out.energy.bulk += rs.bulk;
    out.energy.field += rs.field;
  }
  out.energy.total =
      out.energy.elastic_meridional + out.energy.elastic_azimuthal + out.energy.bulk + out.energy.field;

  if (!want_grad) return out;
  out.gradient.assign(m.size(), QTensor{});
  double gn = 0.0;
  for (int i = 1; i + 1 < m.n_r(); ++i)
    for (int j = 0; j < m.n_theta(); ++j) {
      QTensor g;
      // Gather from the (up to) four cells sharing node (i, j), fixed order.
      if (j > 0) {
        g += cell_grad[std::size_t(i - 1) * cols + (j - 1)][3];
        g += cell_grad[std::size_t(i) * cols + (j - 1)][2];
      }
      if (j < cols) {
        g += cell_grad[std::size_t(i - 1) * cols + j][1];
        g += cell_grad[std::size_t(i) * cols + j][0];
      }
      if (m.is_axis(j)) g = axis_part(g);
      out.gradient[m.index(i, j)] = g;
      gn += g.norm_sq() / m.node_weight[m.index(i, j)];
    }
  out.energy.grad_norm = std::sqrt(gn);
  return out;
}

}  // namespace detail

/// Energy breakdown; grad_norm is the lumped-mass dual norm of the projected
/// gradient, sqrt(Σ |∂E/∂Q_k|² / w_k) over free nodes.
inline EnergyBreakdown assemble_energy(const Field2D& f, const AssemblyOptions& opt = {}) {
  return detail::assemble(f, opt, true).energy;
}

/// Energy only, skipping the gradient pass.
inline double assemble_total(const Field2D& f, const AssemblyOptions& opt = {}) {
  return detail::assemble(f, opt, false).energy.total;
}

/// Exact gradient of the discrete energy with respect to node coordinates.
/// Zero on the Dirichlet rows; axis nodes keep only their E5 component.
inline std::vector<QTensor> assemble_gradient(const Field2D& f, const AssemblyOptions& opt = {}) {
  return detail::assemble(f, opt, true).gradient;
}

/// Planar Dirichlet energy ½∫|∇Q|² dx of a map given in polar coordinates
/// (ρ, α), over the annulus spanned by `radii`, with n_alpha periodic angular
/// nodes. Uses the same edge-difference quadrature as the meridional energy.
inline double planar_dirichlet_energy(const std::function<QTensor(double, double)>& sample,
                                      const std::vector<double>& radii, int n_alpha) {
  const double da = 2.0 * std::numbers::pi / n_alpha;
  std::vector<QTensor> prev(n_alpha), cur(n_alpha);
  for (int a = 0; a < n_alpha; ++a) prev[a] = sample(radii[0], a * da);
  double e = 0.0;
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    for (int a = 0; a < n_alpha; ++a) cur[a] = sample(radii[i + 1], a * da);
    const double r0 = radii[i], r1 = radii[i + 1], dr = r1 - r0, rm = 0.5 * (r0 + r1);
    const double w = rm * dr * da;
    for (int a = 0; a < n_alpha; ++a) {
      const int b = (a + 1) % n_alpha;
      const double rad = 0.5 * ((cur[a] - prev[a]).norm_sq() + (cur[b] - prev[b]).norm_sq()) / (dr * dr);
      const double ang = 0.5 * ((prev[b] - prev[a]).norm_sq() + (cur[b] - cur[a]).norm_sq()) / (rm * rm * da * da);
      e += 0.5 * w * (rad + ang);
    }
    prev.swap(cur);
  }
  return e;
}

/// n + 1 geometrically spaced radii from r0 to r1.
inline std::vector<double> geometric_radii(double r0, double r1, int n) {
  std::vector<double> r(n + 1);
  const double q = std::log(r1 / r0) / n;
  for (int k = 0; k <= n; ++k) r[k] = r0 * std::exp(q * k);
  r.front() = r0;
  r.back() = r1;
  return r;
}

}  // namespace ldg
