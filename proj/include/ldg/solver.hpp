#pragma once

// Projected gradient flow for the discrete equivariant energy.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldg/energy.hpp"
#include "ldg/mesh.hpp"

namespace ldg {

struct SolverOpts {
  double tol = 1e-3;       // on the constrained gradient norm (see ConvergenceReport)
  int max_iter = 200000;
  double initial_step = 1e-4;
  double min_step = 1e-14;
  double max_step = 1e3;
  int threads = 1;
  bool record_trace = true;
};

struct ConvergenceReport {
  bool converged = false;
  std::string status;  // "converged", "max-iter", "stalled"
  int iterations = 0;
  int energy_evaluations = 0;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  double grad_norm = 0.0;       // constrained: outward parts at nodes on the |Q| bound removed
  double raw_grad_norm = 0.0;   // EnergyBreakdown::grad_norm of the final field
  int bound_nodes = 0;          // free nodes with |Q| on the bound √(2/3) s*
  double last_step = 0.0;
  double seconds = 0.0;
  std::vector<double> energy_trace;  // one entry per accepted step, starting with the initial energy
};

/// No descent direction could be found although the gradient is above
/// tolerance. Carries the last accepted field and its report.
struct SolverStall : std::runtime_error {
  Field2D field;
  ConvergenceReport report;
  SolverStall(const std::string& what, Field2D f, ConvergenceReport r)
      : std::runtime_error(what), field(std::move(f)), report(std::move(r)) {}
};

struct MinimizeResult {
  Field2D field;
  ConvergenceReport report;
  EnergyBreakdown energy;
};

namespace detail {

inline void retract_free_nodes(Field2D& f) {
  const double s = f.params.s_star;
  for (int i = 1; i + 1 < f.mesh.n_r(); ++i)
    for (int j = 0; j < f.mesh.n_theta(); ++j) f.at(i, j) = retract_Linf(f.at(i, j), s);
}

struct ConstrainedNorm {
  double norm = 0.0;
  int bound_nodes = 0;
};

// First-order optimality residual for E on {|Q| ≤ √(2/3) s*}: the gradient,
// weighted like EnergyBreakdown::grad_norm, with the component along Q removed
// at nodes on the bound where lowering E would need |Q| to grow.
inline ConstrainedNorm constrained_grad_norm(const Field2D& f, const std::vector<QTensor>& g) {
  const double cap = kSqrtTwoThirds * f.params.s_star;
  ConstrainedNorm out;
  double acc = 0.0;
  for (int i = 1; i + 1 < f.mesh.n_r(); ++i)
    for (int j = 0; j < f.mesh.n_theta(); ++j) {
      const std::size_t k = f.mesh.index(i, j);
      const QTensor& q = f.values[k];
      QTensor gk = g[k];
      const double qq = q.norm_sq();
      if (std::sqrt(qq) >= cap * (1.0 - 1e-12)) {
        ++out.bound_nodes;
        const double gq = inner(gk, q);
        if (gq < 0.0) gk -= q * (gq / qq);
      }
      acc += gk.norm_sq() / f.mesh.node_weight[k];
    }
  out.norm = std::sqrt(acc);
  return out;
}

}  // namespace detail

/// Gradient flow preconditioned by the lumped node volumes: each step moves
/// Q_k by −τ ∂E/∂Q_k / w_k, with τ proposed by the Barzilai-Borwein rule and
/// halved until the energy decreases. Every trial state is retracted to
/// |Q| ≤ √(2/3) s* and kept in the axis subspace, and only strictly
/// energy-decreasing steps are accepted. Converged when the constrained
/// gradient norm is at most `tol`.
inline MinimizeResult minimize(const Field2D& field0, const SolverOpts& opts = {}) {
  const auto t_start = std::chrono::steady_clock::now();
  const AssemblyOptions asm_opts{.check_boundary = true, .boundary_tol = 1e-9, .threads = opts.threads};
  Field2D x = field0;
  detail::retract_free_nodes(x);
  const Mesh& mesh = x.mesh;
  const std::size_t nn = mesh.size();

  auto cur = detail::assemble(x, asm_opts, true);
  ConvergenceReport rep;
  rep.initial_energy = cur.energy.total;
  rep.energy_evaluations = 1;
  if (opts.record_trace) rep.energy_trace.push_back(cur.energy.total);

  auto residual = detail::constrained_grad_norm(x, cur.gradient);
  auto finish = [&](bool converged, const std::string& status) {
    rep.converged = converged;
    rep.status = status;
    rep.final_energy = cur.energy.total;
    rep.grad_norm = residual.norm;
    rep.raw_grad_norm = cur.energy.grad_norm;
    rep.bound_nodes = residual.bound_nodes;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  };

  double tau = opts.initial_step;
  Field2D trial = x;
  for (int it = 0;; ++it) {
    if (residual.norm <= opts.tol) {
      finish(true, "converged");
      return {std::move(x), std::move(rep), cur.energy};
    }
    if (it >= opts.max_iter) {
      finish(false, "max-iter");
      return {std::move(x), std::move(rep), cur.energy};
    }

    tau = std::clamp(tau, opts.min_step, opts.max_step);
    bool accepted = false;
    detail::Assembly next;
    while (tau >= opts.min_step) {
      for (std::size_t k = 0; k < nn; ++k) {
        const double w = mesh.node_weight[k];
        trial.values[k] = x.values[k] - cur.gradient[k] * (tau / w);
      }
      detail::retract_free_nodes(trial);
      const double e_trial = assemble_total(trial, asm_opts);
      ++rep.energy_evaluations;
      if (e_trial < cur.energy.total) {
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) {
      finish(false, "stalled");
      throw SolverStall("minimize: no energy-decreasing step above the minimum step size", std::move(x),
                        std::move(rep));
    }
    next = detail::assemble(trial, asm_opts, true);
    ++rep.energy_evaluations;

    // Barzilai-Borwein proposal in the lumped-mass metric.
    double ss = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < nn; ++k) {
      const QTensor s = trial.values[k] - x.values[k];
      const QTensor y = next.gradient[k] - cur.gradient[k];
      ss += mesh.node_weight[k] * s.norm_sq();
      sy += inner(s, y);
    }
    const double last = tau;
    tau = sy > 0.0 ? ss / sy : 2.0 * tau;
    rep.last_step = last;

    std::swap(x.values, trial.values);
    cur = std::move(next);
    residual = detail::constrained_grad_norm(x, cur.gradient);
    rep.iterations = it + 1;
    if (opts.record_trace) rep.energy_trace.push_back(cur.energy.total);
  }
}

}  // namespace ldg
