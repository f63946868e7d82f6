#pragma once

// Polar (r, θ) grid over the truncated meridional half-plane outside the unit
// disk, and the per-node Q-tensor field living on it.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ldg/error.hpp"
#include "ldg/potentials.hpp"
#include "ldg/qtensor.hpp"

namespace ldg {

struct MeshSpec {
  double r_max = 8.0;
  int n_r = 128;
  int n_theta = 96;
  double stretch = 1.03;  // ratio of consecutive radial spacings
};

struct Mesh {
  MeshSpec spec;
  std::vector<double> r;      // n_r nodes, r[0] = 1, r.back() = r_max
  std::vector<double> theta;  // n_theta nodes, uniform on [0, π]
  std::vector<double> node_weight;  // lumped 3D volume per node (quarter of each adjacent cell)
  std::vector<std::string> warnings;

  int n_r() const { return spec.n_r; }
  int n_theta() const { return spec.n_theta; }
  std::size_t size() const { return std::size_t(spec.n_r) * std::size_t(spec.n_theta); }
  std::size_t index(int i, int j) const { return std::size_t(i) * std::size_t(spec.n_theta) + std::size_t(j); }

  double cell_dr(int i) const { return r[i + 1] - r[i]; }
  double cell_dtheta(int j) const { return theta[j + 1] - theta[j]; }
  double cell_r(int i) const { return 0.5 * (r[i] + r[i + 1]); }
  double cell_theta(int j) const { return 0.5 * (theta[j] + theta[j + 1]); }
  /// 2π ρ r dr dθ at the cell midpoint.
  double cell_weight(int i, int j) const {
    const double rm = cell_r(i);
    return 2.0 * std::numbers::pi * rm * std::sin(cell_theta(j)) * rm * cell_dr(i) * cell_dtheta(j);
  }

  bool is_dirichlet(int i) const { return i == 0 || i == spec.n_r - 1; }
  bool is_axis(int j) const { return j == 0 || j == spec.n_theta - 1; }

  double total_weight() const {
    double s = 0.0;
    for (int i = 0; i + 1 < n_r(); ++i)
      for (int j = 0; j + 1 < n_theta(); ++j) s += cell_weight(i, j);
    return s;
  }
};

/// Build the grid. Radial spacings grow geometrically by `stretch`; when
/// `eta` is given, warns if the boundary layer does not fit inside r_max.
inline Mesh build_mesh(const MeshSpec& spec, std::optional<double> eta = std::nullopt) {
  if (spec.n_r < 2 || spec.n_theta < 2) throw InvalidInput("build_mesh: need at least 2 nodes in each direction");
  if (!(spec.r_max > 1.0)) throw InvalidInput("build_mesh: r_max must exceed 1");
  if (!(spec.stretch >= 1.0)) throw InvalidInput("build_mesh: stretch must be >= 1");
  Mesh m;
  m.spec = spec;
  if (spec.n_r < 8 || spec.n_theta < 8) m.warnings.push_back("fewer than 8 nodes in a direction");
  if (eta && spec.r_max <= 1.0 + 4.0 * *eta) m.warnings.push_back("r_max does not exceed 1 + 4 eta");

  const int nr = spec.n_r;
  m.r.resize(nr);
  const int intervals = nr - 1;
  double h0 = (spec.r_max - 1.0) / intervals;
  if (spec.stretch > 1.0) h0 = (spec.r_max - 1.0) * (spec.stretch - 1.0) / (std::pow(spec.stretch, intervals) - 1.0);
  m.r[0] = 1.0;
  double h = h0;
  for (int i = 1; i < nr; ++i, h *= spec.stretch) m.r[i] = m.r[i - 1] + h;
  m.r[nr - 1] = spec.r_max;

  m.theta.resize(spec.n_theta);
  for (int j = 0; j < spec.n_theta; ++j) m.theta[j] = std::numbers::pi * j / (spec.n_theta - 1);
  m.theta.back() = std::numbers::pi;

  m.node_weight.assign(m.size(), 0.0);
  for (int i = 0; i + 1 < nr; ++i)
    for (int j = 0; j + 1 < spec.n_theta; ++j) {
      const double w = 0.25 * m.cell_weight(i, j);
      m.node_weight[m.index(i, j)] += w;
      m.node_weight[m.index(i + 1, j)] += w;
      m.node_weight[m.index(i, j + 1)] += w;
      m.node_weight[m.index(i + 1, j + 1)] += w;
    }
  return m;
}

/// Boundary datum on the colloid surface: s*(x̂⊗x̂ − Id/3), x̂ = (sin θ, 0, cos θ).
inline QTensor surface_value(double theta, double s_star) { return from_phase(theta, s_star); }

/// Preferred far-field state s*(e3⊗e3 − Id/3).
inline QTensor far_field_value(double s_star) { return from_phase(0.0, s_star); }

struct Field2D {
  Mesh mesh;
  ModelParams params;
  std::vector<QTensor> values;

  Field2D() = default;
  Field2D(Mesh m, ModelParams p) : mesh(std::move(m)), params(p), values(mesh.size()) {}

  QTensor& at(int i, int j) { return values[mesh.index(i, j)]; }
  const QTensor& at(int i, int j) const { return values[mesh.index(i, j)]; }

  /// Overwrite the Dirichlet rows and project the axis columns.
  void apply_boundary() {
    const double s = params.s_star;
    for (int j = 0; j < mesh.n_theta(); ++j) {
      at(0, j) = surface_value(mesh.theta[j], s);
      at(mesh.n_r() - 1, j) = far_field_value(s);
    }
    for (int i = 1; i + 1 < mesh.n_r(); ++i) {
      at(i, 0) = axis_part(at(i, 0));
      at(i, mesh.n_theta() - 1) = axis_part(at(i, mesh.n_theta() - 1));
    }
  }

  double max_norm() const {
    double mx = 0.0;
    for (const auto& q : values) mx = std::max(mx, q.norm());
    return mx;
  }
};

/// Largest violation of the Dirichlet rows and the axis subspace.
inline double boundary_violation(const Field2D& f) {
  const double s = f.params.s_star;
  double worst = 0.0;
  for (int j = 0; j < f.mesh.n_theta(); ++j) {
    worst = std::max(worst, (f.at(0, j) - surface_value(f.mesh.theta[j], s)).norm());
    worst = std::max(worst, (f.at(f.mesh.n_r() - 1, j) - far_field_value(s)).norm());
  }
  for (int i = 0; i < f.mesh.n_r(); ++i)
    for (int j : {0, f.mesh.n_theta() - 1}) worst = std::max(worst, (f.at(i, j) - axis_part(f.at(i, j))).norm());
  return worst;
}

/// Constant field with the boundary rows and axis then imposed.
inline Field2D constant_field(const Mesh& mesh, const ModelParams& p, const QTensor& q) {
  Field2D f(mesh, p);
  for (auto& v : f.values) v = q;
  return f;
}

}  // namespace ldg
