#pragma once

// Defect detection on minimized fields via the biaxiality indicator φ, and
// comparison of the detected configuration against the limit energy.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ldg/energy.hpp"
#include "ldg/limit.hpp"
#include "ldg/mesh.hpp"

namespace ldg {

inline constexpr double kDefaultPhiThreshold = 0.3;

struct Defect {
  double r = 0.0;  // centroid, weighted by threshold − φ
  double theta = 0.0;
  double min_phi = 1.0;
  double eigen_gap = 0.0;  // λ₁ − λ₂ at the node of minimum φ
  int nodes = 0;
  bool touches_axis = false;
};

enum class Configuration { DP, SR, mixed };

inline const char* to_string(Configuration c) {
  switch (c) {
    case Configuration::DP: return "DP";
    case Configuration::SR: return "SR";
    case Configuration::mixed: return "mixed";
  }
  return "?";
}

struct DefectReport {
  std::vector<Defect> defects;
  std::optional<double> ring_angle;
  Configuration classification = Configuration::DP;
  EnergyBreakdown energy;
  double threshold = kDefaultPhiThreshold;
};

/// SR: one cluster off the axis with |θ − π/2| < π/4. DP: every cluster
/// within π/8 of an axis (an empty list included). Otherwise mixed.
inline Configuration classify_configuration(const DefectReport& rep) {
  const double pi = std::numbers::pi;
  if (rep.defects.size() == 1) {
    const Defect& d = rep.defects.front();
    if (!d.touches_axis && std::abs(d.theta - 0.5 * pi) < 0.25 * pi) return Configuration::SR;
  }
  const bool all_axial = std::all_of(rep.defects.begin(), rep.defects.end(), [&](const Defect& d) {
    return d.theta < pi / 8 || d.theta > pi - pi / 8;
  });
  return all_axial ? Configuration::DP : Configuration::mixed;
}

/// Clusters of nodes with φ below `phi_threshold`, joined by 4-neighbour
/// adjacency on the grid, ordered by centroid angle.
inline DefectReport detect_defects(const Field2D& f, double phi_threshold = kDefaultPhiThreshold) {
  if (!(phi_threshold > 0.0 && phi_threshold < 1.0))
    throw InvalidInput("detect_defects: threshold must lie in (0, 1)");
  const Mesh& m = f.mesh;
  const double s = f.params.s_star;
  const int nr = m.n_r(), nt = m.n_theta();
  std::vector<double> phi(m.size());
  std::vector<double> gap(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    const SpectralData sd = spectral(f.values[k]);
    gap[k] = sd.lambda[0] - sd.lambda[1];
    phi[k] = gap[k] / s;
  }
  DefectReport rep;
  rep.threshold = phi_threshold;
  std::vector<char> seen(m.size(), 0);
  std::vector<std::pair<int, int>> stack;
  for (int i0 = 0; i0 < nr; ++i0)
    for (int j0 = 0; j0 < nt; ++j0) {
      const std::size_t k0 = m.index(i0, j0);
      if (seen[k0] || !(phi[k0] < phi_threshold)) continue;
      seen[k0] = 1;
      stack.assign(1, {i0, j0});
      Defect d;
      double wsum = 0.0, rs = 0.0, ts = 0.0;
      while (!stack.empty()) {
        const auto [i, j] = stack.back();
        stack.pop_back();
        const std::size_t k = m.index(i, j);
        const double w = phi_threshold - phi[k];
        wsum += w;
        rs += w * m.r[i];
        ts += w * m.theta[j];
        ++d.nodes;
        if (m.is_axis(j)) d.touches_axis = true;
        if (phi[k] < d.min_phi) {
          d.min_phi = phi[k];
          d.eigen_gap = gap[k];
        }
        const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
        for (int n = 0; n < 4; ++n) {
          const int a = i + di[n], b = j + dj[n];
          if (a < 0 || a >= nr || b < 0 || b >= nt) continue;
          const std::size_t kn = m.index(a, b);
          if (seen[kn] || !(phi[kn] < phi_threshold)) continue;
          seen[kn] = 1;
          stack.push_back({a, b});
        }
      }
      d.r = rs / wsum;
      d.theta = ts / wsum;
      rep.defects.push_back(d);
    }
  std::sort(rep.defects.begin(), rep.defects.end(), [](const Defect& a, const Defect& b) {
    return a.theta < b.theta || (a.theta == b.theta && a.r < b.r);
  });
  rep.classification = classify_configuration(rep);
  if (rep.classification == Configuration::SR) rep.ring_angle = rep.defects.front().theta;
  rep.energy = assemble_energy(f, {.check_boundary = false});
  return rep;
}

struct ComparisonRecord {
  double eta_energy;    // η · E_num
  double limit_energy;  // E0 at the detected angle
  double relative_gap;  // (η E_num − E0)/E0
  double theta_d;
};

/// Scaled discrete energy against E0 at the detected angle: the ring angle
/// for SR, θ_d = 0 for DP.
inline ComparisonRecord compare_to_limit(const DefectReport& rep, const ModelParams& p) {
  double theta = 0.0;
  if (rep.classification == Configuration::SR) {
    if (!rep.ring_angle) throw InvalidInput("compare_to_limit: SR report without a ring angle");
    theta = *rep.ring_angle;
  } else if (rep.classification == Configuration::mixed) {
    throw InvalidInput("compare_to_limit: mixed configuration has no single interface angle");
  }
  const double e_num = p.eta * rep.energy.total;
  const double e0 = limit_energy(theta, p.beta, p.s_star);
  return {e_num, e0, (e_num - e0) / e0, theta};
}

inline nlohmann::json to_json(const EnergyBreakdown& e) {
  return {{"elastic_meridional", e.elastic_meridional},
          {"elastic_azimuthal", e.elastic_azimuthal},
          {"bulk", e.bulk},
          {"field", e.field},
          {"total", e.total},
          {"grad_norm", e.grad_norm}};
}

inline nlohmann::json to_json(const DefectReport& rep) {
  nlohmann::json defects = nlohmann::json::array();
  for (const auto& d : rep.defects)
    defects.push_back({{"r", d.r},
                       {"theta", d.theta},
                       {"min_phi", d.min_phi},
                       {"eigen_gap", d.eigen_gap},
                       {"nodes", d.nodes},
                       {"touches_axis", d.touches_axis}});
  nlohmann::json j = {{"classification", to_string(rep.classification)},
                      {"threshold", rep.threshold},
                      {"defects", defects},
                      {"energy", to_json(rep.energy)}};
  j["ring_angle"] = rep.ring_angle ? nlohmann::json(*rep.ring_angle) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json to_json(const ComparisonRecord& c) {
  return {{"eta_energy", c.eta_energy},
          {"limit_energy", c.limit_energy},
          {"relative_gap", c.relative_gap},
          {"theta_d", c.theta_d}};
}

/// φ on every node as CSV `r,theta,phi`.
inline std::string phi_csv(const Field2D& f) {
  std::ostringstream os;
  os << "r,theta,phi\n";
  for (int i = 0; i < f.mesh.n_r(); ++i)
    for (int j = 0; j < f.mesh.n_theta(); ++j)
      os << detail::fmt17(f.mesh.r[i]) << ',' << detail::fmt17(f.mesh.theta[j]) << ','
         << detail::fmt17(biaxiality_phi(f.at(i, j), f.params.s_star)) << '\n';
  return os.str();
}

}  // namespace ldg
