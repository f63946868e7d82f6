#pragma once

// Initial fields built from the optimal radial profile for a single interface
// latitude θ_d: two profile regions, linear phase wedges of half-width 2η
// around θ_d, and a half-integer defect core with an interpolating collar.
//
// All tensors outside the core ramp are uniaxial with order s* and a director
// in the x-z plane, so they are described by a phase φ, n = (sin φ, 0, cos φ).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ldg/error.hpp"
#include "ldg/mesh.hpp"
#include "ldg/profile.hpp"
#include "ldg/qtensor.hpp"

namespace ldg {

enum class Orientation { up, down };

struct SeedSpec {
  double theta_d = std::numbers::pi / 2;
  double eta = 0.1;
  double epsilon = 0.01;  // core ramp width, in units of the core radius η
  Orientation orientation = Orientation::up;
};

namespace detail {

inline constexpr double kPi = std::numbers::pi;

inline double profile_phase(double r, double theta, double eta, double s_star) {
  ProfileSpec ps;
  ps.theta = std::clamp(theta, 0.0, kPi);
  ps.s_star = s_star;
  return std::acos(std::clamp(optimal_n3((r - 1.0) / eta, ps), -1.0, 1.0));
}

// Phase of the region aligned with +e3 at the pole θ = 0: starts at θ on the
// surface and relaxes to 0.
inline double phase_F(double r, double theta, double eta, double s_star) {
  return profile_phase(r, theta, eta, s_star);
}

// Mirror region: starts at θ − π (the same tensor as θ) and relaxes to 0 from
// below.
inline double phase_Fc(double r, double theta, double eta, double s_star) {
  return -profile_phase(r, kPi - theta, eta, s_star);
}

// Phase of the region owning latitude θ (ignoring wedges).
inline double region_phase(double r, double theta, const SeedSpec& sp, double s_star) {
  const bool north = theta < sp.theta_d || sp.theta_d >= kPi;
  const bool use_F = (sp.orientation == Orientation::up) == north;
  if (sp.theta_d <= 0.0) return sp.orientation == Orientation::up ? phase_Fc(r, theta, sp.eta, s_star)
                                                                    : phase_F(r, theta, sp.eta, s_star);
  if (sp.theta_d >= kPi) return sp.orientation == Orientation::up ? phase_F(r, theta, sp.eta, s_star)
                                                                   : phase_Fc(r, theta, sp.eta, s_star);
  return use_F ? phase_F(r, theta, sp.eta, s_star) : phase_Fc(r, theta, sp.eta, s_star);
}

// Wedge phase: linear in θ from 0 at θ_d to the neighbouring region's phase,
// evaluated at the wedge edge θ_d ∓ 2η, at the same scaled distance.
inline double wedge_phase(double r, double theta, const SeedSpec& sp, double s_star) {
  const double w = 2.0 * sp.eta;
  const double edge = theta <= sp.theta_d ? sp.theta_d - w : sp.theta_d + w;
  return std::abs(theta - sp.theta_d) / w * region_phase(r, edge, sp, s_star);
}

inline bool has_interface(const SeedSpec& sp) { return sp.theta_d > 0.0 && sp.theta_d < kPi; }

// Phase of the construction outside the core square.
inline double outer_phase(double r, double theta, const SeedSpec& sp, double s_star) {
  if (has_interface(sp) && std::abs(theta - sp.theta_d) <= 2.0 * sp.eta) return wedge_phase(r, theta, sp, s_star);
  return region_phase(r, theta, sp, s_star);
}

inline void check_spec(const SeedSpec& sp) {
  if (!(sp.theta_d >= 0.0 && sp.theta_d <= kPi)) throw InvalidInput("seed: theta_d must lie in [0, pi]");
  if (!(sp.eta > 0.0)) throw InvalidInput("seed: eta must be positive");
  if (!(sp.epsilon > 0.0 && sp.epsilon < 0.5)) throw InvalidInput("seed: epsilon must lie in (0, 0.5)");
  if (has_interface(sp) && !(2.0 * sp.eta < std::min(sp.theta_d, kPi - sp.theta_d)))
    throw InvalidInput("seed: interface wedges of half-width 2 eta do not fit between the poles");
}

}  // namespace detail

/// Profile region aligned with +e3 toward the north pole. Requires θ ≤ θ_d − 2η.
inline QTensor seed_region_F(double r, double theta, const SeedSpec& sp, double s_star) {
  detail::check_spec(sp);
  if (detail::has_interface(sp) && theta > sp.theta_d - 2.0 * sp.eta + 1e-12)
    throw InvalidInput("seed_region_F: point lies outside the region");
  if (r < 1.0) throw InvalidInput("seed_region_F: point lies inside the colloid");
  return from_phase(detail::phase_F(r, theta, sp.eta, s_star), s_star);
}

/// Mirror profile region toward the south pole. Requires θ ≥ θ_d + 2η.
inline QTensor seed_region_Fc(double r, double theta, const SeedSpec& sp, double s_star) {
  detail::check_spec(sp);
  if (detail::has_interface(sp) && theta < sp.theta_d + 2.0 * sp.eta - 1e-12)
    throw InvalidInput("seed_region_Fc: point lies outside the region");
  if (r < 1.0) throw InvalidInput("seed_region_Fc: point lies inside the colloid");
  return from_phase(detail::phase_Fc(r, theta, sp.eta, s_star), s_star);
}

/// Interpolation wedge |θ − θ_d| ≤ 2η: director e3 on θ = θ_d, matching the
/// adjacent region at the wedge edges.
inline QTensor seed_wedge(double r, double theta, const SeedSpec& sp, double s_star) {
  detail::check_spec(sp);
  if (!detail::has_interface(sp) || std::abs(theta - sp.theta_d) > 2.0 * sp.eta + 1e-12)
    throw InvalidInput("seed_wedge: point lies outside the wedge");
  if (r < 1.0) throw InvalidInput("seed_wedge: point lies inside the colloid");
  return from_phase(detail::wedge_phase(r, theta, sp, s_star), s_star);
}

/// Half-integer defect core on the unit disk: zero for local_r < ε, ramped
/// linearly on [ε, 2ε), then s*(n⊗n − Id/3) with n = (sin(σα/2), 0, cos(σα/2)).
/// σ = −1 gives the opposite winding.
inline QTensor seed_core(double local_r, double alpha, double epsilon, double s_star, int sigma = +1) {
  if (local_r < epsilon) return QTensor{};
  const QTensor q = from_phase(0.5 * sigma * alpha, s_star);
  if (local_r < 2.0 * epsilon) return q * (local_r / epsilon - 1.0);
  return q;
}

/// Where build_seed actually placed things after snapping to the mesh.
struct SeedLayout {
  double theta_c = 0.0;  // core latitude (θ_d snapped to a θ node)
  double r_c = 0.0;      // core radius (smallest r node ≥ 1 + 2η)
  int i_c = -1, j_c = -1;
  int sigma = 0;        // winding of the core, ±1
  bool has_core = false;
};

namespace detail {

// Unwrapped director phase of the outer construction along the boundary of
// the core rectangle, as a table over α ∈ [0, 2π] (last entry = first + winding).
struct CollarTable {
  std::vector<double> phase;
  double winding = 0.0;

  double at(double alpha) const {
    const int n = int(phase.size()) - 1;
    double x = alpha / (2.0 * kPi) * n;
    x = std::clamp(x, 0.0, double(n));
    const int k = std::min(int(x), n - 1);
    const double f = x - k;
    return (1.0 - f) * phase[k] + f * phase[k + 1];
  }
};

// Point at local polar coordinates (ρ̄, α) around the core: w = ρ̄ cos α is the
// outward radial offset, u = ρ̄ sin α the offset toward the north pole.
inline std::pair<double, double> local_to_rt(double rbar, double alpha, double r_c, double theta_c) {
  return {r_c + rbar * std::cos(alpha), theta_c - rbar * std::sin(alpha)};
}

// Distance from the core centre to the boundary of the core rectangle along
// direction α. The rectangle has half-width `half` except on the inner side,
// which reaches down to the colloid surface at distance `inner`.
inline double square_radius(double alpha, double half, double inner) {
  const double c = std::cos(alpha), s = std::abs(std::sin(alpha));
  const double hw = c < 0.0 ? inner : half;
  const double rc = std::abs(c) > 0.0 ? hw / std::abs(c) : 1e300;
  const double rs = s > 0.0 ? half / s : 1e300;
  return std::min(rc, rs);
}

inline CollarTable collar_table(const SeedSpec& sp, double r_c, double theta_c, double s_star, int samples = 2048) {
  const double half = 2.0 * sp.eta;
  CollarTable tab;
  tab.phase.resize(samples + 1);
  double prev = 0.0;
  for (int k = 0; k <= samples; ++k) {
    const double alpha = 2.0 * kPi * k / samples;
    const auto [r, th] = local_to_rt(square_radius(alpha, half, r_c - 1.0), alpha, r_c, theta_c);
    // The inner side of the rectangle lies on the colloid surface.
    const QTensor q = r <= 1.0 + 1e-12 ? surface_value(th, s_star) : from_phase(outer_phase(r, th, sp, s_star), s_star);
    double ph = director_phase(q);
    if (k > 0) ph += kPi * std::round((prev - ph) / kPi);
    tab.phase[k] = ph;
    prev = ph;
  }
  // Put α = 0 on the branch nearest zero so the core's σα/2 matches there.
  const double shift = kPi * std::round(tab.phase[0] / kPi);
  for (double& v : tab.phase) v -= shift;
  tab.winding = tab.phase.back() - tab.phase.front();
  return tab;
}

}  // namespace detail

/// Sample the construction on every node. θ_d is snapped to the nearest θ
/// node and the core centre to the smallest r node ≥ 1 + 2η, so that the core
/// centre is a mesh node; the collar around the core ball fills the rectangle
/// |θ − θ_c| ≤ 2η, 1 ≤ r ≤ r_c + 2η. θ_d ∈ {0, π} gives a single region, no core.
inline Field2D build_seed(const Mesh& mesh, const SeedSpec& spec_in, const ModelParams& params,
                          SeedLayout* layout = nullptr) {
  detail::check_spec(spec_in);
  const double s = params.s_star;
  SeedSpec sp = spec_in;
  SeedLayout lay;
  Field2D f(mesh, params);

  if (detail::has_interface(sp)) {
    const auto jt = std::min_element(mesh.theta.begin(), mesh.theta.end(), [&](double a, double b) {
      return std::abs(a - sp.theta_d) < std::abs(b - sp.theta_d);
    });
    lay.j_c = int(jt - mesh.theta.begin());
    lay.theta_c = *jt;
    sp.theta_d = lay.theta_c;
    detail::check_spec(sp);
    const auto it = std::lower_bound(mesh.r.begin(), mesh.r.end(), 1.0 + 2.0 * sp.eta - 1e-12);
    if (it == mesh.r.end() || *it + 2.0 * sp.eta >= mesh.r.back())
      throw InvalidInput("build_seed: the defect core does not fit inside the mesh");
    lay.i_c = int(it - mesh.r.begin());
    lay.r_c = *it;
    lay.has_core = true;
  }

  detail::CollarTable tab;
  if (lay.has_core) {
    tab = detail::collar_table(sp, lay.r_c, lay.theta_c, s);
    lay.sigma = int(std::lround(tab.winding / detail::kPi));
  }

  const double half = 2.0 * sp.eta;
  for (int i = 0; i < mesh.n_r(); ++i)
    for (int j = 0; j < mesh.n_theta(); ++j) {
      const double r = mesh.r[i], th = mesh.theta[j];
      QTensor q;
      const double w = r - lay.r_c, u = lay.theta_c - th;
      if (lay.has_core && std::abs(u) <= half && w <= half) {
        const double rbar = std::hypot(u, w);
        double alpha = std::atan2(u, w);
        if (alpha < 0.0) alpha += 2.0 * detail::kPi;
        if (rbar < sp.eta) {
          q = seed_core(rbar / sp.eta, alpha, sp.epsilon, s, lay.sigma);
        } else {
          const double R = detail::square_radius(alpha, half, lay.r_c - 1.0);
          const double inner = 0.5 * lay.sigma * alpha;
          const double ph = ((R - rbar) * inner + (rbar - sp.eta) * tab.at(alpha)) / (R - sp.eta);
          q = from_phase(ph, s);
        }
      } else {
        q = from_phase(detail::outer_phase(r, th, sp, s), s);
      }
      f.at(i, j) = q;
    }
  f.apply_boundary();
  if (layout) *layout = lay;
  return f;
}

}  // namespace ldg
