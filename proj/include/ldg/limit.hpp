#pragma once

// Limit functional on axisymmetric sets F of the unit sphere,
//
//   E0(F) = ⁴√24 s* [ ∫_F (1 − cos θ) dω + ∫_{S²∖F} (1 + cos θ) dω ] + (π/2) s*² β |∂F|,
//
// for F a union of latitude bands, and its one-interface reduction in θ_d.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ldg/error.hpp"
#include "ldg/profile.hpp"

namespace ldg {

namespace detail {
inline void check_limit_args(double beta, double s_star) {
  if (!(beta >= 0.0)) throw InvalidInput("limit: beta must be non-negative");
  if (!(s_star > 0.0)) throw InvalidInput("limit: s_star must be positive");
}
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

/// E0 for F = {θ ≤ θ_d}: 4⁴√24 π s*(sin⁴(θ_d/2) + cos⁴(θ_d/2)) + π² β s*² sin θ_d.
inline double limit_energy(double theta_d, double beta, double s_star) {
  detail::check_limit_args(beta, s_star);
  if (!(theta_d >= 0.0 && theta_d <= std::numbers::pi)) throw InvalidInput("limit_energy: theta_d must lie in [0, pi]");
  const double a = std::sin(0.5 * theta_d), b = std::cos(0.5 * theta_d);
  const double pi = std::numbers::pi;
  return 4.0 * kFourthRoot24 * pi * s_star * (a * a * a * a + b * b * b * b) +
         pi * pi * beta * s_star * s_star * std::sin(theta_d);
}

/// dE0/dθ_d = π s* cos θ_d (π β s* − 4⁴√24 sin θ_d).
inline double limit_energy_slope(double theta_d, double beta, double s_star) {
  const double pi = std::numbers::pi;
  return pi * s_star * std::cos(theta_d) * (pi * beta * s_star - 4.0 * kFourthRoot24 * std::sin(theta_d));
}

enum class BandLabel { F, Fc };  // F: aligned with +e3 (cost 1 − cos θ); Fc: with −e3

/// E0 for the band set with the given interface latitudes; the band touching
/// the north pole carries `first`, and labels alternate across interfaces.
inline double limit_energy_bandset(const std::vector<double>& interfaces, BandLabel first, double beta,
                                   double s_star) {
  detail::check_limit_args(beta, s_star);
  const double pi = std::numbers::pi;
  for (std::size_t k = 0; k < interfaces.size(); ++k) {
    if (!(interfaces[k] > 0.0 && interfaces[k] < pi))
      throw InvalidInput("limit_energy_bandset: interfaces must lie strictly inside (0, pi)");
    if (k > 0 && !(interfaces[k] > interfaces[k - 1]))
      throw InvalidInput("limit_energy_bandset: interfaces must be sorted and distinct");
  }
  // ∫ (1 − cos θ) sin θ dθ = (1 − cos θ)²/2 and ∫ (1 + cos θ) sin θ dθ = −(1 + cos θ)²/2.
  auto band = [](BandLabel l, double lo, double hi) {
    const double cl = std::cos(lo), ch = std::cos(hi);
    if (l == BandLabel::F) return 0.5 * ((1 - ch) * (1 - ch) - (1 - cl) * (1 - cl));
    return 0.5 * ((1 + cl) * (1 + cl) - (1 + ch) * (1 + ch));
  };
  double area = 0.0, perimeter = 0.0;
  double lo = 0.0;
  BandLabel l = first;
  for (double t : interfaces) {
    area += band(l, lo, t);
    perimeter += 2.0 * pi * std::sin(t);
    lo = t;
    l = l == BandLabel::F ? BandLabel::Fc : BandLabel::F;
  }
  area += band(l, lo, pi);
  return kFourthRoot24 * s_star * 2.0 * pi * area + 0.5 * pi * s_star * s_star * beta * perimeter;
}

struct CriticalBetas {
  double beta_equal;     // dipole and saturn-ring energies coincide
  double beta_spinodal;  // the saturn-ring minimum disappears
};

inline CriticalBetas critical_betas(double s_star) {
  if (!(s_star > 0.0)) throw InvalidInput("critical_betas: s_star must be positive");
  const double pi = std::numbers::pi;
  return {2.0 * kFourthRoot24 / (pi * s_star), 4.0 * kFourthRoot24 / (pi * s_star)};
}

enum class StationaryKind { local_min, local_max, boundary_min, degenerate };

inline const char* to_string(StationaryKind k) {
  switch (k) {
    case StationaryKind::local_min: return "local-min";
    case StationaryKind::local_max: return "local-max";
    case StationaryKind::boundary_min: return "boundary-min";
    case StationaryKind::degenerate: return "degenerate";
  }
  return "?";
}

struct StationaryPoint {
  double theta;
  StationaryKind kind;
};

/// Stationary points of θ_d ↦ E0 on [0, π], classified by the local shape of
/// the energy. Interior roots are π/2 and, when π β s* < 4⁴√24,
/// θ₂ = arcsin(π β s*/(4⁴√24)) and π − θ₂.
inline std::vector<StationaryPoint> stationary_angles(double beta, double s_star) {
  detail::check_limit_args(beta, s_star);
  const double pi = std::numbers::pi, K4 = 4.0 * kFourthRoot24;
  const double x = pi * beta * s_star;
  std::vector<StationaryPoint> out;
  // Poles: the one-sided slope into the interior is π² β s*² ≥ 0.
  const StationaryKind pole = beta > 0.0 ? StationaryKind::boundary_min : StationaryKind::local_max;
  out.push_back({0.0, pole});
  // Second derivative at π/2 is −π s* (π β s* − 4⁴√24).
  const double curv = -pi * s_star * (x - K4);
  const double tol = 1e-12 * K4 * pi * s_star;
  if (std::abs(curv) <= tol)
    out.push_back({0.5 * pi, StationaryKind::degenerate});
  else
    out.push_back({0.5 * pi, curv > 0 ? StationaryKind::local_min : StationaryKind::local_max});
  if (x < K4 && std::abs(curv) > tol) {
    const double t2 = std::asin(x / K4);
    // At θ₂ the second derivative is −4⁴√24 π s* cos²θ₂ < 0.
    if (t2 > 0.0) {
      out.push_back({t2, StationaryKind::local_max});
      out.push_back({pi - t2, StationaryKind::local_max});
    }
  }
  out.push_back({pi, pole});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.theta < b.theta; });
  return out;
}

enum class Branch { DP, SR, other };

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::DP: return "DP";
    case Branch::SR: return "SR";
    case Branch::other: return "other";
  }
  return "?";
}

inline Branch parse_branch(const std::string& s) {
  if (s == "DP" || s == "dp") return Branch::DP;
  if (s == "SR" || s == "sr") return Branch::SR;
  throw InvalidInput("unknown branch label '" + s + "' (expected dp or sr)");
}

struct LimitRecord {
  double beta;
  double theta_d;
  double energy;
  Branch branch;
  bool jump;  // θ_d moved by more than the jump threshold at this step
};

struct LimitTrace {
  std::vector<LimitRecord> records;

  std::string to_csv() const {
    std::ostringstream os;
    os << "beta,theta_d,energy,branch\n";
    for (const auto& r : records)
      os << detail::fmt17(r.beta) << ',' << detail::fmt17(r.theta_d) << ',' << detail::fmt17(r.energy) << ','
         << to_string(r.branch) << '\n';
    return os.str();
  }
};

struct SweepOptions {
  double step = 1e-3;        // initial descent step in θ_d
  double min_step = 1e-12;
  int max_inner = 10000;
  double jump_threshold = 0.3;
  double pole_offset = 1e-6;  // nudge off a pole before descending
  double sr_tolerance = 1e-3;
};

inline Branch classify_angle(double theta, double sr_tolerance = 1e-3) {
  const double pi = std::numbers::pi;
  if (theta <= 1e-9 || theta >= pi - 1e-9) return Branch::DP;
  if (std::abs(theta - 0.5 * pi) <= sr_tolerance) return Branch::SR;
  return Branch::other;
}

/// Local descent of E0 in θ_d from `theta`: moves against the slope with step
/// halving, accepting only strict decreases, clamped to [0, π].
inline double descend_theta(double theta, double beta, double s_star, const SweepOptions& opt = {}) {
  const double pi = std::numbers::pi;
  double h = opt.step;
  double e = limit_energy(theta, beta, s_star);
  for (int it = 0; it < opt.max_inner && h >= opt.min_step; ++it) {
    const double g = limit_energy_slope(theta, beta, s_star);
    if (g == 0.0) break;
    const double trial = std::clamp(theta - (g > 0 ? h : -h), 0.0, pi);
    const double et = limit_energy(trial, beta, s_star);
    // Decreases at the rounding level are not progress.
    if (et < e - 1e-14 * std::abs(e)) {
      theta = trial;
      e = et;
    } else {
      h *= 0.5;
    }
  }
  return theta;
}

/// Quasi-static continuation in β: n_steps equal increments from beta_from to
/// beta_to (n_steps + 1 records), each starting from the previous θ_d.
inline LimitTrace hysteresis_sweep(double beta_from, double beta_to, int n_steps, double s_star, Branch start,
                                   const SweepOptions& opt = {}) {
  if (n_steps < 2) throw InvalidInput("hysteresis_sweep: need at least 2 steps");
  if (start == Branch::other) throw InvalidInput("hysteresis_sweep: start branch must be DP or SR");
  detail::check_limit_args(std::min(beta_from, beta_to), s_star);
  const double pi = std::numbers::pi;
  double theta = start == Branch::DP ? 0.0 : 0.5 * pi;
  LimitTrace tr;
  for (int k = 0; k <= n_steps; ++k) {
    const double beta = beta_from + (beta_to - beta_from) * k / n_steps;
    const double before = theta;
    double t0 = theta;
    if (t0 <= 0.0) t0 = opt.pole_offset;
    if (t0 >= pi) t0 = pi - opt.pole_offset;
    // Keep the pole when the nudge does not lead anywhere lower.
    double t1 = descend_theta(t0, beta, s_star, opt);
    if (limit_energy(t1, beta, s_star) >= limit_energy(theta, beta, s_star)) t1 = theta;
    theta = t1;
    tr.records.push_back({beta, theta, limit_energy(theta, beta, s_star), classify_angle(theta, opt.sr_tolerance),
                          std::abs(theta - before) > opt.jump_threshold});
  }
  return tr;
}

/// Landscape θ_d ↦ E0 on n + 1 equally spaced angles, as CSV `theta_d,energy`.
inline std::string landscape_csv(double beta, double s_star, int n = 360) {
  std::ostringstream os;
  os << "theta_d,energy\n";
  for (int k = 0; k <= n; ++k) {
    const double t = std::numbers::pi * k / n;
    os << detail::fmt17(t) << ',' << detail::fmt17(limit_energy(t, beta, s_star)) << '\n';
  }
  return os.str();
}

}  // namespace ldg
