#pragma once

// One-dimensional radial turning problem
//
//   I(r1, r2, a, b) = inf ∫ s*² |n3'|² / (1 − n3²) + √(3/2)(1 − n3²) dr,
//   n3(r1) = a, n3(r2) = b,
//
// its explicit half-line minimizer, and a discrete minimizer for general data.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldg/error.hpp"
#include "ldg/qtensor.hpp"

namespace ldg {

/// ⁴√24, the rate constant of the radial profile.
inline const double kFourthRoot24 = std::pow(24.0, 0.25);

struct ProfileSpec {
  double theta = std::numbers::pi / 2;
  double s_star = 1.5;
  int sign = +1;  // target n3 at infinity
  double t_max = 40.0;
  int n_points = 10001;
};

namespace detail {

// For sign = +1 the optimal profile is
//   n3 = (c² − u s²)/(c² + u s²),  u = exp(−⁴√24 t / s*),  c = cos(θ/2), s = sin(θ/2),
// which equals (A − u)/(A + u) with A = cot²(θ/2) but stays finite at θ = 0, π.
struct ProfileTerms {
  double n3;
  double one_minus_n3_sq;
  double slope;  // dn3/dt
};

inline ProfileTerms profile_terms(double t, double theta, double s_star) {
  const double k = kFourthRoot24 / s_star;
  const double u = std::exp(-k * t);
  const double c2 = std::pow(std::cos(0.5 * theta), 2), s2 = std::pow(std::sin(0.5 * theta), 2);
  const double den = c2 + u * s2;
  return {(c2 - u * s2) / den, 4.0 * u * c2 * s2 / (den * den), 2.0 * k * u * s2 * c2 / (den * den)};
}

inline ProfileTerms signed_terms(double t, const ProfileSpec& spec) {
  // The −1 profile is the mirror image n3 ↦ −n3 of the +1 profile at π − θ.
  if (spec.sign >= 0) return profile_terms(t, spec.theta, spec.s_star);
  ProfileTerms pt = profile_terms(t, std::numbers::pi - spec.theta, spec.s_star);
  pt.n3 = -pt.n3;
  pt.slope = -pt.slope;
  return pt;
}

inline void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw InvalidInput("profile: theta must lie in [0, pi]");
}

}  // namespace detail

/// Optimal n3 at scaled distance t ≥ 0 from the surface. n3(0) = cos θ and
/// n3 → spec.sign exponentially; θ = 0, π give the constant ±1 profiles.
inline double optimal_n3(double t, const ProfileSpec& spec) {
  detail::check_theta(spec.theta);
  if (t < 0.0) throw InvalidInput("optimal_n3: t must be non-negative");
  return detail::signed_terms(t, spec).n3;
}

/// Analytic derivative dn3/dt of the optimal profile.
inline double optimal_n3_slope(double t, const ProfileSpec& spec) {
  detail::check_theta(spec.theta);
  return detail::signed_terms(t, spec).slope;
}

/// The two halves of the integrand along the optimal profile. Equal pointwise
/// (equipartition).
struct ProfileIntegrand {
  double elastic;    // s*² n3'² / (1 − n3²)
  double potential;  // √(3/2)(1 − n3²)
};

inline ProfileIntegrand profile_integrand(double t, const ProfileSpec& spec) {
  const auto pt = detail::signed_terms(t, spec);
  const double elastic =
      pt.one_minus_n3_sq > 0.0 ? spec.s_star * spec.s_star * pt.slope * pt.slope / pt.one_minus_n3_sq : 0.0;
  return {elastic, detail::kSqrt3Over2 * pt.one_minus_n3_sq};
}

/// I(0, ∞, cos θ, ±1) = ⁴√24 s* (1 ∓ cos θ).
inline double closed_form_I(double theta, int sign, double s_star) {
  detail::check_theta(theta);
  return kFourthRoot24 * s_star * (1.0 - (sign >= 0 ? 1.0 : -1.0) * std::cos(theta));
}

struct QuadratureResult {
  double value = 0.0;
  std::vector<std::string> warnings;
};

/// Composite Simpson integral of the integrand along the optimal profile on [0, t_max].
inline QuadratureResult quadrature_I(const ProfileSpec& spec) {
  detail::check_theta(spec.theta);
  if (spec.n_points < 3 || spec.t_max <= 0.0) throw InvalidInput("quadrature_I: need n_points >= 3 and t_max > 0");
  QuadratureResult res;
  const double k = kFourthRoot24 / spec.s_star;
  if (std::exp(-k * spec.t_max) >= 1e-12)
    res.warnings.push_back("t_max too small: truncated tail exceeds 1e-12 relative decay");
  int n = spec.n_points;
  if (n % 2 == 0) ++n;  // Simpson needs an even number of intervals
  const double h = spec.t_max / (n - 1);
  if (h * k > 0.05) res.warnings.push_back("n_points too small: step resolves the decay length poorly");
  // Antipodal data (n3(0) = −sign): the constant path is stationary but the
  // infimum 2⁴√24 s* is only approached by a kink sliding to infinity. Integrate
  // a kink centred in the window instead.
  const bool antipodal = (spec.theta == std::numbers::pi && spec.sign >= 0) || (spec.theta == 0.0 && spec.sign < 0);
  if (antipodal) res.warnings.push_back("antipodal boundary data: infimum not attained, integrating a centred kink");
  auto integrand = [&](double t) {
    if (!antipodal) return profile_integrand(t, spec);
    const double sech = 1.0 / std::cosh(0.5 * k * (t - 0.5 * spec.t_max));
    const double v = detail::kSqrt3Over2 * sech * sech;  // both halves, by equipartition
    return ProfileIntegrand{v, v};
  };
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto ig = integrand(i * h);
    const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += w * (ig.elastic + ig.potential);
  }
  res.value = sum * h / 3.0;
  return res;
}

struct ProfilePath {
  double value = 0.0;
  std::vector<double> r;
  std::vector<double> n3;
  int iterations = 0;
};

/// Non-convergence of the discrete radial minimizer; carries the last iterate.
struct ProfileSolverFailure : std::runtime_error {
  ProfilePath last;
  ProfileSolverFailure(const std::string& what, ProfilePath p) : std::runtime_error(what), last(std::move(p)) {}
};

namespace detail {

// Discrete functional in the angle variable ψ (n3 = cos ψ), for which
// n3'²/(1 − n3²) = ψ'² and 1 − n3² = sin²ψ:
//   E = Σ h [ s*² ((ψ_{i+1} − ψ_i)/h)² + √(3/2) (sin²ψ_i + sin²ψ_{i+1}) / 2 ].
inline double angle_energy(const std::vector<double>& psi, double h, double s_star) {
  double e = 0.0;
  for (std::size_t i = 0; i + 1 < psi.size(); ++i) {
    const double d = (psi[i + 1] - psi[i]) / h;
    const double s0 = std::sin(psi[i]), s1 = std::sin(psi[i + 1]);
    e += h * (s_star * s_star * d * d + kSqrt3Over2 * 0.5 * (s0 * s0 + s1 * s1));
  }
  return e;
}

}  // namespace detail

/// Discrete minimizer of I(r1, r2, a, b) on a uniform grid of n_points nodes.
///
/// Works in the angle variable ψ = arccos n3, which keeps every iterate inside
/// [−1, 1] and removes the 1/(1 − n3²) singularity. Iterates are
/// Levenberg-Marquardt steps on the exact tridiagonal Hessian; only
/// energy-decreasing steps are accepted.
inline ProfilePath minimize_I(double r1, double r2, double a_val, double b_val, double s_star, int n_points,
                              int max_iter = 2000, double tol = 1e-11) {
  if (!(std::abs(a_val) <= 1.0 && std::abs(b_val) <= 1.0)) throw InvalidInput("minimize_I: endpoint data must lie in [-1, 1]");
  if (!(r2 > r1) || !std::isfinite(r2)) throw InvalidInput("minimize_I: need finite r2 > r1");
  if (n_points < 2) throw InvalidInput("minimize_I: need at least 2 nodes");
  if (!(s_star > 0.0)) throw InvalidInput("minimize_I: s_star must be positive");

  const int n = n_points;
  const double h = (r2 - r1) / (n - 1);
  const double pa = std::acos(a_val), pb = std::acos(b_val);
  std::vector<double> psi(n);
  for (int i = 0; i < n; ++i) psi[i] = pa + (pb - pa) * i / double(n - 1);

  const double ks = 2.0 * s_star * s_star / h;  // stiffness of the difference term
  const double pot = detail::kSqrt3Over2;
  auto pack = [&](int iters) {
    ProfilePath out;
    out.iterations = iters;
    out.value = detail::angle_energy(psi, h, s_star);
    out.r.resize(n);
    out.n3.resize(n);
    for (int i = 0; i < n; ++i) {
      out.r[i] = r1 + h * i;
      out.n3[i] = std::cos(psi[i]);
    }
    out.n3.front() = a_val;
    out.n3.back() = b_val;
    return out;
  };
  if (n <= 2) return pack(0);

  double energy = detail::angle_energy(psi, h, s_star);
  const int m = n - 2;  // interior unknowns
  std::vector<double> grad(m), curv(m), diag(m), step(m), cp(m), dp(m), trial(psi);
  double mu = 1.0;  // Levenberg-Marquardt shift, in units of the potential curvature scale
  int stalls = 0;
  for (int it = 1; it <= max_iter; ++it) {
    double gnorm = 0.0, shift = 0.0;
    for (int k = 0; k < m; ++k) {
      const int i = k + 1;
      // Trapezoid weights give each interior node a full h of potential.
      grad[k] = ks * (2.0 * psi[i] - psi[i - 1] - psi[i + 1]) + h * pot * std::sin(2.0 * psi[i]);
      curv[k] = h * pot * 2.0 * std::cos(2.0 * psi[i]);
      shift = std::max(shift, -curv[k]);
      gnorm = std::max(gnorm, std::abs(grad[k]) / h);
    }
    if (gnorm < tol) return pack(it - 1);
    // Shifted Hessian: tridiag(−ks, 2ks + curv + shift + μ h pot, −ks) is SPD.
    const double lm = shift + mu * h * pot;
    for (int k = 0; k < m; ++k) diag[k] = 2.0 * ks + curv[k] + lm;
    cp[0] = -ks / diag[0];
    dp[0] = grad[0] / diag[0];
    for (int k = 1; k < m; ++k) {
      const double den = diag[k] + ks * cp[k - 1];
      cp[k] = -ks / den;
      dp[k] = (grad[k] + ks * dp[k - 1]) / den;
    }
    step[m - 1] = dp[m - 1];
    for (int k = m - 2; k >= 0; --k) step[k] = dp[k] - cp[k] * step[k + 1];

    for (int k = 0; k < m; ++k) trial[k + 1] = psi[k + 1] - step[k];
    const double e_trial = detail::angle_energy(trial, h, s_star);
    if (e_trial < energy) {
      const double gain = energy - e_trial;
      psi.swap(trial);
      trial = psi;
      energy = e_trial;
      mu = std::max(mu / 3.0, 1e-12);
      stalls = 0;
      if (gain <= 1e-15 * std::max(1.0, std::abs(energy))) return pack(it);
    } else {
      mu *= 4.0;
      // No decrease even for a tiny gradient-like step: converged to working precision.
      if (++stalls > 60) return pack(it);
    }
  }
  throw ProfileSolverFailure("minimize_I: no convergence within the iteration limit", pack(max_iter));
}

/// Far-field truncation for the half-line problem: 40 decay lengths.
inline double default_t_max(double s_star) { return 40.0 * s_star / kFourthRoot24; }

}  // namespace ldg
