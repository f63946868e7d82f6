#pragma once

// Bulk (Landau-de Gennes) and external-field potentials on Sym0.

#include <cmath>
#include <optional>

#include "ldg/error.hpp"
#include "ldg/qtensor.hpp"

namespace ldg {

/// Preferred uniaxial order (b + √(b² + 24ac)) / (4c).
inline double s_star(double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw InvalidInput("s_star: coefficients a, b, c must be positive");
  return (b + std::sqrt(b * b + 24.0 * a * c)) / (4.0 * c);
}

/// Additive constant making min f = 0. On the vacuum manifold tr(Q²) = (2/3)s*²
/// and tr(Q³) = (2/9)s*³.
inline double bulk_constant(double a, double b, double c) {
  const double s = s_star(a, b, c);
  return a / 3.0 * s * s + 2.0 * b / 27.0 * s * s * s - c / 9.0 * s * s * s * s;
}

/// Material coefficients, the derived constants, and the length scales ξ, η
/// coupled through η|ln ξ| = β.
struct ModelParams {
  double a = 1.0, b = 1.0, c = 1.0;
  double C = 0.4375;
  double s_star = 1.5;
  double xi = 0.05;
  double eta = 0.1;
  double beta = 0.1 * 2.995732273553991;

  /// Fill the derived constants from (a, b, c) and the regime from exactly two
  /// of (beta, eta, xi).
  static ModelParams make(double a, double b, double c, std::optional<double> beta, std::optional<double> eta,
                          std::optional<double> xi) {
    ModelParams p;
    p.a = a;
    p.b = b;
    p.c = c;
    p.s_star = ldg::s_star(a, b, c);
    p.C = bulk_constant(a, b, c);
    const int given = int(beta.has_value()) + int(eta.has_value()) + int(xi.has_value());
    if (given != 2) throw InvalidInput("ModelParams: exactly two of beta, eta, xi must be given");
    if (xi && !(*xi > 0.0 && *xi < 1.0)) throw InvalidInput("ModelParams: xi must lie in (0, 1)");
    if (eta && !(*eta > 0.0)) throw InvalidInput("ModelParams: eta must be positive");
    if (beta && !(*beta > 0.0)) throw InvalidInput("ModelParams: beta must be positive");
    if (!beta) {
      p.eta = *eta;
      p.xi = *xi;
      p.beta = p.eta * std::abs(std::log(p.xi));
    } else if (!eta) {
      p.beta = *beta;
      p.xi = *xi;
      p.eta = p.beta / std::abs(std::log(p.xi));
    } else {
      p.beta = *beta;
      p.eta = *eta;
      p.xi = std::exp(-p.beta / p.eta);
    }
    return p;
  }
};

/// f(Q) = C − (a/2)tr(Q²) − (b/3)tr(Q³) + (c/4)(tr Q²)².
inline double bulk_f(const QTensor& q, const ModelParams& p) {
  const double tr2 = q.norm_sq();
  // tr(Q³) = 3 det Q for traceless Q.
  const Mat3 m = q.matrix();
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  const double tr3 = 3.0 * det;
  return p.C - 0.5 * p.a * tr2 - p.b / 3.0 * tr3 + 0.25 * p.c * tr2 * tr2;
}

/// Gradient of f in Sym0: −aQ − b(Q² − tr(Q²)/3 Id) + c tr(Q²) Q.
inline QTensor bulk_grad(const QTensor& q, const ModelParams& p) {
  const double tr2 = q.norm_sq();
  const Mat3 m = q.matrix();
  const QTensor q2 = QTensor::from_matrix(mat_mul(m, m));  // drops the trace
  return q * (-p.a + p.c * tr2) - q2 * p.b;
}

/// g(Q) = √(2/3) − Q₃₃/|Q|, and 0 at Q = 0.
inline double field_g(const QTensor& q) {
  const double nq = q.norm();
  if (nq == 0.0) return 0.0;
  return kSqrtTwoThirds - q.q33() / nq;
}

/// Below this multiple of s*, g is treated as non-differentiable.
inline constexpr double kFieldGradFloor = 1e-8;

/// Sym0 gradient of g: −(e3⊗e3 − Id/3)/|Q| + Q₃₃ Q/|Q|³.
inline QTensor field_grad(const QTensor& q, double s_star) {
  const double nq = q.norm();
  if (nq < kFieldGradFloor * s_star) throw NearZeroTensor("field_grad: |Q| below the differentiability floor");
  // e3⊗e3 − Id/3 has coordinates (0, 0, 0, 0, √(2/3)).
  QTensor g = q * (q.q33() / (nq * nq * nq));
  g[4] -= kSqrtTwoThirds / nq;
  return g;
}

/// field_grad with zero substituted below the floor.
inline QTensor field_grad_or_zero(const QTensor& q, double s_star) {
  if (q.norm() < kFieldGradFloor * s_star) return QTensor{};
  return field_grad(q, s_star);
}

/// g restricted to the vacuum manifold: √(3/2)(1 − n₃²).
inline double g_on_N(double n3) {
  if (!(std::abs(n3) <= 1.0)) throw InvalidInput("g_on_N: |n3| must not exceed 1");
  return detail::kSqrt3Over2 * (1.0 - n3 * n3);
}

}  // namespace ldg
