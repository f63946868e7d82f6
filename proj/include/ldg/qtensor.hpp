#pragma once

// Value-level algebra on traceless symmetric 3x3 tensors (Q-tensors).
//
// A QTensor is stored as five coordinates in the orthonormal basis
//   E1 = (e1⊗e2 + e2⊗e1)/√2      E4 = (e1⊗e1 − e2⊗e2)/√2
//   E2 = (e1⊗e3 + e3⊗e1)/√2      E5 = (2e3⊗e3 − e1⊗e1 − e2⊗e2)/√6
//   E3 = (e2⊗e3 + e3⊗e2)/√2
// so the Frobenius inner product of two tensors is the dot product of their
// coordinates, and every coordinate vector is automatically symmetric and
// traceless.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "ldg/error.hpp"

namespace ldg {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 scaled(const Vec3& a, double t) { return {a[0] * t, a[1] * t, a[2] * t}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

inline Vec3 mat_vec(const Mat3& m, const Vec3& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
          m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
          m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

inline Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Mat3 transposed(const Mat3& a) {
  Mat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
  return t;
}

namespace detail {
inline constexpr double kSqrt2 = std::numbers::sqrt2;
inline constexpr double kSqrt6 = 2.449489742783178098197284074705891391965947480656670128432692567;
inline constexpr double kSqrt3Over2 = 1.224744871391589049098642037352945695982973740328335064216346284;
}  // namespace detail

/// sqrt(2/3): Frobenius norm of n⊗n − Id/3 for unit n.
inline constexpr double kSqrtTwoThirds = 0.8164965809277260327324280249019637973219824935522233761442308557;

class QTensor {
 public:
  using Coords = std::array<double, 5>;

  constexpr QTensor() = default;
  constexpr explicit QTensor(const Coords& c) : c_(c) {}

  static QTensor from_matrix(const Mat3& m) {
    using detail::kSqrt2;
    // Symmetrize and drop the trace so that near-symmetric input maps to the
    // nearest element of Sym0.
    const double tr = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    const double q11 = m[0][0] - tr, q22 = m[1][1] - tr, q33 = m[2][2] - tr;
    const double q12 = 0.5 * (m[0][1] + m[1][0]);
    const double q13 = 0.5 * (m[0][2] + m[2][0]);
    const double q23 = 0.5 * (m[1][2] + m[2][1]);
    return QTensor({kSqrt2 * q12, kSqrt2 * q13, kSqrt2 * q23, (q11 - q22) / kSqrt2,
                    (2.0 * q33 - q11 - q22) / detail::kSqrt6});
  }

  Mat3 matrix() const {
    using detail::kSqrt2;
    using detail::kSqrt6;
    const double off12 = c_[0] / kSqrt2, off13 = c_[1] / kSqrt2, off23 = c_[2] / kSqrt2;
    const double d4 = c_[3] / kSqrt2, d5 = c_[4] / kSqrt6;
    return {{{d4 - d5, off12, off13}, {off12, -d4 - d5, off23}, {off13, off23, 2.0 * d5}}};
  }

  constexpr const Coords& coords() const { return c_; }
  constexpr double operator[](std::size_t k) const { return c_[k]; }
  constexpr double& operator[](std::size_t k) { return c_[k]; }

  double norm_sq() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  // Matrix entries, used by the potentials.
  double q11() const { return c_[3] / detail::kSqrt2 - c_[4] / detail::kSqrt6; }
  double q22() const { return -c_[3] / detail::kSqrt2 - c_[4] / detail::kSqrt6; }
  double q33() const { return 2.0 * c_[4] / detail::kSqrt6; }
  double q12() const { return c_[0] / detail::kSqrt2; }
  double q13() const { return c_[1] / detail::kSqrt2; }
  double q23() const { return c_[2] / detail::kSqrt2; }

  QTensor& operator+=(const QTensor& o) {
    for (std::size_t k = 0; k < 5; ++k) c_[k] += o.c_[k];
    return *this;
  }
  QTensor& operator-=(const QTensor& o) {
    for (std::size_t k = 0; k < 5; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  QTensor& operator*=(double t) {
    for (double& v : c_) v *= t;
    return *this;
  }
  friend QTensor operator+(QTensor a, const QTensor& b) { return a += b; }
  friend QTensor operator-(QTensor a, const QTensor& b) { return a -= b; }
  friend QTensor operator*(QTensor a, double t) { return a *= t; }
  friend QTensor operator*(double t, QTensor a) { return a *= t; }
  friend QTensor operator-(QTensor a) { return a *= -1.0; }
  friend bool operator==(const QTensor&, const QTensor&) = default;

 private:
  Coords c_{};
};

inline double inner(const QTensor& a, const QTensor& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < 5; ++k) s += a[k] * b[k];
  return s;
}

/// Uniaxial tensor s(n⊗n − Id/3) whose director n lies in the x-z plane at
/// polar angle `phase` from e3. Used throughout the meridional constructions.
inline QTensor from_phase(double phase, double s) {
  using detail::kSqrt2;
  const double sn = std::sin(phase), cs = std::cos(phase);
  // n = (sn, 0, cs): Q12 = Q23 = 0, Q13 = s sn cs, Q11 − Q22 = s sn², Q33 = s(cs² − 1/3).
  return QTensor({0.0, kSqrt2 * s * sn * cs, 0.0, s * sn * sn / kSqrt2,
                  detail::kSqrt3Over2 * s * (cs * cs - 1.0 / 3.0)});
}

/// s(n⊗n − Id/3). Throws InvalidInput unless |n| = 1 within 1e-12.
inline QTensor from_director(const Vec3& n, double s) {
  if (std::abs(norm(n) - 1.0) > 1e-12) throw InvalidInput("from_director: director is not a unit vector");
  Mat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = s * (n[i] * n[j] - (i == j ? 1.0 / 3.0 : 0.0));
  return QTensor::from_matrix(m);
}

/// Phase of the director of an x-z-planar uniaxial tensor, modulo π, in (−π/2, π/2].
inline double director_phase(const QTensor& q) {
  return 0.5 * std::atan2(2.0 * q.q13(), q.q33() - q.q11());
}

struct SpectralData {
  std::array<double, 3> lambda{};  // descending
  Vec3 n{1.0, 0.0, 0.0};           // eigenvector of lambda[0]
  Vec3 m{0.0, 1.0, 0.0};           // eigenvector of lambda[1]
  double s = 0.0;
  double r = 0.0;
};

namespace detail {

inline Vec3 normalized(const Vec3& v) { return scaled(v, 1.0 / norm(v)); }

// Kernel direction of the (numerically) rank-2 symmetric matrix a − λ Id:
// the largest cross product of two of its rows.
inline Vec3 null_vector(const Mat3& a, double lambda) {
  const Vec3 r0{a[0][0] - lambda, a[0][1], a[0][2]};
  const Vec3 r1{a[1][0], a[1][1] - lambda, a[1][2]};
  const Vec3 r2{a[2][0], a[2][1], a[2][2] - lambda};
  const std::array<Vec3, 3> cands{cross(r0, r1), cross(r0, r2), cross(r1, r2)};
  std::size_t best = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (dot(cands[k], cands[k]) > dot(cands[best], cands[best])) best = k;
  if (dot(cands[best], cands[best]) == 0.0) return {1.0, 0.0, 0.0};
  return normalized(cands[best]);
}

// Orthonormal pair spanning the complement of unit v, built by Gram-Schmidt
// from the first reference axis (e1, e2, e3 priority) with a usable projection.
inline std::array<Vec3, 2> complement_basis(const Vec3& v) {
  static constexpr std::array<Vec3, 3> axes{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}};
  for (const Vec3& e : axes) {
    const Vec3 p = e - scaled(v, dot(e, v));
    if (norm(p) > 0.5) {
      const Vec3 u = normalized(p);
      return {u, cross(v, u)};
    }
  }
  return {Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0}};  // unreachable for unit v
}

inline Vec3 canonical_sign(Vec3 v) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(v[i]) > std::abs(v[k]) + 1e-15) k = i;
  if (v[k] < 0.0) v = scaled(v, -1.0);
  return v;
}

}  // namespace detail

/// Eigen-decomposition with s = 2λ₁+λ₂ and r = (λ₁+2λ₂)/s (r = 0 when s = 0).
///
/// Eigenvalues come from the trigonometric solution of the characteristic
/// polynomial. The most isolated eigenvalue's vector is taken from the kernel
/// of Q − λ Id; the remaining pair is resolved exactly as a 2x2 problem in its
/// orthogonal complement, and all eigenvalues are then refined once by their
/// Rayleigh quotients.
inline SpectralData spectral(const QTensor& q) {
  SpectralData out;
  const double nrm2 = q.norm_sq();
  if (nrm2 == 0.0) return out;

  const Mat3 a = q.matrix();
  const double p = std::sqrt(nrm2 / 6.0);
  Mat3 b = a;
  for (auto& row : b)
    for (double& v : row) v /= p;
  const double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                     b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                     b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  const double half_det = std::clamp(0.5 * det, -1.0, 1.0);
  const double ang = std::acos(half_det) / 3.0;
  const double l1 = 2.0 * p * std::cos(ang);
  const double l3 = 2.0 * p * std::cos(ang + 2.0 * std::numbers::pi / 3.0);
  const double l2 = -l1 - l3;

  Vec3 v_iso;
  const bool top_isolated = (l1 - l2) >= (l2 - l3);
  v_iso = detail::null_vector(a, top_isolated ? l1 : l3);
  const auto [u, w] = detail::complement_basis(v_iso);
  const Vec3 au = mat_vec(a, u), aw = mat_vec(a, w);
  const double muu = dot(u, au), mww = dot(w, aw), muw = dot(u, aw);
  // Jacobi rotation diagonalizing [[muu, muw], [muw, mww]].
  double c = 1.0, s = 0.0;
  if (muw != 0.0) {
    const double tau = (mww - muu) / (2.0 * muw);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    c = 1.0 / std::sqrt(1.0 + t * t);
    s = t * c;
  }
  const Vec3 p1 = scaled(u, c) - scaled(w, s);
  const Vec3 p2 = scaled(u, s) + scaled(w, c);
  // Rayleigh-quotient refinement.
  std::array<std::pair<double, Vec3>, 3> pairs{
      std::pair{dot(v_iso, mat_vec(a, v_iso)), v_iso}, std::pair{dot(p1, mat_vec(a, p1)), p1},
      std::pair{dot(p2, mat_vec(a, p2)), p2}};
  // Stable sort keeps the Gram-Schmidt order for exact ties.
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) { return x.first > y.first; });

  out.lambda = {pairs[0].first, pairs[1].first, pairs[2].first};
  out.n = detail::canonical_sign(pairs[0].second);
  out.m = detail::canonical_sign(pairs[1].second);
  out.s = std::max(0.0, 2.0 * out.lambda[0] + out.lambda[1]);
  out.r = out.s > 0.0 ? std::clamp((out.lambda[0] + 2.0 * out.lambda[1]) / out.s, 0.0, 1.0) : 0.0;
  return out;
}

/// s((n⊗n − Id/3) + r(m⊗m − Id/3)).
inline QTensor reconstruct(const SpectralData& sd) {
  Mat3 mtx{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double id = i == j ? 1.0 / 3.0 : 0.0;
      mtx[i][j] = sd.s * ((sd.n[i] * sd.n[j] - id) + sd.r * (sd.m[i] * sd.m[j] - id));
    }
  return QTensor::from_matrix(mtx);
}

/// Tie tolerance for λ₁ − λ₂ below which a tensor is treated as lying on the
/// biaxial cone.
inline double cone_tolerance(const QTensor& q) { return 1e-9 * std::max(1.0, q.norm()); }

inline bool on_cone(const QTensor& q) {
  const SpectralData sd = spectral(q);
  return sd.lambda[0] - sd.lambda[1] <= cone_tolerance(q);
}

/// Nearest-point projection onto the vacuum manifold, s*(n⊗n − Id/3).
inline QTensor project_N(const QTensor& q, double s_star) {
  const SpectralData sd = spectral(q);
  if (sd.lambda[0] - sd.lambda[1] <= cone_tolerance(q))
    throw DegenerateTensor("project_N: leading eigenvalues coincide (tensor on the biaxial cone)");
  return from_director(sd.n, s_star);
}

inline double dist_N(const QTensor& q, double s_star) { return (q - project_N(q, s_star)).norm(); }

/// s(1 − r)/s*, which reduces to (λ₁ − λ₂)/s*. Zero on the cone, one on N.
inline double biaxiality_phi(const QTensor& q, double s_star) {
  const SpectralData sd = spectral(q);
  return sd.s * (1.0 - sd.r) / s_star;
}

/// Radial retraction onto the ball |Q| ≤ √(2/3) s*. Idempotent: tensors
/// within rounding of the bound are returned unchanged.
inline QTensor retract_Linf(const QTensor& q, double s_star) {
  const double cap = kSqrtTwoThirds * s_star;
  const double nq = q.norm();
  if (nq <= cap * (1.0 + 1e-15)) return q;
  return q * (cap / nq);
}

/// |∂_φ Q|² for the equivariant extension: |Q|² + 6(Q₁₂² − Q₁₁Q₂₂).
/// In coordinates this is 4q₁² + q₂² + q₃² + 4q₄².
inline double azimuthal_grad_sq(const QTensor& q) {
  return 4.0 * q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + 4.0 * q[3] * q[3];
}

inline QTensor azimuthal_grad_sq_gradient(const QTensor& q) {
  return QTensor({8.0 * q[0], 2.0 * q[1], 2.0 * q[2], 8.0 * q[3], 0.0});
}

inline Mat3 z_rotation(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {{{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}}};
}

/// R_φᵀ Q R_φ with R_φ the rotation about e3.
inline QTensor rotate(const QTensor& q, double phi) {
  const Mat3 r = z_rotation(phi);
  return QTensor::from_matrix(mat_mul(transposed(r), mat_mul(q.matrix(), r)));
}

/// Equivariance forces tensors on the symmetry axis into span{E5}.
inline QTensor axis_part(const QTensor& q) { return QTensor({0.0, 0.0, 0.0, 0.0, q[4]}); }

}  // namespace ldg
