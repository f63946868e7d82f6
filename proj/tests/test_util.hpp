#pragma once

#include <cmath>
#include <random>

#include "ldg/qtensor.hpp"

namespace testutil {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(0xC0FFEE);
  return g;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline ldg::QTensor random_q(double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  return ldg::QTensor({nd(rng()), nd(rng()), nd(rng()), nd(rng()), nd(rng())});
}

inline ldg::Vec3 random_unit() {
  std::normal_distribution<double> nd(0.0, 1.0);
  ldg::Vec3 v{nd(rng()), nd(rng()), nd(rng())};
  const double n = ldg::norm(v);
  return ldg::scaled(v, 1.0 / n);
}

// Rotation matrix from a random unit quaternion.
inline ldg::Mat3 random_rotation() {
  std::normal_distribution<double> nd(0.0, 1.0);
  double w = nd(rng()), x = nd(rng()), y = nd(rng()), z = nd(rng());
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  w /= n, x /= n, y /= n, z /= n;
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
           {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
           {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
}

// Frobenius distance between two raw matrices.
inline double mat_dist(const ldg::Mat3& a, const ldg::Mat3& b) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += (a[i][j] - b[i][j]) * (a[i][j] - b[i][j]);
  return std::sqrt(s);
}

}  // namespace testutil
