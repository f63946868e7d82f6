#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ldg/limit.hpp"
#include "test_util.hpp"

using namespace ldg;

namespace {
const double pi = std::numbers::pi;
const double K = std::pow(24.0, 0.25);

// Band-set energy by composite Simpson quadrature of the area integrals on
// each band, independent of the closed-form antiderivatives.
double bandset_by_quadrature(const std::vector<double>& cuts, bool first_F, double beta, double s) {
  std::vector<double> edges{0.0};
  edges.insert(edges.end(), cuts.begin(), cuts.end());
  edges.push_back(pi);
  double area = 0.0;
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    const bool in_F = (b % 2 == 0) == first_F;
    auto f = [&](double t) { return (in_F ? 1 - std::cos(t) : 1 + std::cos(t)) * std::sin(t); };
    const int n = 2000;
    const double lo = edges[b], h = (edges[b + 1] - lo) / n;
    double sum = f(lo) + f(edges[b + 1]);
    for (int k = 1; k < n; ++k) sum += (k % 2 ? 4 : 2) * f(lo + k * h);
    area += sum * h / 3;
  }
  double per = 0.0;
  for (double c : cuts) per += 2 * pi * std::sin(c);
  return K * s * 2 * pi * area + 0.5 * pi * s * s * beta * per;
}
}  // namespace

TEST(Limit, EnergyExamples) {
  EXPECT_NEAR(limit_energy(0, 0.7, 1), 4 * K * pi, 1e-12);
  EXPECT_NEAR(limit_energy(pi / 2, 0, 1), 2 * K * pi, 1e-12);
  EXPECT_NEAR(limit_energy(pi / 2, 2 * K / pi, 1), 4 * K * pi, 1e-12);
  EXPECT_NEAR(limit_energy(pi, 1.3, 2), limit_energy(0, 1.3, 2), 1e-12);
  EXPECT_THROW(limit_energy(-0.1, 1, 1), InvalidInput);
  EXPECT_THROW(limit_energy(1, -1, 1), InvalidInput);
  EXPECT_THROW(limit_energy(1, 1, 0), InvalidInput);
}

TEST(Limit, SlopeMatchesFiniteDifference) {
  for (double beta : {0.0, 0.5, 1.4, 2.5, 3.5})
    for (int k = 1; k < 40; ++k) {
      const double t = pi * k / 40, h = 1e-6;
      const double fd = (limit_energy(t + h, beta, 1.2) - limit_energy(t - h, beta, 1.2)) / (2 * h);
      const double an = limit_energy_slope(t, beta, 1.2);
      EXPECT_NEAR(an, fd, 1e-8 * std::max(1.0, std::abs(an)));
    }
}

TEST(Limit, BandsetMatchesQuadrature) {
  const std::vector<std::vector<double>> configs = {{}, {0.4}, {pi / 3, 2 * pi / 3}, {0.2, 1.0, 2.9}, {1.5}};
  for (const auto& cuts : configs)
    for (bool fF : {true, false})
      for (double beta : {0.0, 1.0, 2.5}) {
        const double e = limit_energy_bandset(cuts, fF ? BandLabel::F : BandLabel::Fc, beta, 1.5);
        EXPECT_NEAR(e, bandset_by_quadrature(cuts, fF, beta, 1.5), 1e-7);
      }
  EXPECT_NEAR(limit_energy_bandset({}, BandLabel::F, 1.0, 1.0), 4 * pi * K, 1e-12);
  for (double t : {0.1, 1.0, 2.0, 3.0})
    EXPECT_NEAR(limit_energy_bandset({t}, BandLabel::F, 0.8, 1.3), limit_energy(t, 0.8, 1.3), 1e-12);
  EXPECT_THROW(limit_energy_bandset({1.0, 0.5}, BandLabel::F, 1, 1), InvalidInput);
  EXPECT_THROW(limit_energy_bandset({1.0, 1.0}, BandLabel::F, 1, 1), InvalidInput);
  EXPECT_THROW(limit_energy_bandset({0.0}, BandLabel::F, 1, 1), InvalidInput);
}

TEST(Limit, AlignmentCoefficientsMatchProfileValue) {
  // d/d(area) of the band cost equals closed_form_I(θ, ±1, s*) per unit solid angle.
  for (double t : {0.3, 1.2, 2.4}) {
    const double s = 1.7;
    EXPECT_NEAR(K * s * (1 - std::cos(t)), closed_form_I(t, +1, s), 1e-12);
    EXPECT_NEAR(K * s * (1 + std::cos(t)), closed_form_I(t, -1, s), 1e-12);
  }
}

TEST(Limit, CriticalBetas) {
  const auto c = critical_betas(1.0);
  EXPECT_NEAR(c.beta_equal, 2 * K / pi, 1e-12);
  EXPECT_NEAR(c.beta_spinodal, 4 * K / pi, 1e-12);
  EXPECT_NEAR(c.beta_equal, 1.409, 5e-4);
  EXPECT_NEAR(c.beta_spinodal, 2.818, 5e-4);
  const auto d = critical_betas(1.5);
  EXPECT_NEAR(d.beta_equal, c.beta_equal / 1.5, 1e-15);
  EXPECT_NEAR(limit_energy(pi / 2, d.beta_equal, 1.5), limit_energy(0, d.beta_equal, 1.5), 1e-12);
  // Bisection on the SR−DP difference, an independent root finder.
  double lo = 0.0, hi = 5.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (limit_energy(pi / 2, mid, 1.0) - limit_energy(0, mid, 1.0) < 0 ? lo : hi) = mid;
  }
  EXPECT_NEAR(0.5 * (lo + hi), c.beta_equal, 1e-10);
  EXPECT_THROW(critical_betas(0.0), InvalidInput);
}

TEST(Limit, StationaryAnglesExamples) {
  const auto z = stationary_angles(0.0, 1.0);
  ASSERT_EQ(z.size(), 3u);
  EXPECT_EQ(z[0].kind, StationaryKind::local_max);
  EXPECT_NEAR(z[1].theta, pi / 2, 1e-15);
  EXPECT_EQ(z[1].kind, StationaryKind::local_min);
  EXPECT_EQ(z[2].kind, StationaryKind::local_max);

  const auto two = stationary_angles(2.0, 1.0);
  ASSERT_EQ(two.size(), 5u);
  EXPECT_NEAR(two[1].theta, std::asin(2 * pi / (4 * K)), 1e-12);
  EXPECT_NEAR(std::sin(two[1].theta) * 4 * K, 2 * pi, 1e-12);
  EXPECT_EQ(two[1].kind, StationaryKind::local_max);
  EXPECT_EQ(two[2].kind, StationaryKind::local_min);
  EXPECT_EQ(two[0].kind, StationaryKind::boundary_min);

  for (const auto& sp : stationary_angles(3.0, 1.0)) EXPECT_NE(sp.kind, StationaryKind::local_min);
  const auto spin = stationary_angles(critical_betas(1.0).beta_spinodal, 1.0);
  ASSERT_EQ(spin.size(), 3u);
  EXPECT_EQ(spin[1].kind, StationaryKind::degenerate);
}

TEST(Limit, StationaryAnglesAgreeWithGrid) {
  // Every local minimum of the energy on a fine grid is a listed minimum, and
  // every listed point has (numerically) zero one-sided slope into the interior.
  for (double bs : {0.0, 0.3, 1.0, 1.409, 2.0, 2.5, 2.818, 3.0, 4.0}) {
    const int n = 20000;
    std::vector<double> e(n + 1);
    for (int k = 0; k <= n; ++k) e[k] = limit_energy(pi * k / n, bs, 1.0);
    const auto sp = stationary_angles(bs, 1.0);
    for (int k = 0; k <= n; ++k) {
      const bool left = k == 0 || e[k] < e[k - 1];
      const bool right = k == n || e[k] < e[k + 1];
      if (!(left && right)) continue;
      const double t = pi * k / n;
      bool found = false;
      for (const auto& p : sp)
        found = found || (std::abs(p.theta - t) <= 2 * pi / n &&
                          (p.kind == StationaryKind::local_min || p.kind == StationaryKind::boundary_min));
      EXPECT_TRUE(found) << "beta " << bs << " grid minimum at " << t;
    }
    for (const auto& p : sp) {
      if (p.theta > 0 && p.theta < pi) EXPECT_NEAR(limit_energy_slope(p.theta, bs, 1.0), 0.0, 1e-9);
    }
  }
}

TEST(Limit, HysteresisDescendingHoldsDipole) {
  const auto tr = hysteresis_sweep(3.0, 0.0, 300, 1.0, Branch::DP);
  ASSERT_EQ(tr.records.size(), 301u);
  for (std::size_t k = 0; k + 1 < tr.records.size(); ++k) {
    EXPECT_EQ(tr.records[k].theta_d, 0.0) << tr.records[k].beta;
    EXPECT_EQ(tr.records[k].branch, Branch::DP);
    EXPECT_FALSE(tr.records[k].jump);
  }
  EXPECT_EQ(tr.records.back().beta, 0.0);
  EXPECT_NEAR(tr.records.back().theta_d, pi / 2, 1e-3);
  EXPECT_EQ(tr.records.back().branch, Branch::SR);
  EXPECT_TRUE(tr.records.back().jump);
}

TEST(Limit, HysteresisAscendingJumpsAtSpinodal) {
  const auto tr = hysteresis_sweep(0.0, 3.5, 350, 1.0, Branch::SR);
  const double spin = critical_betas(1.0).beta_spinodal;
  int jumps = 0;
  for (const auto& r : tr.records) {
    if (r.jump) {
      ++jumps;
      EXPECT_NEAR(r.beta, spin, 0.01 + 1e-12);
    }
    if (r.beta < spin - 0.01) EXPECT_EQ(r.branch, Branch::SR) << r.beta;
    if (r.beta > spin + 0.01) EXPECT_EQ(r.branch, Branch::DP) << r.beta;
  }
  EXPECT_EQ(jumps, 1);
  for (std::size_t k = 1; k < tr.records.size(); ++k) EXPECT_GT(tr.records[k].beta, tr.records[k - 1].beta);
}

TEST(Limit, HysteresisConstantAndErrors) {
  const auto tr = hysteresis_sweep(1.0, 1.0, 2, 1.0, Branch::SR);
  for (const auto& r : tr.records) {
    EXPECT_EQ(r.theta_d, pi / 2);
    EXPECT_EQ(r.energy, tr.records.front().energy);
    EXPECT_EQ(r.branch, Branch::SR);
  }
  EXPECT_THROW(hysteresis_sweep(0, 1, 1, 1.0, Branch::SR), InvalidInput);
  EXPECT_THROW(hysteresis_sweep(0, 1, 10, 1.0, Branch::other), InvalidInput);
  EXPECT_THROW(parse_branch("ring"), InvalidInput);
  EXPECT_EQ(parse_branch("dp"), Branch::DP);
}

TEST(Limit, ConnectedBandSetsAreOptimal) {
  // ≤ 2 interfaces on a 1-degree grid never beat the best ≤ 1-interface set.
  for (double bs : {0.0, 0.5, 1.409, 2.0, 2.818, 4.0}) {
    double best1 = std::min(limit_energy_bandset({}, BandLabel::F, bs, 1.0),
                            limit_energy_bandset({}, BandLabel::Fc, bs, 1.0));
    for (int a = 1; a < 180; ++a)
      for (auto l : {BandLabel::F, BandLabel::Fc})
        best1 = std::min(best1, limit_energy_bandset({a * pi / 180}, l, bs, 1.0));
    double best2 = 1e300;
    for (int a = 1; a < 180; ++a)
      for (int b = a + 1; b < 180; ++b)
        for (auto l : {BandLabel::F, BandLabel::Fc})
          best2 = std::min(best2, limit_energy_bandset({a * pi / 180, b * pi / 180}, l, bs, 1.0));
    EXPECT_GE(best2, best1 - 1e-12) << bs;
  }
}

TEST(Limit, CsvOutputs) {
  const auto tr = hysteresis_sweep(0.0, 0.1, 2, 1.0, Branch::SR);
  const std::string csv = tr.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "beta,theta_d,energy,branch");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  const std::string land = landscape_csv(1.0, 1.0, 10);
  EXPECT_EQ(land.substr(0, land.find('\n')), "theta_d,energy");
  EXPECT_EQ(std::count(land.begin(), land.end(), '\n'), 12);
  EXPECT_EQ(land, landscape_csv(1.0, 1.0, 10));
}
