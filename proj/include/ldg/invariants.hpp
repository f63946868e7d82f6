#pragma once

// Property suites for every module, runnable from the command line. Each
// check measures a residual and compares it with a bound; sampling checks draw
// from a generator seeded per suite, so a subset run reproduces the same
// numbers as a full run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ldg/analysis.hpp"
#include "ldg/energy.hpp"
#include "ldg/io.hpp"
#include "ldg/limit.hpp"
#include "ldg/potentials.hpp"
#include "ldg/profile.hpp"
#include "ldg/qtensor.hpp"
#include "ldg/seed.hpp"
#include "ldg/solver.hpp"

namespace ldg {

inline constexpr std::uint64_t kDefaultRngSeed = 0xC0FFEE;

struct CheckOptions {
  std::uint64_t rng_seed = kDefaultRngSeed;
  std::set<std::string> only;  // empty: all suites
  bool inject_fault = false;   // perturb one fixture per suite; every selected suite must then fail
  int threads = 1;
};

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double value = 0.0;  // measured residual (or count)
  double bound = 0.0;
  double seconds = 0.0;
  std::string note;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : g_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g_); }
  double normal() { return nd_(g_); }
  QTensor tensor(double scale = 1.0) {
    return QTensor({scale * normal(), scale * normal(), scale * normal(), scale * normal(), scale * normal()});
  }
  Vec3 unit() {
    Vec3 v{normal(), normal(), normal()};
    return scaled(v, 1.0 / norm(v));
  }
  Mat3 rotation() {
    double w = normal(), x = normal(), y = normal(), z = normal();
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    w /= n, x /= n, y /= n, z /= n;
    return {{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
             {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
             {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
  }

 private:
  std::mt19937_64 g_;
  std::normal_distribution<double> nd_{0.0, 1.0};
};

namespace checks {

// Context handed to each suite: its sampler, the fault amplitude (0 unless
// injecting) and a sink for results.
struct Ctx {
  Sampler rng;
  double fault = 0.0;
  int threads = 1;
  std::string suite;
  std::vector<CheckResult>* out = nullptr;

  // Records `value ≤ bound`; `run` computes the value.
  void le(const std::string& name, double bound, const std::function<double()>& run, std::string note = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r{suite, name, false, 0.0, bound, 0.0, std::move(note)};
    try {
      r.value = run();
      r.pass = r.value <= bound;
    } catch (const std::exception& e) {
      r.value = std::nan("");
      r.note = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out->push_back(std::move(r));
  }
};

inline const double kPi = std::numbers::pi;

inline QTensor rotated(const QTensor& q, const Mat3& r) {
  return QTensor::from_matrix(mat_mul(transposed(r), mat_mul(q.matrix(), r)));
}

inline ModelParams unit_params(double eta = 0.1, double xi = 0.05) {
  return ModelParams::make(1, 1, 1, std::nullopt, eta, xi);
}

inline void qtensor(Ctx& c) {
  c.le("spectral reconstruction, relative", 1e-10, [&] {
    double worst = 0.0;
    for (int k = 0; k < 20000; ++k) {
      const QTensor q = c.rng.tensor(std::pow(10.0, c.rng.uniform(-3, 2)));
      QTensor back = reconstruct(spectral(q));
      back[0] += c.fault * q.norm();
      worst = std::max(worst, (back - q).norm() / std::max(1.0, q.norm()));
    }
    return worst;
  });
  c.le("biaxiality is 1 on the vacuum manifold", 1e-12, [&] {
    double worst = 0.0;
    for (int k = 0; k < 5000; ++k) worst = std::max(worst, std::abs(biaxiality_phi(from_director(c.rng.unit(), 1.5), 1.5) - 1.0));
    return worst;
  });
  c.le("biaxiality is 0 on the cone", 1e-12, [&] {
    double worst = 0.0;
    for (int k = 0; k < 5000; ++k) {
      // λ₁ = λ₂ = t, λ₃ = −2t, rotated.
      const double t = c.rng.uniform(0.1, 2.0);
      const QTensor q = rotated(QTensor::from_matrix({{{t, 0, 0}, {0, t, 0}, {0, 0, -2 * t}}}), c.rng.rotation());
      worst = std::max(worst, biaxiality_phi(q, 1.5));
    }
    return worst;
  });
  c.le("retraction: bound, idempotence, non-expansion", 1e-14, [&] {
    const double s = 1.5, cap = kSqrtTwoThirds * s;
    double worst = 0.0;
    for (int k = 0; k < 20000; ++k) {
      const QTensor a = c.rng.tensor(), b = c.rng.tensor();
      const QTensor ra = retract_Linf(a, s), rb = retract_Linf(b, s);
      worst = std::max({worst, ra.norm() - cap, (retract_Linf(ra, s) - ra).norm(),
                        (ra - rb).norm() - (a - b).norm()});
    }
    return worst;
  });
  c.le("azimuthal density matches finite rotation, relative", 1e-6, [&] {
    const double h = 1e-4;
    double worst = 0.0;
    for (int k = 0; k < 2000; ++k) {
      const QTensor q = c.rng.tensor();
      const double fd = (rotate(q, h) - q).norm_sq() / (h * h);
      worst = std::max(worst, std::abs(fd - azimuthal_grad_sq(q)) / std::max(1.0, q.norm_sq()));
    }
    return worst;
  });
}

inline void potentials(Ctx& c) {
  const ModelParams p = unit_params();
  c.le("f >= 0 on 1e5 samples (most negative value)", 0.0, [&] {
    double lo = 0.0;
    for (int k = 0; k < 100000; ++k) lo = std::min(lo, bulk_f(c.rng.tensor(std::pow(10.0, c.rng.uniform(-2, 1))), p));
    return std::max(0.0, -lo);
  });
  c.le("f frame invariance, relative", 1e-12, [&] {
    double worst = 0.0;
    for (int k = 0; k < 20000; ++k) {
      const QTensor q = c.rng.tensor();
      QTensor rq = rotated(q, c.rng.rotation());
      rq[2] += c.fault;
      worst = std::max(worst, std::abs(bulk_f(rq, p) - bulk_f(q, p)) / std::max(1.0, q.norm_sq() * q.norm_sq()));
    }
    return worst;
  });
  c.le("f = 0 on the vacuum manifold", 1e-12, [&] {
    double worst = 0.0;
    for (int k = 0; k < 5000; ++k) worst = std::max(worst, std::abs(bulk_f(from_director(c.rng.unit(), p.s_star), p)));
    return worst;
  });
  c.le("g invariant under power-of-two scaling (mismatches)", 0.0, [&] {
    int bad = 0;
    for (int k = 0; k < 5000; ++k) {
      const QTensor q = c.rng.tensor();
      for (double t : {0.25, 2.0, 1024.0}) bad += field_g(q * t) != field_g(q);
    }
    return double(bad);
  });
  c.le("f and g gradients vs finite differences, relative", 1e-6, [&] {
    double worst = 0.0;
    const double h = 1e-5;
    for (int k = 0; k < 1000; ++k) {
      const QTensor q = c.rng.tensor();
      const QTensor gf = bulk_grad(q, p), gg = field_grad(q, p.s_star);
      for (int d = 0; d < 5; ++d) {
        QTensor e;
        e[d] = h;
        const double ff = (bulk_f(q + e, p) - bulk_f(q - e, p)) / (2 * h);
        const double fg = (field_g(q + e) - field_g(q - e)) / (2 * h);
        worst = std::max(worst, std::abs(ff - gf[d]) / std::max(1.0, std::abs(gf[d])));
        worst = std::max(worst, std::abs(fg - gg[d]) / std::max(1.0, std::abs(gg[d])));
      }
    }
    return worst;
  });
}

inline ProfileSpec profile_at(double theta, double s, int sign = +1) {
  ProfileSpec sp;
  sp.theta = theta;
  sp.s_star = s;
  sp.sign = sign;
  sp.t_max = default_t_max(s);
  return sp;
}

inline void profile(Ctx& c) {
  c.le("equipartition residual", 1e-10, [&] {
    double worst = 0.0;
    for (double th : {0.05, 0.7, kPi / 2, 2.2, 3.1})
      for (int sg : {+1, -1})
        for (int i = 0; i <= 4000; ++i) {
          const auto ig = profile_integrand(i * 0.005, profile_at(th, 1.5, sg));
          worst = std::max(worst, std::abs(ig.elastic * (1.0 + c.fault) - ig.potential));
        }
    return worst;
  });
  c.le("quadrature vs closed form over 50 angles", 1e-6, [&] {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double th = kPi * k / 49;
      for (int sg : {+1, -1})
        worst = std::max(worst, std::abs(quadrature_I(profile_at(th, 1.5, sg)).value - closed_form_I(th, sg, 1.5)));
    }
    return worst;
  });
  c.le("exponential tail bound (excess over bound)", 0.0, [&] {
    double worst = -1.0;
    const double s = 1.5;
    for (double th : {0.3, kPi / 2, 2.8}) {
      const double cc = std::pow(std::cos(0.5 * th), 2);
      for (int i = 0; i <= 2000; ++i) {
        const double t = i * 0.01;
        const double excess = std::abs(1.0 - optimal_n3(t, profile_at(th, s))) -
                              2.0 / cc * std::exp(-kFourthRoot24 * t / s);
        worst = std::max(worst, excess);
      }
    }
    return std::max(worst, 0.0);
  }, "bound 2/A exp(-K t/s*), A = cos^2(theta/2)");
  c.le("subadditivity on 20 random splits (most negative slack)", 1e-3, [&] {
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double a = c.rng.uniform(-1, 1), b = c.rng.uniform(-1, 1), e = c.rng.uniform(-1, 1);
      const double r2 = c.rng.uniform(0.3, 2.0), r3 = r2 + c.rng.uniform(0.3, 2.0);
      const double h = 0.01;
      const double left = minimize_I(0.0, r2, a, b, 1.0, int(r2 / h) + 1).value;
      const double right = minimize_I(r2, r3, b, e, 1.0, int((r3 - r2) / h) + 1).value;
      const double whole = minimize_I(0.0, r3, a, e, 1.0, int(r3 / h) + 1).value;
      worst = std::max(worst, whole - left - right);
    }
    return worst;
  });
}

inline Field2D random_admissible_field(Sampler& rng, const MeshSpec& ms, const ModelParams& p) {
  Field2D f(build_mesh(ms), p);
  for (auto& v : f.values) v = retract_Linf(from_director(rng.unit(), p.s_star) + rng.tensor(0.2), p.s_star);
  f.apply_boundary();
  return f;
}

inline void energy(Ctx& c) {
  const ModelParams p = unit_params(0.3, 0.2);
  c.le("discrete gradient vs finite differences, relative", 1e-6, [&] {
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const Field2D f = random_admissible_field(c.rng, {3.0, 10, 9, 1.05}, p);
      auto g = assemble_gradient(f);
      g[f.mesh.index(1, 3)][0] += c.fault * 1e3;
      std::vector<QTensor> d(f.mesh.size());
      for (int i = 1; i + 1 < f.mesh.n_r(); ++i)
        for (int j = 0; j < f.mesh.n_theta(); ++j) {
          const QTensor q = c.rng.tensor();
          d[f.mesh.index(i, j)] = f.mesh.is_axis(j) ? axis_part(q) : q;
        }
      double analytic = 0.0;
      for (std::size_t n = 0; n < d.size(); ++n) analytic += inner(g[n], d[n]);
      const double h = 1e-6;
      Field2D a = f, b = f;
      for (std::size_t n = 0; n < d.size(); ++n) {
        a.values[n] += d[n] * h;
        b.values[n] -= d[n] * h;
      }
      const double fd = (assemble_total(a) - assemble_total(b)) / (2 * h);
      worst = std::max(worst, std::abs(fd - analytic) / std::abs(analytic));
    }
    return worst;
  });
  c.le("parts non-negative and summing to the total, relative", 1e-10, [&] {
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const auto e = assemble_energy(random_admissible_field(c.rng, {3.0, 12, 10, 1.02}, p));
      const double lo = std::min({e.elastic_meridional, e.elastic_azimuthal, e.bulk, e.field});
      if (lo < 0.0) return std::abs(lo);
      worst = std::max(worst, std::abs(e.total - (e.elastic_meridional + e.elastic_azimuthal + e.bulk + e.field)) / e.total);
    }
    return worst;
  });
  // A short solver run on a saturn seed: energy trace and the L∞ bound.
  const ModelParams ps = ModelParams::make(1, 1, 1, 1.0 / 1.5, std::nullopt, 0.05);
  SeedSpec sp;
  sp.eta = ps.eta;
  sp.epsilon = ps.xi;
  const Field2D f0 = build_seed(build_mesh({4.0, 40, 33, 1.04}), sp, ps);
  SolverOpts so;
  so.max_iter = 300;
  so.tol = 0.0;
  so.threads = c.threads;
  MinimizeResult res;
  try {
    res = minimize(f0, so);
  } catch (const SolverStall& st) {
    res.field = st.field;
    res.report = st.report;
  }
  c.le("solver energy trace is non-increasing (largest rise)", 0.0, [&] {
    double rise = 0.0;
    const auto& tr = res.report.energy_trace;
    for (std::size_t k = 1; k < tr.size(); ++k) rise = std::max(rise, tr[k] - tr[k - 1]);
    return rise;
  });
  c.le("solver keeps max |Q| within the bound (excess)", 1e-12, [&] {
    double worst = 0.0;
    for (const auto& q : res.field.values) worst = std::max(worst, q.norm() - kSqrtTwoThirds * ps.s_star);
    return worst;
  });
  c.le("reflected seeds have equal discrete energy, relative", 1e-10, [&] {
    const Mesh m = build_mesh({4.0, 40, 33, 1.04});
    SeedSpec a = sp, b = sp;
    a.theta_d = m.theta[12];
    b.theta_d = kPi - m.theta[12];
    const double ea = assemble_total(build_seed(m, a, ps)), eb = assemble_total(build_seed(m, b, ps));
    return std::abs(ea - eb) / ea;
  });
}

inline void seed(Ctx& c) {
  const double s = 1.5;
  const ModelParams p = unit_params(0.1, 0.05);
  const Mesh m = build_mesh({6.0, 96, 72, 1.02});
  c.le("boundary exactness over five interface angles", 1e-12, [&] {
    double worst = 0.0;
    for (double td : {0.0, 0.5, kPi / 2, 2.3, kPi}) {
      SeedSpec sp;
      sp.theta_d = td;
      sp.eta = 0.1;
      Field2D f = build_seed(m, sp, p);
      f.at(0, 5)[1] += c.fault;
      worst = std::max(worst, boundary_violation(f));
    }
    return worst;
  });
  c.le("uniaxial away from the core ramp", 1e-12, [&] {
    SeedSpec sp;
    sp.eta = 0.15;
    SeedLayout lay;
    const Mesh mm = build_mesh({4.0, 160, 192, 1.0});
    const Field2D f = build_seed(mm, sp, p, &lay);
    double worst = 0.0;
    for (int i = 0; i < mm.n_r(); ++i)
      for (int j = 0; j < mm.n_theta(); ++j)
        if (std::hypot(mm.r[i] - lay.r_c, mm.theta[j] - lay.theta_c) >= 2 * sp.epsilon * sp.eta)
          worst = std::max(worst, std::abs(biaxiality_phi(f.at(i, j), s) - 1.0));
    return worst;
  });
  c.le("core energy law on a 1024x1024 grid, relative", 0.01, [&] {
    double worst = 0.0;
    for (double eps : {1e-2, 1e-3}) {
      auto core = [&](double r, double a) { return seed_core(r, a, eps, s); };
      const double law = 0.5 * kPi * s * s * (std::abs(std::log(eps)) - std::log(2.0));
      const double e = planar_dirichlet_energy(core, geometric_radii(2 * eps, 1.0, 1024), 1024);
      worst = std::max(worst, std::abs(e - law) / law);
    }
    return worst;
  });
  c.le("wedge meets the regions at its edges", 1e-12, [&] {
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      SeedSpec sp;
      sp.eta = 0.1;
      sp.theta_d = c.rng.uniform(0.5, kPi - 0.5);
      const double r = c.rng.uniform(1.0, 4.0);
      worst = std::max(worst, (seed_wedge(r, sp.theta_d - 0.2, sp, s) - seed_region_F(r, sp.theta_d - 0.2, sp, s)).norm());
      worst = std::max(worst, (seed_wedge(r, sp.theta_d + 0.2, sp, s) - seed_region_Fc(r, sp.theta_d + 0.2, sp, s)).norm());
    }
    return worst;
  });
}

inline void limit(Ctx& c) {
  c.le("slope vs central differences, relative", 1e-8, [&] {
    double worst = 0.0;
    const double h = 1e-6;
    for (double beta : {0.0, 0.5, 1.409, 2.0, 3.0})
      for (int k = 1; k < 60; ++k) {
        const double th = kPi * k / 60;
        const double an = limit_energy_slope(th, beta, 1.0) + c.fault;
        const double fd = (limit_energy(th + h, beta, 1.0) - limit_energy(th - h, beta, 1.0)) / (2 * h);
        worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
      }
    return worst;
  });
  c.le("crossing by bisection vs formula", 1e-10, [&] {
    auto gap = [](double b) { return limit_energy(kPi / 2, b, 1.0) - limit_energy(0.0, b, 1.0); };
    double lo = 0.0, hi = 3.0;
    for (int k = 0; k < 200; ++k) {
      const double mid = 0.5 * (lo + hi);
      (gap(mid) < 0 ? lo : hi) = mid;
    }
    return std::abs(0.5 * (lo + hi) - critical_betas(1.0).beta_equal);
  });
  c.le("alignment coefficients equal the profile value", 1e-12, [&] {
    double worst = 0.0;
    for (int k = 0; k <= 100; ++k) {
      const double th = kPi * k / 100;
      worst = std::max(worst, std::abs(kFourthRoot24 * 1.5 * (1 - std::cos(th)) - closed_form_I(th, +1, 1.5)));
      worst = std::max(worst, std::abs(kFourthRoot24 * 1.5 * (1 + std::cos(th)) - closed_form_I(th, -1, 1.5)));
    }
    return worst;
  });
  c.le("two-interface band sets never beat one interface (1-degree grid)", 0.0, [&] {
    double worst = -1e300;
    for (double bs : {0.0, 0.5, 1.409, 2.0, 2.818, 4.0}) {
      double best1 = std::min(limit_energy(0.0, bs, 1.0), limit_energy(kPi, bs, 1.0));
      double best2 = 1e300;
      for (int i = 1; i < 180; ++i) {
        const double ti = kPi * i / 180;
        for (BandLabel l : {BandLabel::F, BandLabel::Fc}) best1 = std::min(best1, limit_energy_bandset({ti}, l, bs, 1.0));
        for (int j = i + 1; j < 180; ++j)
          for (BandLabel l : {BandLabel::F, BandLabel::Fc})
            best2 = std::min(best2, limit_energy_bandset({ti, kPi * j / 180}, l, bs, 1.0));
      }
      worst = std::max(worst, best1 - best2);
    }
    return std::max(worst, 0.0);
  });
}

inline void analysis(Ctx& c) {
  const ModelParams p = unit_params(0.1, 0.05);
  const Mesh m = build_mesh({5.0, 256, 192, 1.0});
  c.le("seed fidelity: ring angle within 2 cells", 2.0, [&] {
    double worst = 0.0;
    for (double td : {0.3, kPi / 2, 2.5}) {
      SeedSpec sp;
      sp.theta_d = td;
      sp.eta = 0.1;
      const auto rep = detect_defects(build_seed(m, sp, p));
      if (rep.defects.size() != 1) return 1e9;
      worst = std::max(worst, std::abs(rep.defects.front().theta - td) / m.cell_dtheta(0));
    }
    return worst;
  }, "in units of the angular spacing");
  c.le("threshold robustness: cluster count spread over [0.2, 0.4]", 0.0, [&] {
    SeedSpec sp;
    sp.eta = 0.1;
    const Field2D f = build_seed(m, sp, p);
    std::size_t lo = 1000, hi = 0;
    for (double thr : {0.2, 0.25, 0.3, 0.35, 0.4}) {
      const auto n = detect_defects(f, thr).defects.size();
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
    return double(hi - lo);
  });
  c.le("identical fields give identical reports (differences)", 0.0, [&] {
    SeedSpec sp;
    sp.eta = 0.1;
    sp.theta_d = 1.2;
    const Field2D f = build_seed(m, sp, p);
    Field2D g = f;
    SeedLayout lay;
    build_seed(m, sp, p, &lay);
    g.at(lay.i_c, lay.j_c + 3) = g.at(lay.i_c, lay.j_c + 3) * (1.0 - c.fault * 1e3);
    return double(to_json(detect_defects(f)).dump() != to_json(detect_defects(g)).dump());
  });
}

inline void io(Ctx& c) {
  c.le("checkpoint write-read-write is byte-identical (differences)", 0.0, [&] {
    const ModelParams p = unit_params(0.1, 0.05);
    SeedSpec sp;
    sp.theta_d = 1.0;
    sp.eta = 0.1;
    Field2D f = build_seed(build_mesh({5.0, 30, 25, 1.03}), sp, p);
    for (int i = 1; i + 1 < f.mesh.n_r(); ++i)
      for (int j = 1; j + 1 < f.mesh.n_theta(); ++j) f.at(i, j) = retract_Linf(f.at(i, j) + c.rng.tensor(1e-3), p.s_star);
    const auto e = assemble_energy(f);
    const std::string csv = checkpoint_csv(f);
    const auto meta = checkpoint_meta(f, &e);
    Field2D g = parse_checkpoint(csv, nlohmann::json::parse(meta.dump(2)));
    g.at(3, 3)[0] += c.fault;
    return double(checkpoint_csv(g) != csv) + double(checkpoint_meta(g, &e).dump(2) != meta.dump(2));
  });
  c.le("derived regime satisfies eta |ln xi| = beta", 1e-9, [&] {
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double beta = c.rng.uniform(0.05, 3.0), xi = std::exp(c.rng.uniform(-8.0, -0.5));
      const std::string text = "[regime]\nbeta = " + detail::fmt17(beta) + "\nxi = " + detail::fmt17(xi) + "\n";
      const ModelParams p = parse_config(text).params();
      worst = std::max(worst, std::abs(p.eta * std::abs(std::log(p.xi)) - p.beta));
    }
    return worst;
  });
  c.le("malformed configs rejected (accepted count)", 0.0, [&] {
    int accepted = 0;
    for (const char* bad : {"[regime]\nbeta = 1\n", "[regime]\nbeta = 1\neta = 0.1\nxi = 0.01\n",
                            "[regime]\nbeta = 1\nxi = 0.01\nwhat = 3\n", "[nowhere]\n",
                            "[regime]\nbeta = 1\nbeta = 2\nxi = 0.1\n", "[mesh]\nn_r = ten\n"}) {
      try {
        parse_config(bad).params();
        ++accepted;
      } catch (const ConfigError&) {
      }
    }
    return double(accepted);
  });
}

struct Suite {
  const char* name;
  void (*run)(Ctx&);
};

inline const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{{"qtensor", qtensor}, {"potentials", potentials}, {"profile", profile},
                                      {"energy", energy},   {"seed", seed},             {"limit", limit},
                                      {"analysis", analysis}, {"io", io}};
  return all;
}

}  // namespace checks

inline std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : checks::suites()) out.emplace_back(s.name);
  return out;
}

/// Runs the selected suites; throws InvalidInput for an unknown suite name.
inline std::vector<CheckResult> run_checks(const CheckOptions& opt) {
  const auto names = suite_names();
  for (const auto& n : opt.only)
    if (std::find(names.begin(), names.end(), n) == names.end()) throw InvalidInput("unknown check suite '" + n + "'");
  std::vector<CheckResult> out;
  for (const auto& s : checks::suites()) {
    if (!opt.only.empty() && !opt.only.count(s.name)) continue;
    std::uint64_t h = opt.rng_seed;
    for (const char* p = s.name; *p; ++p) h = (h ^ std::uint64_t(*p)) * 0x100000001b3ULL;
    checks::Ctx ctx{Sampler(h), opt.inject_fault ? 1e-3 : 0.0, opt.threads, s.name, &out};
    s.run(ctx);
  }
  return out;
}

inline bool all_passed(const std::vector<CheckResult>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const CheckResult& r) { return r.pass; });
}

inline std::string format_table(const std::vector<CheckResult>& rs) {
  std::ostringstream os;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-4s  %-10s  %-66s  %12s  %10s  %8s\n", "", "suite", "check", "value", "bound", "seconds");
  os << buf;
  int passed = 0;
  for (const auto& r : rs) {
    passed += r.pass;
    std::snprintf(buf, sizeof buf, "%-4s  %-10s  %-66s  %12.4g  %10.3g  %8.3f", r.pass ? "PASS" : "FAIL", r.suite.c_str(),
                  r.name.c_str(), r.value, r.bound, r.seconds);
    os << buf;
    if (!r.note.empty()) os << "  (" << r.note << ")";
    os << '\n';
  }
  os << passed << "/" << rs.size() << " checks passed\n";
  return os.str();
}

inline nlohmann::json to_json(const std::vector<CheckResult>& rs) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : rs)
    a.push_back({{"suite", r.suite},
                 {"check", r.name},
                 {"pass", r.pass},
                 {"value", std::isfinite(r.value) ? nlohmann::json(r.value) : nlohmann::json(nullptr)},
                 {"bound", r.bound},
                 {"note", r.note}});
  return a;
}

}  // namespace ldg
