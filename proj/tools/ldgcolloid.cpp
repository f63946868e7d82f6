// Command-line driver: limit-model landscapes and sweeps, radial profiles,
// seeds, minimization, analysis of checkpoints, and the invariant suites.
//
// Exit codes: 0 success, 2 usage/config/range error, 3 solver did not converge.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ldg/analysis.hpp"
#include "ldg/invariants.hpp"
#include "ldg/io.hpp"
#include "ldg/limit.hpp"
#include "ldg/profile.hpp"
#include "ldg/seed.hpp"
#include "ldg/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ldg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNotConverged = 3;

struct Common {
  std::string out = "out";
  bool out_given = false;
  std::uint64_t seed_rng = kDefaultRngSeed;
  int threads = 1;
  std::string format;  // empty: both csv and json
};

bool wants(const Common& c, const std::string& fmt) { return c.format.empty() || c.format == fmt; }

void write_json(const fs::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

std::string beta_tag(double b) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", b);
  return buf;
}

// Runs body(k) for k in [0, n) on up to `threads` workers.
void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  const int workers = std::clamp(threads, 1, std::max(1, n));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int k; (k = next++) < n;) body(k);
    });
}

json stationary_json(double beta, double s) {
  json a = json::array();
  for (const auto& sp : stationary_angles(beta, s))
    a.push_back({{"theta", sp.theta}, {"kind", to_string(sp.kind)}, {"energy", limit_energy(sp.theta, beta, s)}});
  return a;
}

// ------------------------------------------------------------------ limit

struct LimitArgs {
  std::vector<double> betas;
  double s_star = 1.0;
  std::string sweep;
  std::string branch = "dp";
  int points = 360;
};

int cmd_limit(const LimitArgs& a, const Common& c) {
  if (a.betas.empty() && a.sweep.empty()) throw CLI::ValidationError("limit", "give --beta or --sweep");
  const fs::path out = c.out;
  json summary;
  const auto cb = critical_betas(a.s_star);
  summary["s_star"] = a.s_star;
  summary["critical"] = {{"beta_equal", cb.beta_equal},
                         {"beta_spinodal", cb.beta_spinodal},
                         {"beta_s_star_equal", cb.beta_equal * a.s_star},
                         {"beta_s_star_spinodal", cb.beta_spinodal * a.s_star}};
  if (!a.betas.empty()) {
    for (double b : a.betas) detail::check_limit_args(b, a.s_star);
    std::vector<std::string> csv(a.betas.size());
    parallel_for(int(a.betas.size()), c.threads, [&](int k) { csv[k] = landscape_csv(a.betas[k], a.s_star, a.points); });
    json items = json::array();
    for (std::size_t k = 0; k < a.betas.size(); ++k) {
      const std::string name = "landscape_beta_" + beta_tag(a.betas[k]) + ".csv";
      if (wants(c, "csv")) write_text(out / name, csv[k]);
      items.push_back({{"beta", a.betas[k]}, {"landscape", name}, {"stationary", stationary_json(a.betas[k], a.s_star)}});
    }
    summary["betas"] = items;
  }
  if (!a.sweep.empty()) {
    const auto parts = detail::split(a.sweep, ':');
    if (parts.size() != 3) throw CLI::ValidationError("--sweep", "expected FROM:TO:STEPS");
    double from, to;
    int steps;
    try {
      from = detail::parse_double(parts[0], "--sweep FROM");
      to = detail::parse_double(parts[1], "--sweep TO");
      steps = detail::parse_int(parts[2], "--sweep STEPS");
    } catch (const ConfigError& e) {
      throw CLI::ValidationError("--sweep", e.what());
    }
    const Branch start = parse_branch(a.branch);
    const LimitTrace tr = hysteresis_sweep(from, to, steps, a.s_star, start);
    const std::string name = std::string("sweep_") + (start == Branch::DP ? "dp" : "sr") + ".csv";
    if (wants(c, "csv")) write_text(out / name, tr.to_csv());
    json jumps = json::array();
    for (const auto& r : tr.records)
      if (r.jump) jumps.push_back({{"beta", r.beta}, {"theta_d", r.theta_d}, {"branch", to_string(r.branch)}});
    summary["sweep"] = {{"from", from}, {"to", to}, {"steps", steps}, {"start", to_string(start)},
                        {"trace", name}, {"jumps", jumps}};
  }
  if (wants(c, "json")) write_json(out / "limit_summary.json", summary);
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- profile

struct ProfileArgs {
  double theta = std::numbers::pi / 2;
  double s_star = 1.0;
  int sign = +1;
  double t_max = 0.0;  // 0: default for s*
  int points = 10001;
  int samples = 401;
};

int cmd_profile(const ProfileArgs& a, const Common& c) {
  if (!(a.theta >= 0.0 && a.theta <= std::numbers::pi))
    throw CLI::ValidationError("--theta", "must lie in [0, pi]");
  ProfileSpec sp;
  sp.theta = a.theta;
  sp.s_star = a.s_star;
  sp.sign = a.sign;
  sp.t_max = a.t_max > 0.0 ? a.t_max : default_t_max(a.s_star);
  sp.n_points = a.points;
  const auto q = quadrature_I(sp);
  const double closed = closed_form_I(a.theta, a.sign, a.s_star);
  if (wants(c, "csv")) {
    std::ostringstream os;
    os << "t,n3,integrand\n";
    for (int k = 0; k < a.samples; ++k) {
      const double t = sp.t_max * k / (a.samples - 1);
      const auto ig = profile_integrand(t, sp);
      os << detail::fmt17(t) << ',' << detail::fmt17(optimal_n3(t, sp)) << ','
         << detail::fmt17(ig.elastic + ig.potential) << '\n';
    }
    write_text(fs::path(c.out) / "profile.csv", os.str());
  }
  const json j = {{"theta", a.theta},     {"s_star", a.s_star}, {"sign", a.sign},
                  {"closed_form", closed}, {"quadrature", q.value}, {"difference", q.value - closed},
                  {"warnings", q.warnings}};
  if (wants(c, "json")) write_json(fs::path(c.out) / "profile.json", j);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

// ----------------------------------------------------- seed / minimize / analyze

Field2D initial_field(const RunConfig& cfg) {
  if (cfg.seed == SeedKind::file) return read_checkpoint(cfg.seed_path);
  const ModelParams p = cfg.params();
  const Mesh mesh = build_mesh(cfg.mesh, p.eta);
  for (const auto& w : mesh.warnings) std::cerr << "warning: " << w << "\n";
  return build_seed(mesh, cfg.seed_spec(), p);
}

bool cfg_wants(const RunConfig& cfg, const Common& c, const std::string& fmt) {
  if (!c.format.empty()) return c.format == fmt;
  return std::find(cfg.formats.begin(), cfg.formats.end(), fmt) != cfg.formats.end();
}

json analysis_json(const Field2D& f, const DefectReport& rep) {
  json j = {{"defects", to_json(rep)}};
  if (rep.classification != Configuration::mixed)
    j["comparison"] = to_json(compare_to_limit(rep, f.params));
  else
    j["comparison"] = nullptr;
  return j;
}

void write_analysis(const fs::path& out, const Field2D& f, const DefectReport& rep, bool csv, bool js) {
  if (csv) write_text(out / "phi.csv", phi_csv(f));
  if (js) {
    write_json(out / "defects.json", to_json(rep));
    write_json(out / "comparison.json", analysis_json(f, rep)["comparison"]);
  }
}

int cmd_seed(const std::string& config, const Common& c) {
  const RunConfig cfg = load_config(config);
  const fs::path out = c.out_given ? fs::path(c.out) : fs::path(cfg.out_dir);
  const Field2D f = initial_field(cfg);
  const EnergyBreakdown e = assemble_energy(f, {.check_boundary = true, .boundary_tol = 1e-9, .threads = c.threads});
  write_checkpoint(out / "seed", f, &e);
  const DefectReport rep = detect_defects(f);
  write_analysis(out, f, rep, cfg_wants(cfg, c, "csv"), cfg_wants(cfg, c, "json"));
  std::cout << analysis_json(f, rep).dump(2) << "\n";
  return kExitOk;
}

int cmd_minimize(const std::string& config, const Common& c, bool threads_given) {
  RunConfig cfg = load_config(config);
  if (threads_given) cfg.solver.threads = c.threads;
  const fs::path out = c.out_given ? fs::path(c.out) : fs::path(cfg.out_dir);
  const Field2D f0 = initial_field(cfg);
  SolverOpts so = cfg.solver;
  so.record_trace = true;
  MinimizeResult res;
  try {
    res = minimize(f0, so);
  } catch (const SolverStall& st) {
    res.field = st.field;
    res.report = st.report;
    res.energy = assemble_energy(res.field);
    std::cerr << "solver stalled: " << st.what() << "\n";
  }
  write_checkpoint(out / "field", res.field, &res.energy, &res.report);
  const DefectReport rep = detect_defects(res.field);
  json energy = {{"energy", to_json(res.energy)}, {"solver", to_json(res.report)}, {"params", to_json(res.field.params)}};
  if (cfg_wants(cfg, c, "json")) write_json(out / "energy.json", energy);
  if (cfg_wants(cfg, c, "csv")) {
    std::ostringstream os;
    os << "iteration,energy\n";
    for (std::size_t k = 0; k < res.report.energy_trace.size(); ++k)
      os << k << ',' << detail::fmt17(res.report.energy_trace[k]) << '\n';
    write_text(out / "energy_trace.csv", os.str());
  }
  write_analysis(out, res.field, rep, cfg_wants(cfg, c, "csv"), cfg_wants(cfg, c, "json"));
  json summary = analysis_json(res.field, rep);
  summary["solver"] = to_json(res.report);
  std::cout << summary.dump(2) << "\n";
  return res.report.converged ? kExitOk : kExitNotConverged;
}

int cmd_analyze(const std::string& stem, double threshold, const Common& c) {
  const Field2D f = read_checkpoint(stem);
  const DefectReport rep = detect_defects(f, threshold);
  write_analysis(c.out, f, rep, wants(c, "csv"), wants(c, "json"));
  std::cout << analysis_json(f, rep).dump(2) << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ check

int cmd_check(const std::vector<std::string>& only, bool inject, const Common& c) {
  CheckOptions o;
  o.rng_seed = c.seed_rng;
  o.inject_fault = inject;
  o.threads = c.threads;
  for (const auto& item : only)
    for (const auto& s : detail::split(item, ',')) o.only.insert(detail::trim(s));
  const auto results = run_checks(o);
  std::cout << format_table(results);
  if (c.out_given && wants(c, "json")) write_json(fs::path(c.out) / "check.json", to_json(results));
  return all_passed(results) ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Colloid-in-nematic toolkit: limit model, radial profiles, field minimization and analysis"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "output directory")->each([&](const std::string&) { common.out_given = true; });
    sub->add_option("--seed-rng", common.seed_rng, "seed for sampling-based checks");
    sub->add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", common.format, "write only this format")->check(CLI::IsMember({"csv", "json"}));
  };

  LimitArgs la;
  auto* limit = app.add_subcommand("limit", "limit energy landscapes, stationary points and hysteresis sweeps");
  limit->add_option("--beta", la.betas, "comma-separated beta values")->delimiter(',');
  limit->add_option("--s-star", la.s_star, "preferred order s*")->check(CLI::PositiveNumber);
  limit->add_option("--sweep", la.sweep, "hysteresis sweep FROM:TO:STEPS");
  limit->add_option("--branch", la.branch, "start branch of the sweep")->check(CLI::IsMember({"dp", "sr", "DP", "SR"}));
  limit->add_option("--points", la.points, "landscape intervals")->check(CLI::PositiveNumber);
  add_common(limit);

  ProfileArgs pa;
  auto* prof = app.add_subcommand("profile", "optimal radial profile and its energy");
  prof->add_option("--theta", pa.theta, "boundary angle in [0, pi]")->required();
  prof->add_option("--s-star", pa.s_star, "preferred order s*")->check(CLI::PositiveNumber);
  prof->add_option("--sign", pa.sign, "far-field n3 (+1 or -1)")->check(CLI::IsMember({-1, 1}));
  prof->add_option("--t-max", pa.t_max, "truncation of the half-line");
  prof->add_option("--points", pa.points, "quadrature nodes")->check(CLI::Range(3, 100000000));
  prof->add_option("--samples", pa.samples, "rows in the profile CSV")->check(CLI::Range(2, 10000000));
  add_common(prof);

  std::string seed_cfg, min_cfg, stem;
  auto* seed = app.add_subcommand("seed", "build the initial field of a run config and analyse it");
  seed->add_option("config", seed_cfg, "run config file")->required();
  add_common(seed);

  auto* mini = app.add_subcommand("minimize", "minimize the energy from a run config");
  mini->add_option("config", min_cfg, "run config file")->required();
  add_common(mini);

  double threshold = kDefaultPhiThreshold;
  auto* ana = app.add_subcommand("analyze", "detect defects in a checkpoint");
  ana->add_option("checkpoint", stem, "checkpoint stem (without .csv / .meta.json)")->required();
  ana->add_option("--threshold", threshold, "biaxiality threshold")->check(CLI::Range(0.0, 1.0));
  add_common(ana);

  std::vector<std::string> only;
  bool inject = false;
  auto* check = app.add_subcommand("check", "run the invariant suites");
  check->add_option("--only", only, "suites to run: " + [] {
    std::string s;
    for (const auto& n : suite_names()) s += (s.empty() ? "" : ",") + n;
    return s;
  }());
  check->add_flag("--inject-fault", inject, "perturb one fixture per suite (every suite must fail)");
  add_common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*limit) return cmd_limit(la, common);
    if (*prof) return cmd_profile(pa, common);
    if (*seed) return cmd_seed(seed_cfg, common);
    if (*mini) return cmd_minimize(min_cfg, common, mini->count("--threads") > 0);
    if (*ana) return cmd_analyze(stem, threshold, common);
    if (*check) return cmd_check(only, inject, common);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BoundaryViolation& e) {
    std::cerr << "invalid field: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
