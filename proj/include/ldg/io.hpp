#pragma once

// Field checkpoints (CSV plus JSON sidecar) and the run configuration format.

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ldg/analysis.hpp"
#include "ldg/error.hpp"
#include "ldg/mesh.hpp"
#include "ldg/seed.hpp"
#include "ldg/solver.hpp"

namespace ldg {

// ---------------------------------------------------------------- checkpoints

inline nlohmann::json to_json(const MeshSpec& m) {
  return {{"r_max", m.r_max}, {"n_r", m.n_r}, {"n_theta", m.n_theta}, {"stretch", m.stretch}};
}

inline nlohmann::json to_json(const ModelParams& p) {
  return {{"a", p.a},       {"b", p.b},     {"c", p.c},   {"s_star", p.s_star},
          {"C", p.C},       {"beta", p.beta}, {"eta", p.eta}, {"xi", p.xi}};
}

inline nlohmann::json to_json(const ConvergenceReport& r) {
  return {{"converged", r.converged},
          {"status", r.status},
          {"iterations", r.iterations},
          {"energy_evaluations", r.energy_evaluations},
          {"initial_energy", r.initial_energy},
          {"final_energy", r.final_energy},
          {"grad_norm", r.grad_norm},
          {"last_step", r.last_step}};
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + p.string());
  out << text;
  if (!out) throw ConfigError("write failed: " + p.string());
}

/// Node values as CSV `i,j,r,theta,q1,...,q5`, 17 significant digits.
inline std::string checkpoint_csv(const Field2D& f) {
  std::ostringstream os;
  os << "i,j,r,theta,q1,q2,q3,q4,q5\n";
  for (int i = 0; i < f.mesh.n_r(); ++i)
    for (int j = 0; j < f.mesh.n_theta(); ++j) {
      os << i << ',' << j << ',' << detail::fmt17(f.mesh.r[i]) << ',' << detail::fmt17(f.mesh.theta[j]);
      for (int c = 0; c < 5; ++c) os << ',' << detail::fmt17(f.at(i, j)[c]);
      os << '\n';
    }
  return os.str();
}

inline nlohmann::json checkpoint_meta(const Field2D& f, const EnergyBreakdown* energy = nullptr,
                                      const ConvergenceReport* report = nullptr) {
  nlohmann::json j = {{"mesh", to_json(f.mesh.spec)}, {"params", to_json(f.params)}};
  j["energy"] = energy ? to_json(*energy) : nlohmann::json(nullptr);
  j["solver"] = report ? to_json(*report) : nlohmann::json(nullptr);
  return j;
}

/// Writes `<stem>.csv` and `<stem>.meta.json`.
inline void write_checkpoint(const std::filesystem::path& stem, const Field2D& f,
                             const EnergyBreakdown* energy = nullptr, const ConvergenceReport* report = nullptr) {
  write_text(stem.string() + ".csv", checkpoint_csv(f));
  write_text(stem.string() + ".meta.json", checkpoint_meta(f, energy, report).dump(2) + "\n");
}

namespace detail {

inline double parse_double(const std::string& s, const std::string& what) {
  if (s.empty()) throw ConfigError("empty number for " + what);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end != s.c_str() + s.size() || !std::isfinite(v))
    throw ConfigError("bad number '" + s + "' for " + what);
  return v;
}

inline int parse_int(const std::string& s, const std::string& what) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || errno != 0 || end != s.c_str() + s.size() || v < -2147483647L || v > 2147483647L)
    throw ConfigError("bad integer '" + s + "' for " + what);
  return int(v);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace detail

/// Rebuild a field from a checkpoint: the mesh from the sidecar's MeshSpec,
/// node values from the CSV, whose coordinates must match that mesh.
inline Field2D parse_checkpoint(const std::string& csv, const nlohmann::json& meta) {
  MeshSpec ms;
  ModelParams p;
  try {
    const auto& jm = meta.at("mesh");
    ms = {jm.at("r_max").get<double>(), jm.at("n_r").get<int>(), jm.at("n_theta").get<int>(),
          jm.at("stretch").get<double>()};
    const auto& jp = meta.at("params");
    p.a = jp.at("a").get<double>();
    p.b = jp.at("b").get<double>();
    p.c = jp.at("c").get<double>();
    p.s_star = jp.at("s_star").get<double>();
    p.C = jp.at("C").get<double>();
    p.beta = jp.at("beta").get<double>();
    p.eta = jp.at("eta").get<double>();
    p.xi = jp.at("xi").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("checkpoint metadata: ") + e.what());
  }
  Field2D f(build_mesh(ms), p);
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line) || detail::trim(line) != "i,j,r,theta,q1,q2,q3,q4,q5")
    throw ConfigError("checkpoint: missing or wrong CSV header");
  std::vector<char> filled(f.mesh.size(), 0);
  int row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split(detail::trim(line), ',');
    const std::string where = "checkpoint row " + std::to_string(row);
    if (cells.size() != 9) throw ConfigError(where + ": expected 9 columns");
    const int i = detail::parse_int(cells[0], where), j = detail::parse_int(cells[1], where);
    if (i < 0 || i >= ms.n_r || j < 0 || j >= ms.n_theta) throw ConfigError(where + ": node index out of range");
    const double r = detail::parse_double(cells[2], where), th = detail::parse_double(cells[3], where);
    if (std::abs(r - f.mesh.r[i]) > 1e-12 * r || std::abs(th - f.mesh.theta[j]) > 1e-12)
      throw ConfigError(where + ": coordinates do not match the mesh");
    QTensor q;
    for (int c = 0; c < 5; ++c) q[c] = detail::parse_double(cells[4 + c], where);
    f.at(i, j) = q;
    filled[f.mesh.index(i, j)] = 1;
  }
  for (char c : filled)
    if (!c) throw ConfigError("checkpoint: missing nodes");
  return f;
}

inline Field2D read_checkpoint(const std::filesystem::path& stem) {
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(read_text(stem.string() + ".meta.json"));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("checkpoint metadata: ") + e.what());
  }
  return parse_checkpoint(read_text(stem.string() + ".csv"), meta);
}

// ---------------------------------------------------------------- run config

enum class SeedKind { dipole, saturn, interface, file };

struct RunConfig {
  double a = 1.0, b = 1.0, c = 1.0;
  std::optional<double> beta, eta, xi;
  MeshSpec mesh;
  SeedKind seed = SeedKind::saturn;
  double theta_d = std::numbers::pi / 2;
  Orientation orientation = Orientation::up;
  std::optional<double> epsilon;  // core ramp width; defaults to ξ
  std::string seed_path;
  SolverOpts solver;
  std::string out_dir = "out";
  std::vector<std::string> formats{"csv", "json"};

  ModelParams params() const { return ModelParams::make(a, b, c, beta, eta, xi); }

  SeedSpec seed_spec() const {
    const ModelParams p = params();
    SeedSpec s;
    s.eta = p.eta;
    s.epsilon = epsilon.value_or(p.xi);
    s.orientation = orientation;
    s.theta_d = seed == SeedKind::dipole ? 0.0 : seed == SeedKind::saturn ? std::numbers::pi / 2 : theta_d;
    return s;
  }
};

/// `key = value` lines under `[section]` headers; `#` and `;` start comments.
/// Unknown sections or keys, duplicates, and malformed values are errors.
inline RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::string section;
  std::map<std::string, int> seen;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  bool theta_given = false;
  while (std::getline(is, raw)) {
    ++lineno;
    const std::string where = "config line " + std::to_string(lineno);
    std::string line = raw;
    if (const auto h = line.find_first_of("#;"); h != std::string::npos) line.erase(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": malformed section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      static const char* known[] = {"material", "regime", "mesh", "seed", "solver", "output"};
      bool ok = false;
      for (const char* k : known) ok = ok || section == k;
      if (!ok) throw ConfigError(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq)), val = detail::trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError(where + ": key outside any section");
    const std::string full = section + "." + key;
    if (seen[full]++) throw ConfigError(where + ": duplicate key " + full);
    auto num = [&] { return detail::parse_double(val, full); };
    auto integer = [&] { return detail::parse_int(val, full); };

    if (full == "material.a") cfg.a = num();
    else if (full == "material.b") cfg.b = num();
    else if (full == "material.c") cfg.c = num();
    else if (full == "regime.beta") cfg.beta = num();
    else if (full == "regime.eta") cfg.eta = num();
    else if (full == "regime.xi") cfg.xi = num();
    else if (full == "mesh.r_max") cfg.mesh.r_max = num();
    else if (full == "mesh.n_r") cfg.mesh.n_r = integer();
    else if (full == "mesh.n_theta") cfg.mesh.n_theta = integer();
    else if (full == "mesh.stretch") cfg.mesh.stretch = num();
    else if (full == "seed.type") {
      if (val == "dipole") cfg.seed = SeedKind::dipole;
      else if (val == "saturn") cfg.seed = SeedKind::saturn;
      else if (val == "interface") cfg.seed = SeedKind::interface;
      else if (val == "file") cfg.seed = SeedKind::file;
      else throw ConfigError(where + ": seed.type must be dipole, saturn, interface or file");
    } else if (full == "seed.theta_d") {
      cfg.theta_d = num();
      theta_given = true;
    } else if (full == "seed.orientation") {
      if (val == "up") cfg.orientation = Orientation::up;
      else if (val == "down") cfg.orientation = Orientation::down;
      else throw ConfigError(where + ": seed.orientation must be up or down");
    } else if (full == "seed.epsilon") cfg.epsilon = num();
    else if (full == "seed.path") cfg.seed_path = val;
    else if (full == "solver.tol") cfg.solver.tol = num();
    else if (full == "solver.max_iter") cfg.solver.max_iter = integer();
    else if (full == "solver.initial_step") cfg.solver.initial_step = num();
    else if (full == "solver.threads") cfg.solver.threads = integer();
    else if (full == "output.directory") cfg.out_dir = val;
    else if (full == "output.formats") {
      cfg.formats.clear();
      for (const auto& f : detail::split(val, ',')) {
        const std::string t = detail::trim(f);
        if (t != "csv" && t != "json") throw ConfigError(where + ": output.formats takes csv and/or json");
        cfg.formats.push_back(t);
      }
    } else {
      throw ConfigError(where + ": unknown key " + full);
    }
  }
  const int given = int(cfg.beta.has_value()) + int(cfg.eta.has_value()) + int(cfg.xi.has_value());
  if (given != 2) throw ConfigError("config: exactly two of regime.beta, regime.eta, regime.xi must be given");
  if (cfg.seed == SeedKind::interface && !theta_given) throw ConfigError("config: seed.type = interface needs seed.theta_d");
  if (cfg.seed == SeedKind::file && cfg.seed_path.empty()) throw ConfigError("config: seed.type = file needs seed.path");
  if (cfg.solver.max_iter < 0 || !(cfg.solver.tol > 0.0) || cfg.solver.threads < 1)
    throw ConfigError("config: solver settings out of range");
  try {
    (void)cfg.params();
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

inline RunConfig load_config(const std::filesystem::path& p) { return parse_config(read_text(p)); }

}  // namespace ldg
