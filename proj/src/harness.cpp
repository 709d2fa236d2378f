#include "ipaal/harness.hpp"

#include "ipaal/log.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

namespace ipaal {

using nlohmann::json;

double c1_formula(double L, double op_norm_bound) {
  return 1e-5 * L / (op_norm_bound * op_norm_bound + 1.0);
}

static VariantMode variant_mode_from_string(const std::string& s) {
  if (s == "theoretical") return VariantMode::Theoretical;
  if (s == "constant") return VariantMode::Constant;
  if (s == "both") return VariantMode::Both;
  throw ConfigError("field 'variant': expected theoretical|constant|both, got '" + s + "'");
}

template <typename T>
static T field(const json& j, const char* name, T fallback) {
  if (!j.contains(name)) return fallback;
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + name + "': " + e.what());
  }
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  static const char* known[] = {"instance", "theta",          "variant",    "rho",
                                "eta",      "mode",           "c1",         "penalty_factor",
                                "warm_start", "start_seed",   "outer_cap",  "cycle_cap",
                                "jobs"};
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown config field '" + key + "'");
  }

  RunConfig cfg;
  if (j.contains("instance")) {
    const json& ji = j.at("instance");
    if (ji.contains("load")) {
      cfg.instance = field<std::string>(ji, "load", "");
    } else if (ji.contains("generate")) {
      const json& jg = ji.at("generate");
      GenerateSpec g;
      g.seed = field<std::uint64_t>(jg, "seed", g.seed);
      g.l = field<int>(jg, "l", g.l);
      g.n = field<int>(jg, "n", g.n);
      g.density = field<double>(jg, "density", g.density);
      g.L = field<double>(jg, "L", g.L);
      g.m = field<double>(jg, "m", g.m);
      cfg.instance = g;
    } else {
      throw ConfigError("field 'instance': expected an object with 'generate' or 'load'");
    }
  }
  if (j.contains("theta")) {
    cfg.thetas.clear();
    for (const auto& t : j.at("theta")) cfg.thetas.push_back(t.get<double>());
  }
  if (j.contains("variant")) cfg.variants = variant_mode_from_string(j.at("variant"));
  cfg.rho_hat = field<double>(j, "rho", cfg.rho_hat);
  cfg.eta_hat = field<double>(j, "eta", cfg.eta_hat);
  if (j.contains("mode"))
    cfg.mode = termination_mode_from_string(j.at("mode").get<std::string>());
  if (j.contains("c1")) {
    const json& jc = j.at("c1");
    if (jc.is_string()) {
      if (jc.get<std::string>() != "formula")
        throw ConfigError("field 'c1': expected a number or the string \"formula\"");
    } else {
      cfg.c1 = jc.get<double>();
    }
  }
  cfg.penalty_factor = field<double>(j, "penalty_factor", cfg.penalty_factor);
  cfg.warm_start = field<bool>(j, "warm_start", cfg.warm_start);
  if (j.contains("start_seed")) cfg.start_seed = j.at("start_seed").get<std::uint64_t>();
  cfg.outer_cap = field<int>(j, "outer_cap", cfg.outer_cap);
  cfg.cycle_cap = field<int>(j, "cycle_cap", cfg.cycle_cap);
  cfg.jobs = field<int>(j, "jobs", cfg.jobs);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

static void validate(const RunConfig& cfg) {
  if (cfg.thetas.empty()) throw ConfigError("field 'theta': at least one value required");
  for (double t : cfg.thetas) {
    if (t < 0.0 || t > 1.0) throw ConfigError("field 'theta': values must lie in [0, 1]");
    if (t == 0.0 && cfg.variants == VariantMode::Theoretical)
      throw ConfigError("field 'theta': 0 is undefined for the theoretical variant");
  }
  if (!(cfg.rho_hat > 0.0)) throw ConfigError("field 'rho': must be positive");
  if (!(cfg.eta_hat > 0.0)) throw ConfigError("field 'eta': must be positive");
  if (!(cfg.penalty_factor > 1.0)) throw ConfigError("field 'penalty_factor': must exceed 1");
  if (cfg.c1 && !(*cfg.c1 > 0.0)) throw ConfigError("field 'c1': must be positive");
  if (cfg.jobs < 1) throw ConfigError("field 'jobs': must be >= 1");
  if (cfg.outer_cap < 1) throw ConfigError("field 'outer_cap': must be >= 1");
  if (cfg.cycle_cap < 1) throw ConfigError("field 'cycle_cap': must be >= 1");
}

RunReport run(const RunConfig& config) {
  validate(config);

  lcqm::LcqmInstance inst;
  if (std::holds_alternative<GenerateSpec>(config.instance)) {
    const auto& g = std::get<GenerateSpec>(config.instance);
    inst = lcqm::generate_instance(g.seed, g.l, g.n, g.density, g.L, g.m);
  } else {
    inst = lcqm::load_instance(std::get<std::string>(config.instance));
  }
  const ProblemSpec problem = lcqm::lcqm_problem(inst);
  const std::uint64_t start_seed = config.start_seed.value_or(inst.seed + 1);
  const Vector z0 = lcqm::random_start(start_seed, inst.n);
  const double c1 = config.c1.value_or(
      c1_formula(problem.f.curvature.L, problem.constraint.norm_bound));

  struct RowTask {
    double theta;
    Variant variant;
  };
  std::vector<RowTask> tasks;
  for (double theta : config.thetas) {
    if (config.variants != VariantMode::Constant && theta > 0.0)
      tasks.push_back({theta, Variant::Theoretical});
    if (config.variants != VariantMode::Theoretical) tasks.push_back({theta, Variant::Constant});
  }

  RunReport report;
  report.rows.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      SolverConfig sc;
      sc.theta = tasks[i].theta;
      sc.variant = tasks[i].variant;
      sc.rho_hat = config.rho_hat;
      sc.eta_hat = config.eta_hat;
      sc.mode = config.mode;
      sc.c1 = c1;
      sc.penalty_factor = config.penalty_factor;
      sc.warm_start = config.warm_start;
      sc.z0 = z0;
      sc.outer_cap = config.outer_cap;
      sc.cycle_cap = config.cycle_cap;

      const auto t0 = std::chrono::steady_clock::now();
      auto [point, dyn] = dynamic_solve(problem, sc);
      const auto t1 = std::chrono::steady_clock::now();

      ReportRow row;
      row.theta = sc.theta;
      row.variant = sc.variant;
      row.acg_iters = dyn.acg_total;
      row.outer_iters = dyn.outer_total;
      row.cycles = dyn.cycle_count;
      row.runtime_s =
          std::round(std::chrono::duration<double>(t1 - t0).count() * 1000.0) / 1000.0;
      row.stationarity = dyn.stationarity;
      row.feasibility = dyn.feasibility;
      row.stationarity_rel = dyn.stationarity_rel;
      row.feasibility_rel = dyn.feasibility_rel;
      row.final_c = dyn.final_c;
      row.converged = dyn.converged;
      row.cycle_stats = dyn.cycles;
      row.records.reserve(dyn.records.size());
      for (const auto& rec : dyn.records) row.records.push_back(RecordSummary::from(rec));
      report.rows[i] = std::move(row);
      log::info("row theta=%g %s: acg=%ld outer=%d cycles=%d%s", sc.theta,
                to_string(sc.variant).c_str(), report.rows[i].acg_iters,
                report.rows[i].outer_iters, report.rows[i].cycles,
                report.rows[i].converged ? "" : " [cap exceeded]");
    }
  };

  const int jobs = std::min<std::size_t>(config.jobs, tasks.size() ? tasks.size() : 1);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return report;
}

}  // namespace ipaal
