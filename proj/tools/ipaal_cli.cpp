#include "ipaal/harness.hpp"
#include "ipaal/lcqm.hpp"
#include "ipaal/log.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

void write_output(const std::string& bytes, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << bytes;
}

}  // namespace

int main(int argc, char** argv) {
  ipaal::log::init_from_env();

  CLI::App app{"theta-augmented-Lagrangian solver and LCQM benchmark harness"};
  app.require_subcommand(1);

  // ---- run ------------------------------------------------------------------
  auto* run_cmd = app.add_subcommand("run", "execute the experiment rows of a config file");
  std::string config_path;
  run_cmd->add_option("--config", config_path, "JSON config file")->required();
  std::vector<double> thetas;
  run_cmd->add_option("--theta", thetas, "override theta list");
  std::string variant, mode, out_path, format = "table";
  run_cmd->add_option("--variant", variant, "theoretical|constant|both");
  run_cmd->add_option("--mode", mode, "absolute|relative termination");
  double rho = -1.0, eta = -1.0, penalty_factor = -1.0;
  run_cmd->add_option("--rho", rho, "stationarity tolerance");
  run_cmd->add_option("--eta", eta, "feasibility tolerance");
  run_cmd->add_option("--penalty-factor", penalty_factor, "penalty escalation factor");
  bool no_warm_start = false;
  run_cmd->add_flag("--no-warm-start", no_warm_start, "restart each cycle from (z0, 0)");
  long long seed = -1;
  run_cmd->add_option("--seed", seed, "override the instance seed (start seed for loaded files)");
  int jobs = 0;
  run_cmd->add_option("--jobs", jobs, "run rows in parallel");
  run_cmd->add_option("--out", out_path, "output path ('-' = stdout)");
  run_cmd->add_option("--format", format, "json|csv|table")->capture_default_str();

  // ---- gen ------------------------------------------------------------------
  auto* gen_cmd = app.add_subcommand("gen", "generate an LCQM instance file");
  std::uint64_t gseed = 1;
  int gl = 5, gn = 20;
  double gdensity = 0.05, gL = 1e4, gm = 1.0;
  std::string gout;
  gen_cmd->add_option("--seed", gseed, "RNG seed")->capture_default_str();
  gen_cmd->add_option("--l", gl, "number of constraints")->capture_default_str();
  gen_cmd->add_option("--n", gn, "matrix order")->capture_default_str();
  gen_cmd->add_option("--density", gdensity, "nonzero fraction")->capture_default_str();
  gen_cmd->add_option("--Lmax", gL, "target upper curvature")->capture_default_str();
  gen_cmd->add_option("--m", gm, "target lower curvature")->capture_default_str();
  gen_cmd->add_option("--out", gout, "instance file path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      const auto inst = ipaal::lcqm::generate_instance(gseed, gl, gn, gdensity, gL, gm);
      ipaal::lcqm::save_instance(inst, gout);
      ipaal::log::info("wrote instance (l=%d n=%d seed=%llu) to %s", gl, gn,
                       static_cast<unsigned long long>(gseed), gout.c_str());
      return 0;
    }

    ipaal::RunConfig cfg = ipaal::load_config(config_path);
    if (!thetas.empty()) cfg.thetas = thetas;
    if (!variant.empty()) {
      if (variant == "theoretical") cfg.variants = ipaal::VariantMode::Theoretical;
      else if (variant == "constant") cfg.variants = ipaal::VariantMode::Constant;
      else if (variant == "both") cfg.variants = ipaal::VariantMode::Both;
      else throw ipaal::ConfigError("--variant: expected theoretical|constant|both");
    }
    if (!mode.empty()) cfg.mode = ipaal::termination_mode_from_string(mode);
    if (rho > 0.0) cfg.rho_hat = rho;
    if (eta > 0.0) cfg.eta_hat = eta;
    if (penalty_factor > 0.0) cfg.penalty_factor = penalty_factor;
    if (no_warm_start) cfg.warm_start = false;
    if (jobs > 0) cfg.jobs = jobs;
    if (seed >= 0) {
      if (std::holds_alternative<ipaal::GenerateSpec>(cfg.instance))
        std::get<ipaal::GenerateSpec>(cfg.instance).seed = static_cast<std::uint64_t>(seed);
      else
        cfg.start_seed = static_cast<std::uint64_t>(seed);
    }

    const ipaal::RunReport report = ipaal::run(cfg);
    write_output(ipaal::emit_report(report, ipaal::report_format_from_string(format)), out_path);
    for (const auto& row : report.rows)
      if (!row.converged) return 2;
    return 0;
  } catch (const ipaal::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
