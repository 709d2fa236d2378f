#pragma once

#include "ipaal/lcqm.hpp"
#include "ipaal/report.hpp"
#include "ipaal/solver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ipaal {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerateSpec {
  std::uint64_t seed = 1;
  int l = 5;
  int n = 20;
  double density = 0.05;
  double L = 1e4;
  double m = 1.0;
};

/// Which parameter policies to run per theta.  Both expands to two rows per
/// theta, dropping the (undefined) theoretical row at theta = 0.
enum class VariantMode { Theoretical, Constant, Both };

struct RunConfig {
  std::variant<GenerateSpec, std::string> instance = GenerateSpec{};  // generate | load path
  std::vector<double> thetas = {1.0};
  VariantMode variants = VariantMode::Constant;
  double rho_hat = 1e-4;
  double eta_hat = 1e-4;
  TerminationMode mode = TerminationMode::Relative;
  std::optional<double> c1;  // unset: c1 = 1e-5 L / (|A|^2 + 1)
  double penalty_factor = 5.0;
  bool warm_start = true;
  std::optional<std::uint64_t> start_seed;  // unset: instance seed + 1
  int outer_cap = 10000;
  int cycle_cap = 60;
  int jobs = 1;
};

/// Initial penalty rule used by the experiment protocol.
double c1_formula(double L, double op_norm_bound);

/// Parses the declarative JSON config document.  Unknown keys and malformed
/// values raise ConfigError naming the offending field.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Executes one dynamic solve per (theta, variant) row over a single shared
/// instance.  Deterministic apart from the runtime column; rows may run in
/// parallel when config.jobs > 1 without changing the report.
RunReport run(const RunConfig& config);

}  // namespace ipaal
