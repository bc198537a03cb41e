#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "cellsim/config.hpp"
#include "cellsim/experiment.hpp"
#include "cellsim/outage.hpp"

namespace cellsim {

struct RunFiles {
  std::vector<std::filesystem::path> outputs;  // written files, manifest last
};

// single: one experiment at the configured point; results.csv has one row
// per selected policy.
RunFiles run_single(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

// sweep: cross product of the swept axis and sigma_s_list.
RunFiles run_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

// snapshot: dumps the realization and assignment of trial 0.
RunFiles run_snapshot(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

// One closed-form-vs-oracle comparison on a random context drawn from the
// reference regime: serving Nakagami in {1,2,3}, up to 49 Rayleigh
// interferers with powers spanning six decades, 10 dB unit-power SNR.
struct OracleCheck {
  int m0 = 0;
  int n_interferers = 0;
  double beta = 0.0;
  double epsilon_closed = 0.0;
  double epsilon_mc = 0.0;
  double std_error = 0.0;
  bool within = false;  // |epsilon_closed - epsilon_mc| <= 4 * std_error
};

OracleCheck oracle_check(std::uint64_t master_seed, std::uint64_t index, long n_draws);

struct ValidationSummary {
  int contexts = 0;
  int within = 0;
  int required = 0;
  bool passed = false;
  RunFiles files;
};

// Runs `contexts` oracle checks and writes validate.csv plus a manifest.
// Passes when at least 95% of contexts agree within 4 standard errors.
ValidationSummary run_validate(const ExperimentConfig& cfg,
                               const std::filesystem::path& out_dir, int contexts = 100,
                               long n_draws = 100000);

}  // namespace cellsim
