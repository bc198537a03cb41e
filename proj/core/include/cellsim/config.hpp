#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cellsim/policy.hpp"

namespace cellsim {

enum class PolicySelection { rate, power, both };

// Full description of an experiment. Field names mirror the configuration
// keys; distances share one arbitrary unit, powers are normalized, and dB
// quantities say so in their name.
struct ExperimentConfig {
  int M = 50;                    // stations
  int K = 0;                     // mobiles; 0 derives K from K_over_M
  double K_over_M = 16.0;        // load used when K is 0
  double r_net = 2.0;            // network disk radius
  double r_bs = 0.25;            // exclusion radius between stations
  double r_m = 0.01;             // exclusion radius between mobiles
  double alpha = 3.0;            // path-loss exponent
  double d0 = 1e-3;              // path-loss reference distance
  double sigma_s_dB = 8.0;       // shadowing standard deviation
  int m_serving = 3;             // Nakagami parameter of serving links
  double m_interfering = 1.0;    // Nakagami parameter of interfering links
  double Gamma_dB = 10.0;        // SNR of an unshadowed link at unit distance
  int G_spread = 16;             // processing gain, also station capacity
  double h_chip = 2.0 / 3.0;     // mean chip-waveform attenuation
  double f_p = 0.1;              // pilot fraction of station power
  double epsilon_hat = 0.1;      // per-link outage target
  PolicySelection policy = PolicySelection::rate;
  int n_trials = 100;
  std::uint64_t master_seed = 1;
  double cell_edge_fraction = 0.05;  // largest serving distances averaged
  double ccdf_r_max = 10.0;          // rate grid for the ccdf output
  int ccdf_points = 201;
  int workers = 0;  // 0 uses the hardware thread count
  int max_attempts_per_point = 1000;
  int max_redraws = 100;
  std::vector<double> K_over_M_list;  // sweep values; empty means not swept
  std::vector<double> r_bs_list;
  std::vector<double> sigma_s_list;
};

// Mobile count with the K_over_M fallback applied.
int resolved_K(const ExperimentConfig& cfg);

std::vector<PolicyKind> selected_policies(const ExperimentConfig& cfg);
const char* policy_selection_name(PolicySelection policy);

// Reads a flat key=value file ('#' starts a comment, blank lines ignored),
// then applies overrides in order. Pass no path to start from defaults.
// Unknown keys, malformed values, and out-of-range settings all raise
// ConfigError naming the offending key.
ExperimentConfig parse_config(
    const std::optional<std::string>& path,
    const std::vector<std::pair<std::string, std::string>>& overrides = {});

// One key=value pair per setting, suitable for echoing into a manifest and
// for feeding back through parse_config overrides.
std::vector<std::pair<std::string, std::string>> config_items(const ExperimentConfig& cfg);

void validate_config(const ExperimentConfig& cfg);

}  // namespace cellsim
