#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "cellsim/config.hpp"
#include "cellsim/errors.hpp"
#include "cellsim/runner.hpp"
#include "cellsim/version.hpp"

namespace {

// Exit codes, one per error class so scripts can branch on them.
enum ExitCode {
  kOk = 0,
  kUsage = 1,
  kConfig = 2,
  kPlacement = 3,
  kEmpty = 4,
  kNumeric = 5,
  kGateFailed = 6,
  kIo = 7,
};

void report_outputs(const cellsim::RunFiles& files) {
  for (const auto& path : files.outputs) std::printf("wrote %s\n", path.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator of a spread-spectrum cellular downlink"};
  app.set_version_flag("--version", cellsim::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string policy, km_list, rbs_list, trials, seed, sigma_s, alpha, workers;
  auto* opt_config =
      app.add_option("--config", config_path, "Configuration file (key = value lines)")
          ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (created if missing)")
      ->capture_default_str();
  auto* opt_policy =
      app.add_option("--policy", policy, "Power allocation: rate, power, or both");
  auto* opt_km = app.add_option("--km-list", km_list, "Comma-separated K/M sweep values");
  auto* opt_rbs =
      app.add_option("--rbs-list", rbs_list, "Comma-separated station-exclusion sweep values");
  auto* opt_trials = app.add_option("--trials", trials, "Number of trials");
  auto* opt_seed = app.add_option("--seed", seed, "Master seed");
  auto* opt_sigma = app.add_option("--sigma-s", sigma_s, "Shadowing standard deviation, dB");
  auto* opt_alpha = app.add_option("--alpha", alpha, "Path-loss exponent");
  auto* opt_workers = app.add_option("--workers", workers, "Worker threads (0 = hardware)");

  auto* cmd_single =
      app.add_subcommand("single", "One experiment at the configured operating point");
  auto* cmd_sweep =
      app.add_subcommand("sweep", "Experiments across a swept axis and shadowing levels");
  auto* cmd_snapshot =
      app.add_subcommand("snapshot", "Dump one network realization with its assignment");
  auto* cmd_validate = app.add_subcommand(
      "validate", "Check the closed-form outage kernel against direct fading simulation");
  for (auto* cmd : {cmd_single, cmd_sweep, cmd_snapshot, cmd_validate}) cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::vector<std::pair<std::string, std::string>> overrides;
  if (opt_policy->count()) overrides.emplace_back("policy", policy);
  if (opt_km->count()) overrides.emplace_back("K_over_M_list", km_list);
  if (opt_rbs->count()) overrides.emplace_back("r_bs_list", rbs_list);
  if (opt_trials->count()) overrides.emplace_back("n_trials", trials);
  if (opt_seed->count()) overrides.emplace_back("master_seed", seed);
  if (opt_sigma->count()) overrides.emplace_back("sigma_s_dB", sigma_s);
  if (opt_alpha->count()) overrides.emplace_back("alpha", alpha);
  if (opt_workers->count()) overrides.emplace_back("workers", workers);

  try {
    const std::optional<std::string> file =
        opt_config->count() ? std::optional<std::string>(config_path) : std::nullopt;
    const cellsim::ExperimentConfig cfg = cellsim::parse_config(file, overrides);

    if (*cmd_validate) {
      const cellsim::ValidationSummary summary = cellsim::run_validate(cfg, out_dir);
      report_outputs(summary.files);
      std::printf("oracle gate: %d/%d contexts within 4*SE (required %d) -> %s\n",
                  summary.within, summary.contexts, summary.required,
                  summary.passed ? "PASS" : "FAIL");
      return summary.passed ? kOk : kGateFailed;
    }

    cellsim::RunFiles files;
    if (*cmd_single) {
      files = cellsim::run_single(cfg, out_dir);
    } else if (*cmd_sweep) {
      files = cellsim::run_sweep(cfg, out_dir);
    } else {
      files = cellsim::run_snapshot(cfg, out_dir);
    }
    report_outputs(files);
    return kOk;
  } catch (const cellsim::ConfigError& e) {
    std::fprintf(stderr, "config error [%s]: %s\n", e.key().c_str(), e.what());
    return kConfig;
  } catch (const cellsim::PlacementInfeasible& e) {
    std::fprintf(stderr, "placement infeasible: %s\n", e.what());
    return kPlacement;
  } catch (const cellsim::EmptyAggregate& e) {
    std::fprintf(stderr, "nothing to aggregate: %s\n", e.what());
    return kEmpty;
  } catch (const cellsim::BracketFailure& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kNumeric;
  } catch (const cellsim::DomainError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  }
}
