#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cellsim/config.hpp"
#include "cellsim/geometry.hpp"
#include "cellsim/policy.hpp"

namespace cellsim {

// One mobile's outcome in one trial. Denied mobiles carry rate 0 and a NaN
// serving distance; they still count toward every per-mobile average.
struct MobileRecord {
  int trial = 0;
  int mobile = 0;
  bool served = false;
  double rate = 0.0;
  double serving_distance = 0.0;
};

struct TrialOutput {
  int trial = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
  // Records per selected policy, in selected_policies() order.
  std::vector<std::vector<MobileRecord>> records;
};

struct CcdfPoint {
  double r = 0.0;
  double prob = 0.0;  // fraction of mobiles with rate strictly above r
};

// Pooled per-policy results over the completed trials. Standard errors come
// from a trial-level bootstrap, so they honor the correlation of mobiles
// that share a network draw.
struct AggregateStats {
  std::vector<MobileRecord> samples;  // sorted by (trial, mobile)
  std::vector<int> trials;            // completed trial indices, ascending
  std::vector<std::uint64_t> trial_seeds;
  double lambda = 0.0;  // mobile density over the network disk
  double mean_rate = 0.0;
  double mean_rate_se = 0.0;
  double tx_capacity = 0.0;  // lambda * (1 - epsilon_hat) * mean_rate
  double tx_capacity_se = 0.0;
  double cell_edge_mean = 0.0;  // mean rate of the farthest served mobiles
  double cell_edge_se = 0.0;
  double denial_fraction = 0.0;
  std::vector<CcdfPoint> ccdf;
};

struct ExperimentResult {
  std::vector<PolicyKind> policies;
  std::vector<AggregateStats> per_policy;  // aligned with policies
  int n_requested = 0;
  int n_completed = 0;
  int n_failed = 0;
};

// One end-to-end trial: draw the network, build links, associate, solve the
// per-mobile thresholds once, and run every selected policy. The stream is
// derived from (master_seed, trial), so trials are independent of ordering
// and of how many workers ran them.
TrialOutput run_trial(const ExperimentConfig& cfg, int trial);
TrialOutput run_trial_with_seed(const ExperimentConfig& cfg, int trial, std::uint64_t seed);

// All trials, in parallel when workers allow. Trials whose placement is
// infeasible are recorded as failed and excluded from the pool; if every
// trial fails the placement error propagates.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

AggregateStats aggregate(std::vector<MobileRecord> records, std::vector<int> trials,
                         std::vector<std::uint64_t> trial_seeds,
                         const ExperimentConfig& cfg, std::uint64_t bootstrap_seed);

// Evaluates pooled statistics over bootstrap resamples of the trial list,
// identified by slots into AggregateStats::trials (repeats allowed). The
// constructor digests the pool once so each resample is cheap; used by the
// aggregation itself and by paired policy comparisons.
class TrialResampler {
 public:
  explicit TrialResampler(const AggregateStats& stats);

  int n_trials() const { return static_cast<int>(digests_.size()); }
  double mean_rate(const std::vector<int>& picks) const;
  double cell_edge(const std::vector<int>& picks, double fraction) const;

 private:
  struct Sample {
    double distance = 0.0;
    double rate = 0.0;
    int trial = 0;
    int mobile = 0;
  };
  struct Digest {
    double rate_sum = 0.0;
    long count = 0;
    long served = 0;
    std::vector<Sample> edge;  // served samples, farthest first
  };
  std::vector<Digest> digests_;
};

// Standard deviation of stat over `resamples` bootstrap draws of the trial
// list. stat receives the picked trial slots.
double bootstrap_se(int n_trials, int resamples, std::uint64_t seed,
                    const std::function<double(const std::vector<int>&)>& stat);

struct SweepPoint {
  std::string swept_key;  // "K_over_M" or "r_bs"
  double swept_value = 0.0;
  double sigma_s_dB = 0.0;
  double K_over_M = 0.0;  // load in effect at this point
  PolicyKind policy = PolicyKind::rate_control;
  AggregateStats stats;
  int n_completed = 0;
  int n_failed = 0;
};

// Cross product of the swept axis (K_over_M_list or r_bs_list; the current
// load if neither is set) with sigma_s_list. Each point runs under its own
// derived master seed, so adding points never perturbs existing ones.
std::vector<SweepPoint> sweep(const ExperimentConfig& base);

}  // namespace cellsim
