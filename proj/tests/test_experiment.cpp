#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "cellsim/config.hpp"
#include "cellsim/errors.hpp"
#include "cellsim/experiment.hpp"
#include "cellsim/rng.hpp"
#include "doctest.h"

using namespace cellsim;

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

// Two hand-built trials with known pooled statistics. Trial sums differ so
// resampling is informative; the two 0.7 distances pin the edge tie rule.
std::vector<MobileRecord> synthetic_records() {
  return {
      {0, 0, true, 2.0, 0.1},  {0, 1, true, 1.0, 0.7}, {0, 2, false, 0.0, kNaN},
      {0, 3, true, 3.0, 0.5},  {1, 0, true, 4.0, 0.7}, {1, 1, false, 0.0, kNaN},
      {1, 2, true, 0.5, 1.5},  {1, 3, true, 2.5, 0.2},
  };
}

ExperimentConfig synthetic_config(const std::string& edge_fraction) {
  return parse_config(std::nullopt, {{"M", "1"},
                                     {"K", "4"},
                                     {"cell_edge_fraction", edge_fraction},
                                     {"ccdf_r_max", "4"},
                                     {"ccdf_points", "5"}});
}

}  // namespace

TEST_CASE("pooled statistics over hand-built records") {
  const ExperimentConfig cfg = synthetic_config("0.5");
  const AggregateStats stats = aggregate(synthetic_records(), {0, 1}, {111, 222}, cfg, 9);

  CHECK(stats.mean_rate == 13.0 / 8.0);  // denied mobiles count as zero rate
  CHECK(stats.denial_fraction == 0.25);
  CHECK(stats.lambda == doctest::Approx(4.0 / (M_PI * 4.0)).epsilon(1e-14));
  CHECK(stats.tx_capacity == stats.lambda * (1.0 - cfg.epsilon_hat) * stats.mean_rate);
  CHECK(stats.mean_rate_se > 0.0);

  // Half of the six served mobiles, farthest first: 1.5, then both 0.7s.
  CHECK(stats.cell_edge_mean == doctest::Approx(5.5 / 3.0).epsilon(1e-14));

  REQUIRE(stats.ccdf.size() == 5);
  const double want_prob[] = {0.75, 0.5, 0.375, 0.125, 0.0};
  for (int k = 0; k < 5; ++k) {
    CHECK(stats.ccdf[k].r == doctest::Approx(k).epsilon(1e-14));
    CHECK(stats.ccdf[k].prob == want_prob[k]);  // strict >, so rate 4 misses r = 4
  }

  CHECK(stats.samples.size() == 8);
  CHECK(stats.trials == std::vector<int>{0, 1});
  CHECK(stats.trial_seeds == std::vector<std::uint64_t>{111, 222});
}

TEST_CASE("distance ties at the edge boundary resolve by trial then mobile") {
  const ExperimentConfig cfg = synthetic_config("0.3333333333333333");
  const AggregateStats stats = aggregate(synthetic_records(), {0, 1}, {111, 222}, cfg, 9);
  // Two of six served: 1.5 first, then the 0.7 tie goes to the earlier trial.
  CHECK(stats.cell_edge_mean == doctest::Approx((0.5 + 1.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("aggregation is independent of record and trial order") {
  const ExperimentConfig cfg = synthetic_config("0.5");
  const AggregateStats a = aggregate(synthetic_records(), {0, 1}, {111, 222}, cfg, 9);

  std::vector<MobileRecord> shuffled = synthetic_records();
  std::mt19937 perm(5);
  std::shuffle(shuffled.begin(), shuffled.end(), perm);
  const AggregateStats b = aggregate(std::move(shuffled), {1, 0}, {222, 111}, cfg, 9);

  CHECK(a.mean_rate == b.mean_rate);
  CHECK(a.mean_rate_se == b.mean_rate_se);
  CHECK(a.tx_capacity == b.tx_capacity);
  CHECK(a.tx_capacity_se == b.tx_capacity_se);
  CHECK(a.cell_edge_mean == b.cell_edge_mean);
  CHECK(a.cell_edge_se == b.cell_edge_se);
  CHECK(a.denial_fraction == b.denial_fraction);
  CHECK(a.trials == b.trials);
  CHECK(a.trial_seeds == b.trial_seeds);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].trial == b.samples[i].trial);
    CHECK(a.samples[i].mobile == b.samples[i].mobile);
    CHECK(a.samples[i].rate == b.samples[i].rate);
  }
  for (std::size_t k = 0; k < a.ccdf.size(); ++k) CHECK(a.ccdf[k].prob == b.ccdf[k].prob);
}

TEST_CASE("trial resampler evaluates duplicated picks like a true resample") {
  const ExperimentConfig cfg = synthetic_config("0.5");
  const AggregateStats stats = aggregate(synthetic_records(), {0, 1}, {111, 222}, cfg, 9);
  const TrialResampler resampler(stats);

  CHECK(resampler.n_trials() == 2);
  CHECK(resampler.mean_rate({0, 1}) == 13.0 / 8.0);
  CHECK(resampler.mean_rate({0, 0}) == 1.5);
  CHECK(resampler.mean_rate({1, 1}) == 1.75);
  CHECK(resampler.cell_edge({0, 1}, 0.5) == doctest::Approx(5.5 / 3.0).epsilon(1e-14));
  // Trial 0 twice: its three served mobiles double to six, so the top half
  // is 0.7 (twice) and 0.5.
  CHECK(resampler.cell_edge({0, 0}, 0.5) == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("bootstrap deviations are deterministic and vanish for one trial") {
  auto stat = [](const std::vector<int>& picks) {
    double s = 0.0;
    for (int p : picks) s += p;
    return s / static_cast<double>(picks.size());
  };
  const double a = bootstrap_se(2, 300, 7, stat);
  const double b = bootstrap_se(2, 300, 7, stat);
  CHECK(a == b);
  CHECK(a > 0.0);
  CHECK(bootstrap_se(1, 300, 7, stat) == 0.0);
}

TEST_CASE("a trial replays bitwise from its derived seed") {
  const ExperimentConfig cfg = parse_config(
      std::nullopt,
      {{"M", "10"}, {"K", "40"}, {"policy", "both"}, {"master_seed", "77"}});
  const TrialOutput a = run_trial(cfg, 3);
  const TrialOutput b = run_trial(cfg, 3);
  const TrialOutput c = run_trial_with_seed(cfg, 3, derive_seed(77, kStreamTrial, 3));

  CHECK_FALSE(a.failed);
  CHECK(a.seed == derive_seed(77, kStreamTrial, 3));
  REQUIRE(a.records.size() == 2);
  REQUIRE(a.records[0].size() == 40);
  for (const TrialOutput* other : {&b, &c}) {
    REQUIRE(other->records.size() == a.records.size());
    for (std::size_t p = 0; p < a.records.size(); ++p) {
      for (std::size_t j = 0; j < a.records[p].size(); ++j) {
        CHECK(a.records[p][j].rate == other->records[p][j].rate);
        CHECK(a.records[p][j].served == other->records[p][j].served);
      }
    }
  }
}

TEST_CASE("experiment results wire the policies and the capacity formula together") {
  const ExperimentConfig cfg = parse_config(std::nullopt, {{"M", "10"},
                                                           {"K", "40"},
                                                           {"policy", "both"},
                                                           {"n_trials", "5"},
                                                           {"workers", "2"},
                                                           {"ccdf_points", "5"}});
  const ExperimentResult result = run_experiment(cfg);
  CHECK(result.n_requested == 5);
  CHECK(result.n_completed == 5);
  CHECK(result.n_failed == 0);
  REQUIRE(result.policies ==
          std::vector<PolicyKind>{PolicyKind::rate_control, PolicyKind::power_control});
  REQUIRE(result.per_policy.size() == 2);
  for (const AggregateStats& stats : result.per_policy) {
    CHECK(stats.samples.size() == 5 * 40);
    CHECK(stats.trials == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(stats.lambda == doctest::Approx(40.0 / (M_PI * 4.0)).epsilon(1e-14));
    CHECK(stats.tx_capacity == stats.lambda * (1.0 - cfg.epsilon_hat) * stats.mean_rate);
    CHECK(stats.mean_rate > 0.0);
    CHECK(stats.ccdf.size() == 5);
  }
  // Both policies saw the same five network draws.
  CHECK(result.per_policy[0].trial_seeds == result.per_policy[1].trial_seeds);
}

TEST_CASE("a one-mobile network earns the same rate under either policy") {
  const ExperimentConfig cfg = parse_config(
      std::nullopt,
      {{"M", "1"}, {"K", "1"}, {"r_bs", "0"}, {"r_m", "0"}, {"policy", "both"}});
  for (int t = 0; t < 3; ++t) {
    const TrialOutput out = run_trial(cfg, t);
    REQUIRE_FALSE(out.failed);
    REQUIRE(out.records.size() == 2);
    CHECK(out.records[0][0].served);
    CHECK(std::fabs(out.records[0][0].rate - out.records[1][0].rate) <= 1e-9);
  }
}

TEST_CASE("sweep points cover the axis cross sigma grid, policies innermost") {
  const ExperimentConfig base = parse_config(std::nullopt, {{"M", "10"},
                                                            {"K_over_M_list", "2,4"},
                                                            {"sigma_s_list", "0,8"},
                                                            {"policy", "both"},
                                                            {"n_trials", "2"},
                                                            {"workers", "2"},
                                                            {"ccdf_points", "2"}});
  const std::vector<SweepPoint> points = sweep(base);
  REQUIRE(points.size() == 8);
  int idx = 0;
  for (double value : {2.0, 4.0}) {
    for (double sigma : {0.0, 8.0}) {
      for (PolicyKind kind : {PolicyKind::rate_control, PolicyKind::power_control}) {
        const SweepPoint& pt = points[idx++];
        CHECK(pt.swept_key == "K_over_M");
        CHECK(pt.swept_value == value);
        CHECK(pt.sigma_s_dB == sigma);
        CHECK(pt.K_over_M == value);
        CHECK(pt.policy == kind);
        CHECK(pt.n_completed == 2);
        CHECK(pt.stats.samples.size() == static_cast<std::size_t>(2 * 10 * value));
      }
    }
  }
  // Each (value, sigma) cell runs under its own derived seed; the two
  // policies inside a cell share the draws.
  CHECK(points[0].stats.trial_seeds == points[1].stats.trial_seeds);
  CHECK(points[0].stats.trial_seeds != points[2].stats.trial_seeds);
  CHECK(points[0].stats.trial_seeds != points[4].stats.trial_seeds);
}

TEST_CASE("sweeping two axes at once is rejected") {
  const ExperimentConfig base = parse_config(std::nullopt, {{"K_over_M_list", "2,4"},
                                                            {"r_bs_list", "0,0.25"},
                                                            {"n_trials", "1"}});
  CHECK_THROWS_AS(sweep(base), ConfigError);
}

TEST_CASE("impossible placement fails every trial and surfaces the cause") {
  const ExperimentConfig cfg = parse_config(std::nullopt, {{"M", "50"},
                                                           {"r_bs", "1.5"},
                                                           {"K", "10"},
                                                           {"n_trials", "2"},
                                                           {"max_attempts_per_point", "20"},
                                                           {"max_redraws", "2"}});
  CHECK_THROWS_AS(run_experiment(cfg), PlacementInfeasible);
}
