#include "cellsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "cellsim/errors.hpp"
#include "cellsim/parallel.hpp"
#include "cellsim/rng.hpp"

namespace cellsim {

TrialOutput run_trial(const ExperimentConfig& cfg, int trial) {
  return run_trial_with_seed(cfg, trial,
                             derive_seed(cfg.master_seed, kStreamTrial,
                                         static_cast<std::uint64_t>(trial)));
}

TrialOutput run_trial_with_seed(const ExperimentConfig& cfg, int trial, std::uint64_t seed) {
  RngStream rng(seed);
  const int K = resolved_K(cfg);
  const Disk disk{cfg.r_net};
  const PlacementSpec bs_spec{cfg.M, cfg.r_bs, cfg.max_attempts_per_point, cfg.max_redraws};
  const PlacementSpec mobile_spec{K, cfg.r_m, cfg.max_attempts_per_point, cfg.max_redraws};
  const NetworkRealization net = draw_network(disk, bs_spec, mobile_spec, rng);

  const PropagationParams prop{cfg.alpha, cfg.d0, cfg.sigma_s_dB, cfg.m_serving,
                               cfg.m_interfering};
  LinkTable links = build_link_table(net, prop, rng);
  const Assignment assignment = associate(links, cfg.G_spread);
  assign_nakagami(links, assignment, prop);

  // Raw gains are relative to the reference distance; rescaling by the
  // inverse reference path loss makes Gamma_dB the SNR of an unshadowed
  // link at unit distance.
  const RadioParams radio{std::pow(10.0, cfg.Gamma_dB / 10.0),
                          static_cast<double>(cfg.G_spread), cfg.h_chip,
                          std::pow(cfg.d0, -cfg.alpha)};
  const PolicyParams params{cfg.epsilon_hat, cfg.f_p};
  const std::vector<double> beta0_star =
      solve_beta0_star(links, assignment, radio, cfg.epsilon_hat);

  TrialOutput out;
  out.trial = trial;
  out.seed = seed;
  for (PolicyKind kind : selected_policies(cfg)) {
    const PolicyOutcome outcome =
        kind == PolicyKind::rate_control
            ? rate_control(links, assignment, radio, params, beta0_star)
            : power_control(links, assignment, radio, params, beta0_star);
    std::vector<MobileRecord> records(K);
    for (int j = 0; j < K; ++j) {
      const MobileAllocation& alloc = outcome.mobiles[j];
      double dist = std::numeric_limits<double>::quiet_NaN();
      if (alloc.served) dist = links.distance(assignment.serving_station(j), j);
      records[j] = {trial, j, alloc.served, alloc.rate, dist};
    }
    out.records.push_back(std::move(records));
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const std::vector<PolicyKind> policies = selected_policies(cfg);
  std::vector<TrialOutput> outputs(cfg.n_trials);
  parallel_for(cfg.n_trials, resolve_workers(cfg.workers), [&](int t) {
    try {
      outputs[t] = run_trial(cfg, t);
    } catch (const PlacementInfeasible& e) {
      outputs[t].trial = t;
      outputs[t].failed = true;
      outputs[t].error = e.what();
    }
  });

  ExperimentResult result;
  result.policies = policies;
  result.n_requested = cfg.n_trials;
  for (const TrialOutput& out : outputs) {
    if (out.failed) {
      ++result.n_failed;
    } else {
      ++result.n_completed;
    }
  }
  if (result.n_completed == 0) {
    for (const TrialOutput& out : outputs) {
      if (out.failed) throw PlacementInfeasible(out.error);
    }
    throw EmptyAggregate("no trials were run");
  }

  std::vector<int> trials;
  std::vector<std::uint64_t> seeds;
  for (const TrialOutput& out : outputs) {
    if (out.failed) continue;
    trials.push_back(out.trial);
    seeds.push_back(out.seed);
  }
  for (std::size_t p = 0; p < policies.size(); ++p) {
    std::vector<MobileRecord> pool;
    pool.reserve(trials.size() * static_cast<std::size_t>(resolved_K(cfg)));
    for (const TrialOutput& out : outputs) {
      if (out.failed) continue;
      pool.insert(pool.end(), out.records[p].begin(), out.records[p].end());
    }
    result.per_policy.push_back(
        aggregate(std::move(pool), trials, seeds, cfg,
                  derive_seed(cfg.master_seed, kStreamBootstrap, p)));
  }
  return result;
}

namespace {

template <typename SampleT>
bool edge_before(const SampleT& a, const SampleT& b) {
  if (a.distance != b.distance) return a.distance > b.distance;
  if (a.trial != b.trial) return a.trial < b.trial;
  return a.mobile < b.mobile;
}

}  // namespace

TrialResampler::TrialResampler(const AggregateStats& stats)
    : digests_(stats.trials.size()) {
  // samples are sorted by (trial, mobile) and trials is ascending, so one
  // forward scan buckets every record.
  std::size_t slot = 0;
  for (const MobileRecord& rec : stats.samples) {
    while (slot < digests_.size() && stats.trials[slot] != rec.trial) ++slot;
    if (slot == digests_.size()) {
      throw EmptyAggregate("records and trial list disagree; aggregate them together");
    }
    Digest& d = digests_[slot];
    d.rate_sum += rec.rate;
    ++d.count;
    if (rec.served) {
      ++d.served;
      d.edge.push_back({rec.serving_distance, rec.rate, rec.trial, rec.mobile});
    }
  }
  for (Digest& d : digests_) {
    std::sort(d.edge.begin(), d.edge.end(),
              [](const Sample& a, const Sample& b) { return edge_before(a, b); });
  }
}

double TrialResampler::mean_rate(const std::vector<int>& picks) const {
  double sum = 0.0;
  long count = 0;
  for (int slot : picks) {
    sum += digests_[slot].rate_sum;
    count += digests_[slot].count;
  }
  return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

double TrialResampler::cell_edge(const std::vector<int>& picks, double fraction) const {
  long served = 0;
  for (int slot : picks) served += digests_[slot].served;
  if (served == 0) return 0.0;
  const long want =
      static_cast<long>(std::ceil(fraction * static_cast<double>(served) - 1e-12));
  const long take = std::max<long>(1, std::min(want, served));

  // k-way merge of the per-trial farthest-first lists, stopping once the
  // `take` farthest samples are in.
  struct Cursor {
    const std::vector<Sample>* list;
    std::size_t pos;
  };
  auto lower_priority = [](const Cursor& a, const Cursor& b) {
    return edge_before((*b.list)[b.pos], (*a.list)[a.pos]);
  };
  std::priority_queue<Cursor, std::vector<Cursor>, decltype(lower_priority)> heap(
      lower_priority);
  for (int slot : picks) {
    if (!digests_[slot].edge.empty()) heap.push({&digests_[slot].edge, 0});
  }
  double sum = 0.0;
  for (long taken = 0; taken < take; ++taken) {
    Cursor top = heap.top();
    heap.pop();
    sum += (*top.list)[top.pos].rate;
    if (++top.pos < top.list->size()) heap.push(top);
  }
  return sum / static_cast<double>(take);
}

double bootstrap_se(int n_trials, int resamples, std::uint64_t seed,
                    const std::function<double(const std::vector<int>&)>& stat) {
  if (n_trials < 2) return 0.0;
  RngStream rng(seed);
  std::vector<int> picks(n_trials);
  std::vector<double> values(resamples);
  for (int b = 0; b < resamples; ++b) {
    for (int i = 0; i < n_trials; ++i) {
      picks[i] = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n_trials));
    }
    values[b] = stat(picks);
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= resamples;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (resamples - 1));
}

namespace {

constexpr int kBootstrapResamples = 300;

}  // namespace

AggregateStats aggregate(std::vector<MobileRecord> records, std::vector<int> trials,
                         std::vector<std::uint64_t> trial_seeds,
                         const ExperimentConfig& cfg, std::uint64_t bootstrap_seed) {
  if (records.empty()) throw EmptyAggregate("no mobile records to aggregate");

  AggregateStats stats;
  std::sort(records.begin(), records.end(), [](const MobileRecord& a, const MobileRecord& b) {
    if (a.trial != b.trial) return a.trial < b.trial;
    return a.mobile < b.mobile;
  });
  std::vector<std::size_t> order(trials.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return trials[a] < trials[b]; });
  stats.trials.reserve(trials.size());
  stats.trial_seeds.reserve(trials.size());
  for (std::size_t i : order) {
    stats.trials.push_back(trials[i]);
    stats.trial_seeds.push_back(trial_seeds[i]);
  }
  stats.samples = std::move(records);

  const double n = static_cast<double>(stats.samples.size());
  double rate_sum = 0.0;
  long denied = 0;
  for (const MobileRecord& rec : stats.samples) {
    rate_sum += rec.rate;
    if (!rec.served) ++denied;
  }
  stats.mean_rate = rate_sum / n;
  stats.denial_fraction = static_cast<double>(denied) / n;
  stats.lambda = resolved_K(cfg) / (M_PI * cfg.r_net * cfg.r_net);
  stats.tx_capacity = stats.lambda * (1.0 - cfg.epsilon_hat) * stats.mean_rate;

  const TrialResampler resampler(stats);
  std::vector<int> all(stats.trials.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  if (denied == static_cast<long>(stats.samples.size())) {
    throw EmptyAggregate("no served mobiles in any trial");
  }
  stats.cell_edge_mean = resampler.cell_edge(all, cfg.cell_edge_fraction);

  std::vector<double> rates;
  rates.reserve(stats.samples.size());
  for (const MobileRecord& rec : stats.samples) rates.push_back(rec.rate);
  std::sort(rates.begin(), rates.end());
  stats.ccdf.resize(cfg.ccdf_points);
  for (int k = 0; k < cfg.ccdf_points; ++k) {
    const double r = cfg.ccdf_r_max * k / (cfg.ccdf_points - 1);
    const auto above = rates.end() - std::upper_bound(rates.begin(), rates.end(), r);
    stats.ccdf[k] = {r, static_cast<double>(above) / n};
  }

  const int n_trials = static_cast<int>(stats.trials.size());
  stats.mean_rate_se = bootstrap_se(
      n_trials, kBootstrapResamples, derive_seed(bootstrap_seed, 1),
      [&](const std::vector<int>& picks) { return resampler.mean_rate(picks); });
  stats.tx_capacity_se = stats.lambda * (1.0 - cfg.epsilon_hat) * stats.mean_rate_se;
  stats.cell_edge_se = bootstrap_se(
      n_trials, kBootstrapResamples, derive_seed(bootstrap_seed, 2),
      [&](const std::vector<int>& picks) {
        return resampler.cell_edge(picks, cfg.cell_edge_fraction);
      });
  return stats;
}

std::vector<SweepPoint> sweep(const ExperimentConfig& base) {
  if (!base.K_over_M_list.empty() && !base.r_bs_list.empty()) {
    throw ConfigError("r_bs_list", "sweep one axis at a time: K_over_M_list or r_bs_list");
  }
  std::string key = "K_over_M";
  std::vector<double> values;
  if (!base.r_bs_list.empty()) {
    key = "r_bs";
    values = base.r_bs_list;
  } else if (!base.K_over_M_list.empty()) {
    values = base.K_over_M_list;
  } else {
    values = {static_cast<double>(resolved_K(base)) / base.M};
  }
  std::vector<double> sigmas =
      base.sigma_s_list.empty() ? std::vector<double>{base.sigma_s_dB} : base.sigma_s_list;

  std::vector<SweepPoint> points;
  std::uint64_t point_index = 0;
  for (double value : values) {
    for (double sigma : sigmas) {
      ExperimentConfig cfg = base;
      cfg.sigma_s_dB = sigma;
      if (key == "r_bs") {
        cfg.r_bs = value;
      } else {
        cfg.K_over_M = value;
        cfg.K = 0;
      }
      cfg.master_seed = derive_seed(base.master_seed, kStreamSweepPoint, point_index);
      ++point_index;
      validate_config(cfg);
      const ExperimentResult result = run_experiment(cfg);
      for (std::size_t p = 0; p < result.policies.size(); ++p) {
        SweepPoint point;
        point.swept_key = key;
        point.swept_value = value;
        point.sigma_s_dB = sigma;
        point.K_over_M = static_cast<double>(resolved_K(cfg)) / cfg.M;
        point.policy = result.policies[p];
        point.stats = result.per_policy[p];
        point.n_completed = result.n_completed;
        point.n_failed = result.n_failed;
        points.push_back(std::move(point));
      }
    }
  }
  return points;
}

}  // namespace cellsim
