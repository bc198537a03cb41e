#include "cellsim/runner.hpp"

#include <cmath>
#include <fstream>

#include "cellsim/association.hpp"
#include "cellsim/errors.hpp"
#include "cellsim/geometry.hpp"
#include "cellsim/propagation.hpp"
#include "cellsim/report.hpp"
#include "cellsim/rng.hpp"
#include "cellsim/text.hpp"

namespace cellsim {

namespace fs = std::filesystem;

namespace {

std::vector<SweepPoint> single_points(const ExperimentConfig& cfg,
                                      const ExperimentResult& result) {
  const double load = static_cast<double>(resolved_K(cfg)) / cfg.M;
  std::vector<SweepPoint> points;
  for (std::size_t p = 0; p < result.policies.size(); ++p) {
    SweepPoint point;
    point.swept_key = "K_over_M";
    point.swept_value = load;
    point.sigma_s_dB = cfg.sigma_s_dB;
    point.K_over_M = load;
    point.policy = result.policies[p];
    point.stats = result.per_policy[p];
    point.n_completed = result.n_completed;
    point.n_failed = result.n_failed;
    points.push_back(std::move(point));
  }
  return points;
}

RunFiles write_point_outputs(const std::string& subcommand, const ExperimentConfig& cfg,
                             const std::vector<SweepPoint>& points, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const fs::path results = out_dir / "results.csv";
  const fs::path ccdf = out_dir / "ccdf.csv";
  const fs::path manifest = out_dir / "manifest.txt";
  write_results_csv(results, points);
  write_ccdf_csv(ccdf, points);
  write_manifest(manifest, subcommand, cfg, {results, ccdf});
  return {{results, ccdf, manifest}};
}

}  // namespace

RunFiles run_single(const ExperimentConfig& cfg, const fs::path& out_dir) {
  const ExperimentResult result = run_experiment(cfg);
  return write_point_outputs("single", cfg, single_points(cfg, result), out_dir);
}

RunFiles run_sweep(const ExperimentConfig& cfg, const fs::path& out_dir) {
  return write_point_outputs("sweep", cfg, sweep(cfg), out_dir);
}

RunFiles run_snapshot(const ExperimentConfig& cfg, const fs::path& out_dir) {
  RngStream rng(derive_seed(cfg.master_seed, kStreamTrial, 0));
  const Disk disk{cfg.r_net};
  const PlacementSpec bs_spec{cfg.M, cfg.r_bs, cfg.max_attempts_per_point, cfg.max_redraws};
  const PlacementSpec mobile_spec{resolved_K(cfg), cfg.r_m, cfg.max_attempts_per_point,
                                  cfg.max_redraws};
  const NetworkRealization net = draw_network(disk, bs_spec, mobile_spec, rng);
  const PropagationParams prop{cfg.alpha, cfg.d0, cfg.sigma_s_dB, cfg.m_serving,
                               cfg.m_interfering};
  const LinkTable links = build_link_table(net, prop, rng);
  const Assignment assignment = associate(links, cfg.G_spread);

  fs::create_directories(out_dir);
  const fs::path snapshot = out_dir / "snapshot.csv";
  const fs::path manifest = out_dir / "manifest.txt";
  write_snapshot_csv(snapshot, net, assignment);
  write_manifest(manifest, "snapshot", cfg, {snapshot});
  return {{snapshot, manifest}};
}

OracleCheck oracle_check(std::uint64_t master_seed, std::uint64_t index, long n_draws) {
  RngStream rng(derive_seed(master_seed, kStreamValidate, index));

  OutageContext ctx;
  ctx.m0 = 1 + static_cast<int>(rng.next_u64() % 3);
  ctx.gamma = 10.0;          // 10 dB
  ctx.spread_factor = 16.0;  // h/G = 1/24
  ctx.chip_factor = 2.0 / 3.0;
  ctx.omega0 = std::pow(10.0, rng.uniform(-1.0, 1.0));
  const int n_interferers = static_cast<int>(rng.next_u64() % 50);
  ctx.interferers.reserve(n_interferers);
  for (int i = 0; i < n_interferers; ++i) {
    ctx.interferers.push_back({std::pow(10.0, rng.uniform(-3.0, 3.0)), 1.0});
  }

  // Aim at a uniformly drawn outage level rather than a uniformly drawn
  // threshold, so estimates stay away from the degenerate 0/1 corners.
  const double target = rng.uniform(0.02, 0.95);
  OracleCheck check;
  check.m0 = ctx.m0;
  check.n_interferers = n_interferers;
  check.beta = invert_outage(target, ctx);
  check.epsilon_closed = outage_probability(check.beta, ctx);
  const OracleEstimate est = fading_oracle(check.beta, ctx, n_draws, rng);
  check.epsilon_mc = est.epsilon;
  check.std_error = est.std_error;
  check.within =
      std::fabs(check.epsilon_closed - check.epsilon_mc) <= 4.0 * check.std_error;
  return check;
}

ValidationSummary run_validate(const ExperimentConfig& cfg, const fs::path& out_dir,
                               int contexts, long n_draws) {
  ValidationSummary summary;
  summary.contexts = contexts;
  summary.required = static_cast<int>(std::ceil(0.95 * contexts));

  fs::create_directories(out_dir);
  const fs::path csv_path = out_dir / "validate.csv";
  const fs::path manifest = out_dir / "manifest.txt";
  std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
  if (!csv) throw std::runtime_error("cannot write '" + csv_path.string() + "'");
  csv << "context,m0,n_interferers,beta,epsilon_closed,epsilon_mc,std_error,within\n";
  for (int c = 0; c < contexts; ++c) {
    const OracleCheck check = oracle_check(cfg.master_seed, c, n_draws);
    if (check.within) ++summary.within;
    csv << c << ',' << check.m0 << ',' << check.n_interferers << ','
        << format_double(check.beta) << ',' << format_double(check.epsilon_closed) << ','
        << format_double(check.epsilon_mc) << ',' << format_double(check.std_error) << ','
        << (check.within ? 1 : 0) << '\n';
  }
  csv.flush();
  if (!csv) throw std::runtime_error("write failed for '" + csv_path.string() + "'");
  csv.close();
  write_manifest(manifest, "validate", cfg, {csv_path});
  summary.passed = summary.within >= summary.required;
  summary.files = {{csv_path, manifest}};
  return summary;
}

}  // namespace cellsim
