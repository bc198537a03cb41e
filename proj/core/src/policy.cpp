#include "cellsim/policy.hpp"

#include <cmath>

#include "cellsim/errors.hpp"

namespace cellsim {

const char* policy_name(PolicyKind kind) {
  return kind == PolicyKind::rate_control ? "rate" : "power";
}

double shannon_rate(double beta) {
  if (!(beta >= 0.0)) throw DomainError("SINR threshold must be nonnegative");
  return std::log2(1.0 + beta);
}

namespace {

void check_policy_params(const PolicyParams& params) {
  if (!(params.epsilon_hat > 0.0 && params.epsilon_hat < 1.0)) {
    throw DomainError("target outage probability must lie strictly inside (0, 1)");
  }
  if (!(params.pilot_fraction >= 0.0 && params.pilot_fraction < 1.0)) {
    throw DomainError("pilot fraction must lie in [0, 1)");
  }
}

int serving_m(const LinkTable& links, int station, int mobile) {
  const double m = links.nakagami(station, mobile);
  const int m_int = static_cast<int>(std::llround(m));
  if (m_int < 1 || std::fabs(m - m_int) > 1e-12) {
    throw DomainError("serving-link Nakagami parameter must be a positive integer");
  }
  return m_int;
}

PolicyOutcome empty_outcome(PolicyKind kind, std::size_t n_mobiles) {
  PolicyOutcome out;
  out.policy = kind;
  out.mobiles.assign(n_mobiles, MobileAllocation{});
  return out;
}

}  // namespace

OutageContext interference_context(const LinkTable& links, const Assignment& assignment,
                                   int mobile, const RadioParams& radio) {
  const int serving = assignment.serving_station(mobile);
  if (serving < 0) throw DomainError("denied mobiles have no interference context");
  OutageContext ctx;
  ctx.omega0 = 1.0;
  ctx.m0 = serving_m(links, serving, mobile);
  ctx.gamma = radio.gamma;
  ctx.spread_factor = radio.spread_factor;
  ctx.chip_factor = radio.chip_factor;
  const int n_stations = static_cast<int>(links.num_stations());
  ctx.interferers.reserve(links.num_stations() - 1);
  for (int i = 0; i < n_stations; ++i) {
    if (i == serving) continue;
    ctx.interferers.push_back(
        {links.gain(i, mobile) * radio.gain_scale, links.nakagami(i, mobile)});
  }
  return ctx;
}

std::vector<double> solve_beta0_star(const LinkTable& links, const Assignment& assignment,
                                     const RadioParams& radio, double epsilon_hat) {
  std::vector<double> beta0(links.num_mobiles(), 0.0);
  const int n_mobiles = static_cast<int>(links.num_mobiles());
  for (int j = 0; j < n_mobiles; ++j) {
    if (!assignment.is_served(j)) continue;
    const OutageContext ctx = interference_context(links, assignment, j, radio);
    beta0[j] = invert_outage_beta0(epsilon_hat, ctx);
  }
  return beta0;
}

PolicyOutcome rate_control(const LinkTable& links, const Assignment& assignment,
                           const RadioParams& radio, const PolicyParams& params) {
  return rate_control(links, assignment, radio, params,
                      solve_beta0_star(links, assignment, radio, params.epsilon_hat));
}

PolicyOutcome rate_control(const LinkTable& links, const Assignment& assignment,
                           const RadioParams& radio, const PolicyParams& params,
                           const std::vector<double>& beta0_star) {
  check_policy_params(params);
  PolicyOutcome out = empty_outcome(PolicyKind::rate_control, links.num_mobiles());
  const int n_stations = static_cast<int>(links.num_stations());
  for (int i = 0; i < n_stations; ++i) {
    const std::vector<int>& members = assignment.members(i);
    if (members.empty()) continue;
    const double phi = (1.0 - params.pilot_fraction) / static_cast<double>(members.size());
    for (int j : members) {
      const double omega0 = phi * links.gain(i, j) * radio.gain_scale;
      const double beta = beta0_star[j] * omega0 / serving_m(links, i, j);
      out.mobiles[j] = {true, beta, phi, shannon_rate(beta)};
    }
  }
  return out;
}

PolicyOutcome power_control(const LinkTable& links, const Assignment& assignment,
                            const RadioParams& radio, const PolicyParams& params) {
  return power_control(links, assignment, radio, params,
                       solve_beta0_star(links, assignment, radio, params.epsilon_hat));
}

PolicyOutcome power_control(const LinkTable& links, const Assignment& assignment,
                            const RadioParams& radio, const PolicyParams& params,
                            const std::vector<double>& beta0_star) {
  check_policy_params(params);
  PolicyOutcome out = empty_outcome(PolicyKind::power_control, links.num_mobiles());
  std::vector<double> need(links.num_mobiles(), 0.0);
  const int n_stations = static_cast<int>(links.num_stations());
  for (int i = 0; i < n_stations; ++i) {
    const std::vector<int>& members = assignment.members(i);
    if (members.empty()) continue;
    // need_j is the power share that buys mobile j a unit threshold; the
    // common threshold scales every share until the budget is exact.
    double total_need = 0.0;
    for (int j : members) {
      need[j] = serving_m(links, i, j) /
                (beta0_star[j] * links.gain(i, j) * radio.gain_scale);
      total_need += need[j];
    }
    const double beta_cell = (1.0 - params.pilot_fraction) / total_need;
    const double rate = shannon_rate(beta_cell);
    for (int j : members) {
      out.mobiles[j] = {true, beta_cell, beta_cell * need[j], rate};
    }
  }
  return out;
}

}  // namespace cellsim
