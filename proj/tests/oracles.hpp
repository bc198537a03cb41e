#pragma once

// Independent reference implementations used only by the test binaries.
// Each recomputes a quantity the library produces, by a different algorithm,
// so agreement between the two is meaningful.

#include <cmath>
#include <cstddef>
#include <vector>

#include "cellsim/outage.hpp"

namespace testref {

// Gamma tail with integer shape: P[X > x] for X ~ Erlang(m0, 1).
inline double erlang_ccdf(int m0, double x) {
  double sum = 0.0;
  for (int n = 0; n < m0; ++n) sum += std::pow(x, n) / std::tgamma(n + 1.0);
  return std::exp(-x) * sum;
}

namespace detail {

inline void add_compositions(const std::vector<std::vector<double>>& terms, std::size_t i,
                             int remaining, double prod, double& acc) {
  if (i == terms.size()) {
    if (remaining == 0) acc += prod;
    return;
  }
  for (int l = 0; l <= remaining; ++l) {
    add_compositions(terms, i + 1, remaining - l, prod * terms[i][l], acc);
  }
}

}  // namespace detail

// Complementary cdf of the conditional SINR variable, assembled from
// coefficients enumerated composition-by-composition instead of by truncated
// polynomial convolution. Per-interferer terms use lgamma and pow rather
// than the library's running recurrences.
inline double enumerated_ccdf(double beta0, double z, const cellsim::OutageContext& ctx) {
  const int m0 = ctx.m0;
  const double h_over_g = ctx.chip_factor / ctx.spread_factor;
  const std::size_t n_int = ctx.interferers.size();

  std::vector<std::vector<double>> terms(n_int, std::vector<double>(m0));
  for (std::size_t i = 0; i < n_int; ++i) {
    const double m = ctx.interferers[i].m;
    const double u = h_over_g * ctx.interferers[i].omega / m;
    const double psi = 1.0 / (beta0 * u + 1.0);
    for (int l = 0; l < m0; ++l) {
      terms[i][l] = std::exp(std::lgamma(l + m) - std::lgamma(l + 1.0) - std::lgamma(m)) *
                    std::pow(u, l) * std::pow(psi, m + l);
    }
  }

  std::vector<double> h(m0, 0.0);
  for (int k = 0; k < m0; ++k) detail::add_compositions(terms, 0, k, 1.0, h[k]);

  double total = 0.0;
  for (int n = 0; n < m0; ++n) {
    double inner = 0.0;
    for (int k = 0; k <= n; ++k) {
      inner += std::pow(z, -k) * h[k] / std::tgamma(n - k + 1.0);
    }
    total += std::pow(beta0 * z, n) * inner;
  }
  return std::exp(-beta0 * z) * total;
}

// Power share that holds one mobile at the target outage for a given common
// threshold, by bisection on the share alone. full_ctx carries the mobile's
// full-power omega0.
inline double share_for_threshold(double beta, const cellsim::OutageContext& full_ctx,
                                  double epsilon_hat) {
  auto outage_at = [&](double phi) {
    cellsim::OutageContext c = full_ctx;
    c.omega0 = full_ctx.omega0 * phi;
    return cellsim::outage_probability(beta, c);
  };
  // Outage falls as the share grows.
  double lo = 1.0;
  double hi = 1.0;
  while (outage_at(lo) < epsilon_hat && lo > 1e-14) lo /= 8.0;
  while (outage_at(hi) > epsilon_hat && hi < 1e14) hi *= 8.0;
  double mid = std::sqrt(lo * hi);
  for (int it = 0; it < 300; ++it) {
    mid = std::sqrt(lo * hi);
    const double eps = outage_at(mid);
    if (std::fabs(eps - epsilon_hat) <= 1e-12) break;
    if (eps > epsilon_hat) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

// Common threshold a cell can sustain under a sum-of-shares budget, by
// nested bisection: the outer loop moves the shared threshold, the inner
// loop (share_for_threshold) prices each mobile at it. Independent of the
// closed-form split used by the library's power control.
inline double nested_bisect_power_threshold(const std::vector<cellsim::OutageContext>& full_ctxs,
                                            double budget, double epsilon_hat) {
  auto total_share = [&](double beta) {
    double s = 0.0;
    for (const cellsim::OutageContext& c : full_ctxs) {
      s += share_for_threshold(beta, c, epsilon_hat);
    }
    return s;
  };
  // Total demand grows with the threshold.
  double lo = 1.0;
  double hi = 1.0;
  while (total_share(lo) > budget && lo > 1e-12) lo /= 8.0;
  while (total_share(hi) < budget && hi < 1e12) hi *= 8.0;
  double mid = std::sqrt(lo * hi);
  for (int it = 0; it < 200; ++it) {
    mid = std::sqrt(lo * hi);
    const double s = total_share(mid);
    if (std::fabs(s - budget) <= 1e-10 * budget) break;
    if (s < budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

}  // namespace testref
