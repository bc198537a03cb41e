#include "cellsim/outage.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cellsim/errors.hpp"

namespace cellsim {

namespace {

void check_context(const OutageContext& ctx) {
  if (ctx.m0 < 1) throw DomainError("serving Nakagami parameter must be a positive integer");
  if (!(ctx.spread_factor > 0.0)) throw DomainError("spread factor must be positive");
  if (!(ctx.chip_factor > 0.0)) throw DomainError("chip factor must be positive");
  for (const Interferer& itf : ctx.interferers) {
    if (!(itf.m > 0.0)) throw DomainError("interferer Nakagami parameter must be positive");
    if (!(itf.omega >= 0.0)) throw DomainError("interferer power must be nonnegative");
  }
}

double pow_positive(double base, double exponent) {
  double rounded = std::nearbyint(exponent);
  if (rounded == exponent && rounded >= 1.0 && rounded <= 8.0) {
    double acc = base;
    for (int i = 1; i < static_cast<int>(rounded); ++i) acc *= base;
    return acc;
  }
  return std::pow(base, exponent);
}

constexpr int kStackOrder = 16;

}  // namespace

double ccdf_z_unclamped(double beta0, double z, const OutageContext& ctx) {
  check_context(ctx);
  if (!(beta0 > 0.0)) throw DomainError("normalized threshold must be positive");
  if (!(z > 0.0)) throw DomainError("ccdf argument must be positive");

  const int m0 = ctx.m0;
  const double h_over_g = ctx.chip_factor / ctx.spread_factor;

  double coeff_stack[kStackOrder];
  double series_stack[kStackOrder];
  double next_stack[kStackOrder];
  std::vector<double> heap;
  double* coeff = coeff_stack;
  double* series = series_stack;
  double* next = next_stack;
  if (m0 > kStackOrder) {
    heap.assign(static_cast<std::size_t>(m0) * 3, 0.0);
    coeff = heap.data();
    series = coeff + m0;
    next = series + m0;
  }

  // coeff accumulates the H_k, built up one interferer at a time by
  // polynomial multiplication truncated at degree m0-1.
  coeff[0] = 1.0;
  std::fill(coeff + 1, coeff + m0, 0.0);
  for (const Interferer& itf : ctx.interferers) {
    // effective despread interferer power enters both psi and the series
    const double u = h_over_g * itf.omega / itf.m;
    const double psi = 1.0 / (beta0 * u + 1.0);
    series[0] = pow_positive(psi, itf.m);
    const double step = u * psi;
    for (int l = 0; l + 1 < m0; ++l) {
      series[l + 1] = series[l] * ((l + itf.m) / (l + 1)) * step;
    }
    std::fill(next, next + m0, 0.0);
    for (int a = 0; a < m0; ++a) {
      if (coeff[a] == 0.0) continue;
      for (int b = 0; a + b < m0; ++b) next[a + b] += coeff[a] * series[b];
    }
    std::swap(coeff, next);
  }

  const double bz = beta0 * z;
  double total = 0.0;
  double bz_pow = 1.0;  // (beta0 z)^n
  for (int n = 0; n < m0; ++n) {
    double inv_fact = 1.0;  // 1/(n-k)! built from k=n downward
    for (int j = 2; j <= n; ++j) inv_fact /= j;  // start at 1/n!
    double z_neg = 1.0;  // z^-k
    double inner = 0.0;
    for (int k = 0; k <= n; ++k) {
      inner += z_neg * coeff[k] * inv_fact;
      z_neg /= z;
      inv_fact *= n - k;  // 1/(n-k)! -> 1/(n-k-1)!
    }
    total += bz_pow * inner;
    bz_pow *= bz;
  }
  return std::exp(-bz) * total;
}

double ccdf_z(double beta0, double z, const OutageContext& ctx) {
  return std::clamp(ccdf_z_unclamped(beta0, z, ctx), 0.0, 1.0);
}

double outage_probability(double beta, const OutageContext& ctx) {
  if (!(beta > 0.0)) throw DomainError("SINR threshold must be positive");
  if (!(ctx.omega0 > 0.0)) throw DomainError("serving power must be positive");
  if (!(ctx.gamma > 0.0)) throw DomainError("unit-power SNR must be positive");
  const double beta0 = beta * ctx.m0 / ctx.omega0;
  return 1.0 - ccdf_z(beta0, 1.0 / ctx.gamma, ctx);
}

namespace {

constexpr double kBracketLo = 1e-12;
constexpr double kBracketHi = 1e12;
constexpr double kInvertTol = 1e-9;

double outage_at_beta0(double beta0, double z, const OutageContext& ctx) {
  return 1.0 - ccdf_z(beta0, z, ctx);
}

}  // namespace

double invert_outage_beta0(double epsilon_hat, const OutageContext& ctx) {
  check_context(ctx);
  if (!(ctx.gamma > 0.0)) throw DomainError("unit-power SNR must be positive");
  if (!(epsilon_hat > 0.0 && epsilon_hat < 1.0)) {
    throw DomainError("target outage probability must lie strictly inside (0, 1)");
  }
  const double z = 1.0 / ctx.gamma;

  // Outage is increasing in beta0. Expand a bracket geometrically from 1,
  // then bisect the log-scaled interval.
  double lo = 1.0;
  double hi = 1.0;
  while (outage_at_beta0(hi, z, ctx) < epsilon_hat) {
    if (hi >= kBracketHi) {
      throw BracketFailure("no threshold below 1e12 reaches the target outage probability");
    }
    lo = hi;
    hi = std::min(hi * 10.0, kBracketHi);
  }
  while (outage_at_beta0(lo, z, ctx) > epsilon_hat) {
    if (lo <= kBracketLo) {
      throw BracketFailure("outage still exceeds the target at the 1e-12 threshold floor");
    }
    hi = lo;
    lo = std::max(lo / 10.0, kBracketLo);
  }

  double mid = std::sqrt(lo * hi);
  for (int it = 0; it < 200; ++it) {
    mid = std::sqrt(lo * hi);
    const double eps = outage_at_beta0(mid, z, ctx);
    if (std::fabs(eps - epsilon_hat) <= kInvertTol) return mid;
    if (eps < epsilon_hat) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

double invert_outage(double epsilon_hat, const OutageContext& ctx) {
  if (!(ctx.omega0 > 0.0)) throw DomainError("serving power must be positive");
  return invert_outage_beta0(epsilon_hat, ctx) * ctx.omega0 / ctx.m0;
}

OracleEstimate fading_oracle(double beta, const OutageContext& ctx, long n_draws,
                             RngStream& rng) {
  check_context(ctx);
  if (!(beta > 0.0)) throw DomainError("SINR threshold must be positive");
  if (!(ctx.omega0 > 0.0)) throw DomainError("serving power must be positive");
  if (!(ctx.gamma > 0.0)) throw DomainError("unit-power SNR must be positive");
  if (n_draws < 1) throw DomainError("oracle needs at least one draw");

  const double h_over_g = ctx.chip_factor / ctx.spread_factor;
  const double inv_gamma = 1.0 / ctx.gamma;
  const double m0 = ctx.m0;
  long outages = 0;
  for (long d = 0; d < n_draws; ++d) {
    const double g0 = rng.gamma(m0) / m0;  // unit-mean power gain
    double interference = 0.0;
    for (const Interferer& itf : ctx.interferers) {
      if (itf.omega == 0.0) continue;
      interference += rng.gamma(itf.m) / itf.m * itf.omega;
    }
    const double sinr = g0 * ctx.omega0 / (inv_gamma + h_over_g * interference);
    if (sinr <= beta) ++outages;
  }
  const double eps = static_cast<double>(outages) / static_cast<double>(n_draws);
  const double se = std::sqrt(eps * (1.0 - eps) / static_cast<double>(n_draws));
  return {eps, se};
}

}  // namespace cellsim
