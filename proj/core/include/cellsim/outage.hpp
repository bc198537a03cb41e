#pragma once

#include <cstdint>
#include <vector>

#include "cellsim/rng.hpp"

namespace cellsim {

// One interfering station as seen by a mobile: normalized received power
// (before despreading) and the Nakagami parameter of that link.
struct Interferer {
  double omega = 0.0;
  double m = 1.0;
};

// Everything the conditional outage probability of one mobile depends on
// besides the SINR threshold. Powers are normalized to the total station
// power; `gamma` is the linear SNR a link with unit normalized power would
// see, so noise enters only through it.
struct OutageContext {
  double omega0 = 1.0;             // despread serving power (power share included)
  int m0 = 1;                      // serving-link Nakagami parameter, integer >= 1
  double gamma = 10.0;             // SNR at unit normalized power, linear
  double spread_factor = 16.0;     // processing gain G
  double chip_factor = 2.0 / 3.0;  // mean chip-waveform attenuation h
  std::vector<Interferer> interferers;
};

// Complementary cdf of the conditional SINR variable evaluated at z, with
// beta0 the threshold normalized by the serving link (beta * m0 / omega0):
//
//   Fbar(z) = exp(-beta0 z) * sum_{n=0}^{m0-1} (beta0 z)^n
//             * sum_{k=0}^{n} z^-k H_k / (n-k)!
//
// H_k is the degree-k coefficient of the product over interferers of the
// per-link series with terms G_l(psi_i), psi_i = (beta0 h omega_i / (G m_i)
// + 1)^-1. The product is evaluated by truncated polynomial convolution,
// which is algebraically identical to enumerating index compositions but
// costs O(#interferers * m0^2).
//
// ccdf_z clamps the result to [0, 1]; the unclamped variant exposes the raw
// floating-point sum so numeric drift can be measured.
double ccdf_z(double beta0, double z, const OutageContext& ctx);
double ccdf_z_unclamped(double beta0, double z, const OutageContext& ctx);

// Conditional outage probability at SINR threshold beta: the cdf evaluated
// at z = 1/gamma with beta0 = beta * m0 / omega0.
double outage_probability(double beta, const OutageContext& ctx);

// Smallest SINR threshold whose outage probability equals epsilon_hat, to
// |outage(beta) - epsilon_hat| <= 1e-9. Outage is continuous and strictly
// increasing in beta, so the root is unique; found by geometric bracket
// expansion followed by bisection in log beta.
double invert_outage(double epsilon_hat, const OutageContext& ctx);

// Same inversion in the normalized variable beta0 = beta * m0 / omega0,
// which does not depend on omega0. One solve per mobile serves any power
// share: beta = beta0_star * omega0 / m0.
double invert_outage_beta0(double epsilon_hat, const OutageContext& ctx);

struct OracleEstimate {
  double epsilon = 0.0;
  double std_error = 0.0;
};

// Monte Carlo estimate of the outage probability by direct simulation of
// the fading: per draw, gamma-distributed unit-mean power gains on every
// link, outage when the resulting SINR is at or below beta. Returns the
// outage frequency and its binomial standard error.
OracleEstimate fading_oracle(double beta, const OutageContext& ctx, long n_draws,
                             RngStream& rng);

}  // namespace cellsim
