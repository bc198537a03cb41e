#pragma once

#include <vector>

#include "cellsim/association.hpp"
#include "cellsim/outage.hpp"
#include "cellsim/propagation.hpp"

namespace cellsim {

enum class PolicyKind { rate_control, power_control };

const char* policy_name(PolicyKind kind);

// Shared radio-layer constants. gain_scale converts the raw link gains of a
// LinkTable into the normalized powers the outage kernel expects; it is the
// inverse path loss at the reference distance, so the unit-power SNR gamma
// keeps its meaning for links at that distance.
struct RadioParams {
  double gamma = 10.0;             // linear SNR at unit normalized power
  double spread_factor = 16.0;     // processing gain G
  double chip_factor = 2.0 / 3.0;  // mean chip-waveform attenuation h
  double gain_scale = 1.0;
};

struct PolicyParams {
  double epsilon_hat = 0.1;     // outage probability every served link is held to
  double pilot_fraction = 0.1;  // station power reserved for overhead
};

struct MobileAllocation {
  bool served = false;
  double beta = 0.0;  // SINR threshold the link sustains at the target outage
  double phi = 0.0;   // power share granted by the serving station
  double rate = 0.0;  // log2(1 + beta); zero when denied
};

struct PolicyOutcome {
  PolicyKind policy = PolicyKind::rate_control;
  std::vector<MobileAllocation> mobiles;
};

double shannon_rate(double beta);

// Interference context of one served mobile: every station except the
// serving one contributes a scaled link gain; omega0 is left at 1 because
// the normalized threshold solve does not use it.
OutageContext interference_context(const LinkTable& links, const Assignment& assignment,
                                   int mobile, const RadioParams& radio);

// Per-mobile normalized threshold beta0 = beta * m0 / omega0 meeting the
// outage target. Independent of the power share, so one solve serves both
// policies; entries for denied mobiles are zero.
std::vector<double> solve_beta0_star(const LinkTable& links, const Assignment& assignment,
                                     const RadioParams& radio, double epsilon_hat);

// Rate control: each station splits its usable power evenly over its K_i
// served mobiles (phi = (1 - f_p) / K_i) and each link gets the largest
// threshold its outage constraint allows, so rates vary per mobile.
PolicyOutcome rate_control(const LinkTable& links, const Assignment& assignment,
                           const RadioParams& radio, const PolicyParams& params);
PolicyOutcome rate_control(const LinkTable& links, const Assignment& assignment,
                           const RadioParams& radio, const PolicyParams& params,
                           const std::vector<double>& beta0_star);

// Power control: each station instead equalizes the threshold across its
// served mobiles, spending its usable power budget exactly. The common
// threshold has the closed form
//
//   beta_cell = (1 - f_p) / sum_j m0_j / (beta0*_j w_j)
//
// and the shares phi_j = beta_cell m0_j / (beta0*_j w_j) recover it per link.
PolicyOutcome power_control(const LinkTable& links, const Assignment& assignment,
                            const RadioParams& radio, const PolicyParams& params);
PolicyOutcome power_control(const LinkTable& links, const Assignment& assignment,
                            const RadioParams& radio, const PolicyParams& params,
                            const std::vector<double>& beta0_star);

}  // namespace cellsim
