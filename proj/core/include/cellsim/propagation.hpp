#pragma once

#include <cstddef>
#include <vector>

#include "cellsim/geometry.hpp"
#include "cellsim/rng.hpp"

namespace cellsim {

struct PropagationParams {
  double alpha = 3.0;          // path-loss exponent, >= 2
  double d0 = 1e-3;            // reference distance; gain clamps to 1 below it
  double sigma_s_dB = 8.0;     // log-normal shadowing std dev; 0 disables
  int m_serving = 3;           // Nakagami parameter on the serving link (integer)
  double m_interfering = 1.0;  // Nakagami parameter on interfering links
};

// Attenuation power law (d/d0)^-alpha, clamped to 1 in the near field d < d0.
double path_loss(double d, const PropagationParams& params);

// Per-(station, mobile) link state for one realization. Row-major M x K.
// The Nakagami field is role-dependent (serving vs interfering) and is only
// populated once the association is known; see assign_nakagami().
class LinkTable {
 public:
  LinkTable(std::size_t num_stations, std::size_t num_mobiles);

  std::size_t num_stations() const { return m_; }
  std::size_t num_mobiles() const { return k_; }

  double distance(std::size_t i, std::size_t j) const { return d_[i * k_ + j]; }
  double shadow_dB(std::size_t i, std::size_t j) const { return shadow_[i * k_ + j]; }
  double gain(std::size_t i, std::size_t j) const { return w_[i * k_ + j]; }
  double nakagami(std::size_t i, std::size_t j) const { return m_param_[i * k_ + j]; }
  bool nakagami_assigned() const { return nakagami_assigned_; }

  void set_link(std::size_t i, std::size_t j, double d, double shadow_dB, double w) {
    d_[i * k_ + j] = d;
    shadow_[i * k_ + j] = shadow_dB;
    w_[i * k_ + j] = w;
  }
  void set_nakagami(std::size_t i, std::size_t j, double m) { m_param_[i * k_ + j] = m; }
  void mark_nakagami_assigned() { nakagami_assigned_ = true; }

 private:
  std::size_t m_;
  std::size_t k_;
  std::vector<double> d_;
  std::vector<double> shadow_;
  std::vector<double> w_;
  std::vector<double> m_param_;
  bool nakagami_assigned_ = false;
};

// Fills distances, shadowing factors, and channel gains
// w = 10^(shadow_dB/10) * path_loss(d). Shadowing factors are i.i.d.
// zero-mean Gaussian in dB, drawn once per realization (all zero when
// sigma_s_dB = 0).
LinkTable build_link_table(const NetworkRealization& net, const PropagationParams& params,
                           RngStream& rng);

}  // namespace cellsim
