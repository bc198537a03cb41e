#include "cellsim/propagation.hpp"

#include <cmath>

#include "cellsim/errors.hpp"

namespace cellsim {

double path_loss(double d, const PropagationParams& params) {
  if (d < 0.0) throw DomainError("distance must be >= 0");
  if (d < params.d0) return 1.0;
  return std::pow(d / params.d0, -params.alpha);
}

LinkTable::LinkTable(std::size_t num_stations, std::size_t num_mobiles)
    : m_(num_stations),
      k_(num_mobiles),
      d_(num_stations * num_mobiles, 0.0),
      shadow_(num_stations * num_mobiles, 0.0),
      w_(num_stations * num_mobiles, 0.0),
      m_param_(num_stations * num_mobiles, 0.0) {}

LinkTable build_link_table(const NetworkRealization& net, const PropagationParams& params,
                           RngStream& rng) {
  const std::size_t m = net.base_stations.size();
  const std::size_t k = net.mobiles.size();
  LinkTable table(m, k);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double d = distance(net.base_stations[i], net.mobiles[j]);
      const double shadow_dB = params.sigma_s_dB > 0.0 ? params.sigma_s_dB * rng.normal() : 0.0;
      const double w = std::pow(10.0, shadow_dB / 10.0) * path_loss(d, params);
      table.set_link(i, j, d, shadow_dB, w);
    }
  }
  return table;
}

}  // namespace cellsim
