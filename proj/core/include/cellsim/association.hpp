#pragma once

#include <cstddef>
#include <vector>

#include "cellsim/propagation.hpp"

namespace cellsim {

// Serving-cell map. Stations are indexed 0..M-1 internally; a denied mobile
// has serving station -1 (serialized as 0 with 1-based station ids).
class Assignment {
 public:
  explicit Assignment(std::size_t num_stations, std::size_t num_mobiles)
      : serving_(num_mobiles, -1), members_(num_stations) {}

  int serving_station(std::size_t mobile) const { return serving_[mobile]; }
  bool is_served(std::size_t mobile) const { return serving_[mobile] >= 0; }
  const std::vector<int>& members(std::size_t station) const { return members_[station]; }
  std::size_t num_stations() const { return members_.size(); }
  std::size_t num_mobiles() const { return serving_.size(); }

  std::size_t served_count(std::size_t station) const { return members_[station].size(); }
  std::size_t total_served() const;
  std::size_t denied_count() const { return num_mobiles() - total_served(); }

  void serve(std::size_t mobile, int station) {
    serving_[mobile] = station;
    members_[static_cast<std::size_t>(station)].push_back(static_cast<int>(mobile));
  }

 private:
  std::vector<int> serving_;
  std::vector<std::vector<int>> members_;
};

// Connects each mobile to its maximum-gain station (minimum path loss,
// shadowing included). A station serves at most `capacity` mobiles; when
// oversubscribed, the mobiles with the smallest gains are denied outright.
// Ties on gain prefer the lower station index; ties at the denial boundary
// deny the higher mobile index first. Denied mobiles do not fall back to a
// second-choice station.
Assignment associate(const LinkTable& links, int capacity);

// Stamps the role-dependent Nakagami parameter into the table: m_serving on
// each mobile's serving link, m_interfering everywhere else (denied mobiles
// see every station as interfering).
void assign_nakagami(LinkTable& links, const Assignment& assignment,
                     const PropagationParams& params);

}  // namespace cellsim
