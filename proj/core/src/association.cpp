#include "cellsim/association.hpp"

#include <algorithm>

#include "cellsim/errors.hpp"

namespace cellsim {

std::size_t Assignment::total_served() const {
  std::size_t n = 0;
  for (const auto& cell : members_) n += cell.size();
  return n;
}

Assignment associate(const LinkTable& links, int capacity) {
  if (capacity < 1) throw DomainError("station capacity must be >= 1");
  const std::size_t m = links.num_stations();
  const std::size_t k = links.num_mobiles();
  Assignment assignment(m, k);

  // Each mobile prefers the station with the largest gain; lower index wins ties.
  std::vector<std::vector<int>> candidates(m);
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t best = 0;
    double best_gain = links.gain(0, j);
    for (std::size_t i = 1; i < m; ++i) {
      if (links.gain(i, j) > best_gain) {
        best_gain = links.gain(i, j);
        best = i;
      }
    }
    candidates[best].push_back(static_cast<int>(j));
  }

  // Capacity pass: an oversubscribed station keeps the `capacity` mobiles
  // with the largest gains and denies the rest.
  for (std::size_t i = 0; i < m; ++i) {
    auto& wanting = candidates[i];
    if (static_cast<int>(wanting.size()) > capacity) {
      std::sort(wanting.begin(), wanting.end(), [&](int a, int b) {
        const double wa = links.gain(i, static_cast<std::size_t>(a));
        const double wb = links.gain(i, static_cast<std::size_t>(b));
        if (wa != wb) return wa > wb;
        return a < b;
      });
      wanting.resize(static_cast<std::size_t>(capacity));
    }
    std::sort(wanting.begin(), wanting.end());
    for (int j : wanting) assignment.serve(static_cast<std::size_t>(j), static_cast<int>(i));
  }
  return assignment;
}

void assign_nakagami(LinkTable& links, const Assignment& assignment,
                     const PropagationParams& params) {
  const std::size_t m = links.num_stations();
  const std::size_t k = links.num_mobiles();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const bool serving = assignment.serving_station(j) == static_cast<int>(i);
      links.set_nakagami(i, j, serving ? static_cast<double>(params.m_serving)
                                       : params.m_interfering);
    }
  }
  links.mark_nakagami_assigned();
}

}  // namespace cellsim
