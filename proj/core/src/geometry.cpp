#include "cellsim/geometry.hpp"

#include <string>

#include "cellsim/errors.hpp"

namespace cellsim {

namespace {

Vec2 uniform_on_disk(const Disk& disk, RngStream& rng) {
  const double r = disk.radius * std::sqrt(rng.uniform01());
  const double theta = 2.0 * M_PI * rng.uniform01();
  return {r * std::cos(theta), r * std::sin(theta)};
}

bool clear_of(const std::vector<Vec2>& accepted, const Vec2& candidate, double min_dist) {
  for (const Vec2& p : accepted) {
    const double dx = p.x - candidate.x;
    const double dy = p.y - candidate.y;
    if (dx * dx + dy * dy < min_dist * min_dist) return false;
  }
  return true;
}

}  // namespace

std::vector<Vec2> place_uniform_clustering(const Disk& disk, const PlacementSpec& spec,
                                           RngStream& rng) {
  if (spec.count < 1) throw DomainError("placement count must be >= 1");
  if (disk.radius <= 0.0) throw DomainError("disk radius must be positive");
  if (spec.exclusion_radius < 0.0) throw DomainError("exclusion radius must be >= 0");
  if (spec.count >= 2 && spec.exclusion_radius >= 2.0 * disk.radius) {
    throw PlacementInfeasible("exclusion radius " + std::to_string(spec.exclusion_radius) +
                              " cannot separate " + std::to_string(spec.count) +
                              " points on a disk of radius " + std::to_string(disk.radius));
  }

  std::vector<Vec2> points;
  points.reserve(static_cast<std::size_t>(spec.count));
  for (int redraw = 0; redraw <= spec.max_redraws; ++redraw) {
    points.clear();
    bool stuck = false;
    while (static_cast<int>(points.size()) < spec.count) {
      bool placed = false;
      for (int attempt = 0; attempt < spec.max_attempts_per_point; ++attempt) {
        const Vec2 candidate = uniform_on_disk(disk, rng);
        if (spec.exclusion_radius == 0.0 ||
            clear_of(points, candidate, spec.exclusion_radius)) {
          points.push_back(candidate);
          placed = true;
          break;
        }
      }
      if (!placed) {
        stuck = true;
        break;
      }
    }
    if (!stuck) return points;
  }
  throw PlacementInfeasible("failed to place " + std::to_string(spec.count) +
                            " points with exclusion radius " +
                            std::to_string(spec.exclusion_radius) + " after " +
                            std::to_string(spec.max_redraws + 1) + " set draws");
}

NetworkRealization draw_network(const Disk& disk, const PlacementSpec& bs_spec,
                                const PlacementSpec& mobile_spec, RngStream& rng) {
  NetworkRealization net;
  net.disk = disk;
  net.base_stations = place_uniform_clustering(disk, bs_spec, rng);
  net.mobiles = place_uniform_clustering(disk, mobile_spec, rng);
  return net;
}

}  // namespace cellsim
