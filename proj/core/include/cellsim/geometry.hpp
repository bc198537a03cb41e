#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "cellsim/rng.hpp"

namespace cellsim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

inline double norm(const Vec2& p) { return std::sqrt(p.x * p.x + p.y * p.y); }

// Finite network region: a disk centered at the origin.
struct Disk {
  double radius = 1.0;
  double area() const { return M_PI * radius * radius; }
};

// How to place one class of points (base stations or mobiles).
struct PlacementSpec {
  int count = 1;
  double exclusion_radius = 0.0;  // minimum pairwise distance within the class
  int max_attempts_per_point = 1000;
  int max_redraws = 100;
};

struct NetworkRealization {
  Disk disk;
  std::vector<Vec2> base_stations;
  std::vector<Vec2> mobiles;
};

// Draws `spec.count` points uniformly on the disk subject to a minimum
// pairwise separation. Points are drawn sequentially; a candidate falling
// within the exclusion radius of an accepted point is rejected and redrawn,
// up to max_attempts_per_point. If a point's attempt budget runs out, the
// whole set is discarded and redrawn, up to max_redraws.
//
// Throws PlacementInfeasible when the redraw budget is exhausted.
std::vector<Vec2> place_uniform_clustering(const Disk& disk, const PlacementSpec& spec,
                                           RngStream& rng);

// One network realization: base stations first, then mobiles. The two point
// classes repel only within their own class; a mobile may land arbitrarily
// close to a base station.
NetworkRealization draw_network(const Disk& disk, const PlacementSpec& bs_spec,
                                const PlacementSpec& mobile_spec, RngStream& rng);

}  // namespace cellsim
