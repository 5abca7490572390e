#pragma once

#include <cstdint>
#include <vector>

namespace lshpriv {

struct GeoPoint {
  double lon = 0.0;
  double lat = 0.0;
};

// One vehicle's ordered point sequence. Point order is kept for rendering;
// the attacks themselves only use the visited-cell set.
struct Trajectory {
  uint64_t vehicle_id = 0;
  std::vector<GeoPoint> points;
};

}  // namespace lshpriv
