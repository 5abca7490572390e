#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lshpriv/history_gen.hpp"
#include "lshpriv/trajectory.hpp"

namespace lshpriv {

struct MissingColumnError : std::runtime_error {
  explicit MissingColumnError(const std::string& column)
      : std::runtime_error("input is missing required column: " + column) {}
};

struct LoadStats {
  size_t rows_in = 0;
  size_t rows_parsed = 0;
  size_t rows_skipped = 0;
  std::vector<std::string> skip_samples;  // first few skip reasons
};

struct RatingsLoad {
  Vocabulary vocabulary;
  std::vector<uint64_t> user_ids;   // ascending
  std::vector<History> histories;   // aligned with user_ids
  LoadStats stats;
};

// MovieLens-style CSV (userId,movieId,rating,timestamp with a header row).
// Vocabulary is the top_k_items most frequent items (ties broken by
// ascending item id); each user's history is their items restricted to the
// vocabulary, truncated to the max_history_len most recent by timestamp.
// Users whose history ends up empty are dropped.
RatingsLoad load_ratings(const std::string& path, size_t top_k_items,
                         size_t max_history_len);

struct TrajectoryLoad {
  std::vector<Trajectory> trajectories;  // vehicle_id = 1..n in file order
  LoadStats stats;
};

// Porto-style CSV with a POLYLINE column holding "[[lon,lat],...]".
// Malformed rows are counted and skipped, never fatal; parsing stops after
// `limit` parseable rows (0 = no limit).
TrajectoryLoad load_trajectories(const std::string& path, size_t limit);

// Seeded random partition into (train, test) with |train| = round of
// train_fraction * size. Fraction must be strictly inside (0, 1).
std::pair<std::vector<History>, std::vector<History>> split_histories(
    const std::vector<History>& histories, double train_fraction,
    uint64_t seed);

}  // namespace lshpriv
