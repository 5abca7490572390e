#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lshpriv/lsh_core.hpp"
#include "lshpriv/trajectory.hpp"

namespace lshpriv {

struct NoPointsError : std::invalid_argument {
  NoPointsError() : std::invalid_argument("no points to fit a grid on") {}
};

struct DegenerateExtentError : std::invalid_argument {
  DegenerateExtentError()
      : std::invalid_argument("grid bounds collapse to a point or line") {}
};

struct FamilyMismatchError : std::invalid_argument {
  FamilyMismatchError()
      : std::invalid_argument("signature does not match the grid's family") {}
};

struct GridBounds {
  double lon_min, lon_max;
  double lat_min, lat_max;
};

// Rectangular checkpoint grid. Cells are indexed row-major; row 0 is the
// minimum-latitude strip. Boundary coordinates land in the lower-index cell;
// points outside the bounds map to no cell.
class CheckpointGrid {
 public:
  CheckpointGrid(size_t rows, size_t cols, GridBounds bounds);

  // Bounds are the (trim_low, trim_high) percentiles of all point
  // longitudes/latitudes across the trajectories (nearest-rank).
  static CheckpointGrid fit(const std::vector<Trajectory>& trajectories,
                            size_t rows, size_t cols, double trim_low_pct,
                            double trim_high_pct);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t cell_count() const { return rows_ * cols_; }
  const GridBounds& bounds() const { return bounds_; }

  std::optional<size_t> cell_of(GeoPoint p) const;

 private:
  size_t rows_, cols_;
  GridBounds bounds_;
};

// Sorted unique cell indices touched by the trajectory's in-bounds points.
std::vector<uint32_t> visited_cells(const CheckpointGrid& grid,
                                    const Trajectory& t);

// Grid plus the per-checkpoint MinHash signatures accumulated under one
// fixed hash family.
struct CheckpointField {
  CheckpointGrid grid;
  HashFamily family;
  std::vector<MinHashSignature> signatures;  // cell_count entries

  const MinHashSignature& signature(size_t cell) const {
    return signatures[cell];
  }

  // Versioned binary snapshot (dims, bounds, family params, signatures).
  void save(std::ostream& os) const;
  static CheckpointField load(std::istream& is);
};

// Streams every trajectory through the grid: each visited cell's signature
// absorbs the vehicle id. Workers accumulate privately and min-merge, which
// equals sequential accumulation.
CheckpointField accumulate(const CheckpointGrid& grid,
                           const std::vector<Trajectory>& trajectories,
                           const HashFamily& family, unsigned threads = 0);

// Output of either attack: black = equality witness (likely visited),
// white = provably excluded, gray = undecided. Disjoint, union = universe.
struct Partition {
  std::vector<uint64_t> black;
  std::vector<uint64_t> gray;
  std::vector<uint64_t> white;

  size_t universe_size() const {
    return black.size() + gray.size() + white.size();
  }
};

// (|black| + |gray|) / total.
double coverage_ratio(const Partition& p, size_t total);

// Per-vehicle signature: MinHash of the singleton {vehicle_id}.
MinHashSignature vehicle_signature(const HashFamily& family,
                                   uint64_t vehicle_id);

// Splits all checkpoints for one vehicle signature: white where some
// coordinate of z is below the checkpoint's, black where none is below and
// some is equal, gray otherwise.
Partition attack_checkpoints(const CheckpointField& field,
                             const MinHashSignature& z);

// Same split over a vehicle universe for one checkpoint.
Partition attack_vehicles(const CheckpointField& field, size_t cell,
                          const std::vector<uint64_t>& vehicles);
// Variant taking precomputed vehicle signatures (id, signature) pairs.
Partition attack_vehicles(
    const CheckpointField& field, size_t cell,
    const std::vector<std::pair<uint64_t, MinHashSignature>>& vehicle_sigs);

// Batched attack over the whole vehicle population (counts only). Computes
// the same partition sizes as attack_checkpoints per vehicle, organized as
// per-coordinate sweeps so Porto-scale runs stay fast.
struct VehicleCoverage {
  uint64_t vehicle_id = 0;
  size_t black = 0;
  size_t gray = 0;
  size_t white = 0;
  double a_z = 0.0;  // (black + gray) / cells
};
std::vector<VehicleCoverage> attack_all_vehicles(
    const CheckpointField& field, const std::vector<uint64_t>& vehicle_ids,
    unsigned threads = 0);

// Executable refutation of the checkpoint signature's differential-privacy
// claim: with ids ordered by descending hash, removing the last individual
// changes the (deterministic) output with certainty.
struct DpWitness {
  std::vector<uint64_t> ordered_ids;  // hash strictly decreasing
  uint64_t output_with_last = 0;      // A(D1) = h(last id)
  uint64_t output_without_last = 0;   // A(D2)
  uint64_t target_output = 0;         // the O that breaks the inequality
  double prob_d1 = 1.0;               // P[A(D1) = O]
  double prob_d2 = 0.0;               // P[A(D2) = O]
};
DpWitness dp_counterexample(const std::vector<uint64_t>& ids,
                            const HashFamily& family_k1);
DpWitness dp_counterexample(uint64_t n, const HashFamily& family_k1);

// 8-bit portable graymap, one pixel per checkpoint.
void write_pgm(const std::string& path, size_t rows, size_t cols,
               const std::vector<uint8_t>& pixels);
// Brightness proportional to per-cell visit counts.
std::vector<uint8_t> visit_count_pixels(const std::vector<uint32_t>& counts);
// Partition rendering: black = 0, gray = 128, white = 255.
std::vector<uint8_t> partition_pixels(const Partition& p, size_t cell_count);

}  // namespace lshpriv
