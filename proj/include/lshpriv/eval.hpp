#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lshpriv/history_gen.hpp"
#include "lshpriv/minhash_hierarchy.hpp"
#include "lshpriv/preimage_ip.hpp"

namespace lshpriv {

// --- Pre-image benchmark (success rate / solve time per hash length) ---

struct BenchmarkRow {
  size_t bit_length = 0;
  double success_rate = 0.0;       // fraction of instances with a verified pre-image
  double mean_solve_seconds = 0.0; // solver time only, construction excluded
  size_t instances = 0;
};

struct IpBenchmarkConfig {
  std::vector<size_t> bit_lengths;  // ascending
  size_t targets_per_length = 100;
  size_t pool_size = 32;
  uint64_t node_budget = kDefaultNodeBudget;
  uint64_t seed = 0;
};

// Per-instance record so callers can re-check outcomes independently.
struct IpInstance {
  size_t index = 0;
  History pool;        // candidate history fed to the program
  History target;      // real history whose hash is attacked
  std::vector<char> success_at;          // aligned with config.bit_lengths
  std::vector<SolveResult> result_at;    // aligned with config.bit_lengths
};

// Instances are shared across bit lengths (same pool, same target history,
// longer hash prefix), so the empirical success rate is non-increasing in
// the bit length by construction. Success means a solver result that
// re-verifies against the scheme, never just the solver flag.
std::vector<BenchmarkRow> ip_benchmark(const IpBenchmarkConfig& config,
                                       const GeneratorSpec& pool_spec,
                                       const Vocabulary& vocab,
                                       const std::vector<History>& targets,
                                       const FingerprintScheme& scheme,
                                       std::vector<IpInstance>* details = nullptr);

void write_benchmark_csv(std::ostream& os, const IpBenchmarkConfig& config,
                         const std::vector<BenchmarkRow>& rows);

// --- History-overlap study (Table 5 / Figs. 5-6 shape) ---

struct OverlapSummary {
  std::vector<double> per_target;  // I_i, one per target
  double q = 0.0;                  // mean of per_target
  double sd = 0.0;
  // Fraction of targets recovering >= 10% of the target history length.
  double fraction_over_threshold = 0.0;
  std::vector<uint64_t> histogram;  // common-item counts, bins 0..13 (last bin clamps)
};

struct OverlapStudyConfig {
  size_t per_target_count = 200;  // histories kept per target and stage
  size_t bits = 15;
  uint64_t node_budget = 1'000'000;
  size_t max_attempt_factor = 10;  // generation cap = factor * per_target_count
  uint64_t seed = 0;
};

struct OverlapStudyResult {
  OverlapSummary generator_stage;  // raw generated histories
  OverlapSummary ip_stage;         // verified pre-image selections
  size_t solves = 0;
  size_t solve_successes = 0;
};

OverlapStudyResult overlap_study(const std::vector<History>& targets,
                                 const GeneratorSpec& spec,
                                 const Vocabulary& vocab,
                                 const FingerprintScheme& scheme,
                                 const OverlapStudyConfig& config);

void write_overlap_csv(std::ostream& os, const std::string& label,
                       const OverlapStudyConfig& config,
                       const OverlapStudyResult& result);

// --- Trajectory coverage study (A_z statistics, heatmap artifacts) ---

struct TrajectoryStudyConfig {
  unsigned threads = 0;
  std::string heatmap_dir;     // empty: no artifacts written
  size_t heatmap_examples = 2; // per-vehicle target/recovered pairs
};

struct TrajectoryStudyResult {
  size_t vehicles = 0;
  size_t checkpoints = 0;
  double mean_az = 0.0;
  double sd_az = 0.0;
  double mean_true_size = 0.0;   // ground-truth visited checkpoints
  double sd_true_size = 0.0;
  double mean_recovered = 0.0;   // |black| + |gray|
  double sd_recovered = 0.0;
  std::vector<VehicleCoverage> per_vehicle;
};

TrajectoryStudyResult trajectory_study(
    const CheckpointField& field, const std::vector<Trajectory>& trajectories,
    const TrajectoryStudyConfig& config);

void write_trajectory_csv(std::ostream& os, const TrajectoryStudyResult& r,
                          const HashFamily& family, uint64_t seed);

// One-sided two-proportion z-test: is p1 > p2 at the given z threshold
// (1.645 for 95%)? Returns the z statistic through *z_out when non-null.
bool proportion_greater(size_t hits1, size_t n1, size_t hits2, size_t n2,
                        double z_threshold, double* z_out = nullptr);

}  // namespace lshpriv
