#include "lshpriv/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "lshpriv/util.hpp"

namespace lshpriv {

namespace {

History solution_subset(const History& pool, const SubsetSolution& sol) {
  std::vector<Domain> chosen;
  for (size_t i = 0; i < pool.items().size(); ++i) {
    if (sol.selection[i]) chosen.push_back(pool.items()[i]);
  }
  return History{std::move(chosen)};
}

void add_to_histogram(std::vector<uint64_t>& bins, size_t value) {
  size_t bin = std::min(value, bins.size() - 1);
  ++bins[bin];
}

}  // namespace

std::vector<BenchmarkRow> ip_benchmark(const IpBenchmarkConfig& config,
                                       const GeneratorSpec& pool_spec,
                                       const Vocabulary& vocab,
                                       const std::vector<History>& targets,
                                       const FingerprintScheme& scheme,
                                       std::vector<IpInstance>* details) {
  if (config.bit_lengths.empty()) {
    throw std::invalid_argument("need at least one bit length");
  }
  if (!std::is_sorted(config.bit_lengths.begin(), config.bit_lengths.end())) {
    throw std::invalid_argument("bit lengths must be ascending");
  }
  if (targets.empty()) throw std::invalid_argument("no target histories");

  GeneratorSpec spec = pool_spec;
  spec.rng_seed = derive_seed(config.seed, "ip-benchmark-pools");
  spec.history_len = config.pool_size;
  HistoryGenerator gen(spec, vocab);
  std::mt19937_64 pick_rng(derive_seed(config.seed, "ip-benchmark-targets"));

  struct Instance {
    History pool;
    const History* target;
  };
  std::vector<Instance> instances;
  instances.reserve(config.targets_per_length);
  for (size_t i = 0; i < config.targets_per_length; ++i) {
    instances.push_back(
        {gen.next(), &targets[uniform_u64(pick_rng, targets.size())]});
  }
  if (details) {
    details->clear();
    for (size_t i = 0; i < instances.size(); ++i) {
      IpInstance d;
      d.index = i;
      d.pool = instances[i].pool;
      d.target = *instances[i].target;
      details->push_back(std::move(d));
    }
  }

  std::vector<BenchmarkRow> rows;
  for (size_t ell : config.bit_lengths) {
    BenchmarkRow row;
    row.bit_length = ell;
    row.instances = instances.size();
    double total_seconds = 0.0;
    size_t successes = 0;
    for (size_t i = 0; i < instances.size(); ++i) {
      SimHash z = simhash(*instances[i].target, ell, scheme);
      PreimageProblem problem = build_problem(instances[i].pool.items(),
                                              target_from_simhash(z), scheme);
      auto start = std::chrono::steady_clock::now();
      SolveResult result = solve(problem, config.node_budget);
      auto stop = std::chrono::steady_clock::now();
      total_seconds += std::chrono::duration<double>(stop - start).count();
      bool ok = result.status == SolveStatus::kSolved &&
                verify_selection(result.solution->selection,
                                 problem.candidates, problem.target, scheme);
      if (ok) ++successes;
      if (details) {
        (*details)[i].success_at.push_back(ok ? 1 : 0);
        (*details)[i].result_at.push_back(result);
      }
    }
    row.success_rate =
        static_cast<double>(successes) / static_cast<double>(instances.size());
    row.mean_solve_seconds = total_seconds / static_cast<double>(instances.size());
    rows.push_back(row);
  }
  return rows;
}

void write_benchmark_csv(std::ostream& os, const IpBenchmarkConfig& config,
                         const std::vector<BenchmarkRow>& rows) {
  os << "# lshpriv ip-benchmark v1\n";
  os << "# seed=" << config.seed << " pool_size=" << config.pool_size
     << " targets_per_length=" << config.targets_per_length
     << " node_budget=" << config.node_budget << "\n";
  os << "bit_length,success_rate,mean_solve_seconds,instances\n";
  for (const BenchmarkRow& r : rows) {
    os << r.bit_length << ',' << r.success_rate << ',' << r.mean_solve_seconds
       << ',' << r.instances << "\n";
  }
}

OverlapStudyResult overlap_study(const std::vector<History>& targets,
                                 const GeneratorSpec& spec,
                                 const Vocabulary& vocab,
                                 const FingerprintScheme& scheme,
                                 const OverlapStudyConfig& config) {
  if (targets.empty()) throw std::invalid_argument("no target histories");
  OverlapStudyResult out;
  out.generator_stage.histogram.assign(14, 0);
  out.ip_stage.histogram.assign(14, 0);

  size_t targets_over_gen = 0;
  size_t targets_over_ip = 0;
  for (size_t t = 0; t < targets.size(); ++t) {
    const History& target = targets[t];
    SimHash z = simhash(target, config.bits, scheme);
    std::vector<TargetBit> target_bits = target_from_simhash(z);

    GeneratorSpec per_target = spec;
    per_target.rng_seed =
        derive_seed(config.seed, "overlap-target-" + std::to_string(t));
    HistoryGenerator gen(per_target, vocab);

    size_t gen_kept = 0;
    size_t ip_kept = 0;
    uint64_t gen_common = 0;
    uint64_t ip_common = 0;
    size_t attempts = 0;
    size_t cap = config.max_attempt_factor * config.per_target_count;
    while (ip_kept < config.per_target_count && attempts < cap) {
      History h = gen.next();
      ++attempts;
      if (gen_kept < config.per_target_count) {
        size_t common = score_overlap(h, target);
        gen_common += common;
        add_to_histogram(out.generator_stage.histogram, common);
        ++gen_kept;
      }
      PreimageProblem problem =
          build_problem(h.items(), target_bits, scheme);
      SolveResult result = solve(problem, config.node_budget);
      ++out.solves;
      if (result.status != SolveStatus::kSolved) continue;
      History subset = solution_subset(h, result.solution.value());
      // Reported successes are always re-verified from the scheme.
      if (!verify_selection(result.solution->selection, problem.candidates,
                            problem.target, scheme)) {
        continue;
      }
      ++out.solve_successes;
      size_t common = score_overlap(subset, target);
      ip_common += common;
      add_to_histogram(out.ip_stage.histogram, common);
      ++ip_kept;
    }
    double gen_i = gen_kept == 0
                       ? 0.0
                       : static_cast<double>(gen_common) / gen_kept;
    double ip_i = ip_kept == 0 ? 0.0 : static_cast<double>(ip_common) / ip_kept;
    out.generator_stage.per_target.push_back(gen_i);
    out.ip_stage.per_target.push_back(ip_i);
    double threshold = 0.10 * static_cast<double>(target.size());
    if (gen_i >= threshold) ++targets_over_gen;
    if (ip_i >= threshold) ++targets_over_ip;
  }

  MeanSd gen_stats = mean_sd(out.generator_stage.per_target);
  out.generator_stage.q = gen_stats.mean;
  out.generator_stage.sd = gen_stats.sd;
  out.generator_stage.fraction_over_threshold =
      static_cast<double>(targets_over_gen) / targets.size();
  MeanSd ip_stats = mean_sd(out.ip_stage.per_target);
  out.ip_stage.q = ip_stats.mean;
  out.ip_stage.sd = ip_stats.sd;
  out.ip_stage.fraction_over_threshold =
      static_cast<double>(targets_over_ip) / targets.size();
  return out;
}

void write_overlap_csv(std::ostream& os, const std::string& label,
                       const OverlapStudyConfig& config,
                       const OverlapStudyResult& result) {
  os << "# lshpriv overlap-study v1 generator=" << label << "\n";
  os << "# seed=" << config.seed << " bits=" << config.bits
     << " per_target=" << config.per_target_count
     << " node_budget=" << config.node_budget << "\n";
  os << "stage,q,sd,fraction_over_threshold,solves,solve_successes\n";
  os << "generator," << result.generator_stage.q << ','
     << result.generator_stage.sd << ','
     << result.generator_stage.fraction_over_threshold << ',' << result.solves
     << ',' << result.solve_successes << "\n";
  os << "int_program," << result.ip_stage.q << ',' << result.ip_stage.sd << ','
     << result.ip_stage.fraction_over_threshold << ',' << result.solves << ','
     << result.solve_successes << "\n";
  os << "common_count,generator_histories,int_program_histories\n";
  for (size_t bin = 0; bin < result.generator_stage.histogram.size(); ++bin) {
    os << bin << ',' << result.generator_stage.histogram[bin] << ','
       << result.ip_stage.histogram[bin] << "\n";
  }
}

TrajectoryStudyResult trajectory_study(
    const CheckpointField& field, const std::vector<Trajectory>& trajectories,
    const TrajectoryStudyConfig& config) {
  TrajectoryStudyResult out;
  out.checkpoints = field.grid.cell_count();
  out.vehicles = trajectories.size();

  std::vector<uint64_t> ids;
  ids.reserve(trajectories.size());
  for (const Trajectory& t : trajectories) ids.push_back(t.vehicle_id);
  out.per_vehicle = attack_all_vehicles(field, ids, config.threads);

  std::vector<double> az;
  std::vector<double> recovered;
  az.reserve(out.per_vehicle.size());
  recovered.reserve(out.per_vehicle.size());
  for (const VehicleCoverage& v : out.per_vehicle) {
    az.push_back(v.a_z);
    recovered.push_back(static_cast<double>(v.black + v.gray));
  }
  std::vector<double> true_sizes;
  std::vector<uint32_t> visit_counts(field.grid.cell_count(), 0);
  true_sizes.reserve(trajectories.size());
  for (const Trajectory& t : trajectories) {
    std::vector<uint32_t> cells = visited_cells(field.grid, t);
    true_sizes.push_back(static_cast<double>(cells.size()));
    for (uint32_t c : cells) ++visit_counts[c];
  }

  MeanSd az_stats = mean_sd(az);
  out.mean_az = az_stats.mean;
  out.sd_az = az_stats.sd;
  MeanSd rec_stats = mean_sd(recovered);
  out.mean_recovered = rec_stats.mean;
  out.sd_recovered = rec_stats.sd;
  MeanSd true_stats = mean_sd(true_sizes);
  out.mean_true_size = true_stats.mean;
  out.sd_true_size = true_stats.sd;

  if (!config.heatmap_dir.empty()) {
    write_pgm(config.heatmap_dir + "/visits.pgm", field.grid.rows(),
              field.grid.cols(), visit_count_pixels(visit_counts));
    // A few example vehicles: ground-truth trajectory vs recovered partition.
    size_t examples = std::min(config.heatmap_examples, trajectories.size());
    for (size_t e = 0; e < examples; ++e) {
      const Trajectory& t = trajectories[e];
      std::vector<uint8_t> target_px(field.grid.cell_count(), 255);
      for (uint32_t c : visited_cells(field.grid, t)) target_px[c] = 0;
      write_pgm(config.heatmap_dir + "/target-" + std::to_string(t.vehicle_id) +
                    ".pgm",
                field.grid.rows(), field.grid.cols(), target_px);
      Partition p =
          attack_checkpoints(field, vehicle_signature(field.family, t.vehicle_id));
      write_pgm(config.heatmap_dir + "/recovered-" +
                    std::to_string(t.vehicle_id) + ".pgm",
                field.grid.rows(), field.grid.cols(),
                partition_pixels(p, field.grid.cell_count()));
    }
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, const TrajectoryStudyResult& r,
                          const HashFamily& family, uint64_t seed) {
  os << "# lshpriv trajectory-study v1\n";
  os << "# seed=" << seed << " hash_count=" << family.count()
     << " modulus=" << family.modulus() << " checkpoints=" << r.checkpoints
     << "\n";
  os << "vehicles,checkpoints,mean_az,sd_az,mean_true_size,sd_true_size,"
        "mean_recovered,sd_recovered\n";
  os << r.vehicles << ',' << r.checkpoints << ',' << r.mean_az << ','
     << r.sd_az << ',' << r.mean_true_size << ',' << r.sd_true_size << ','
     << r.mean_recovered << ',' << r.sd_recovered << "\n";
}

bool proportion_greater(size_t hits1, size_t n1, size_t hits2, size_t n2,
                        double z_threshold, double* z_out) {
  if (n1 == 0 || n2 == 0) return false;
  double p1 = static_cast<double>(hits1) / n1;
  double p2 = static_cast<double>(hits2) / n2;
  double pooled = static_cast<double>(hits1 + hits2) / (n1 + n2);
  double se = std::sqrt(pooled * (1.0 - pooled) *
                        (1.0 / static_cast<double>(n1) +
                         1.0 / static_cast<double>(n2)));
  if (se == 0.0) {
    if (z_out) *z_out = 0.0;
    return false;
  }
  double z = (p1 - p2) / se;
  if (z_out) *z_out = z;
  return z > z_threshold;
}

}  // namespace lshpriv
