// lshpriv command-line front end: every pipeline as a subcommand with one
// top-level seed and a manifest per artifact directory.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "lshpriv/datasets.hpp"
#include "lshpriv/eval.hpp"
#include "lshpriv/floc_cohorts.hpp"
#include "lshpriv/history_gen.hpp"
#include "lshpriv/lsh_core.hpp"
#include "lshpriv/minhash_hierarchy.hpp"
#include "lshpriv/preimage_ip.hpp"
#include "lshpriv/sybil.hpp"
#include "lshpriv/util.hpp"

namespace fs = std::filesystem;
using namespace lshpriv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 3;
constexpr int kExitInternalError = 4;

struct Common {
  uint64_t seed = 0;
  std::string out;
  unsigned threads = 0;
  uint64_t budget = kDefaultNodeBudget;
  std::string fingerprint_file;
};

void add_common(CLI::App* cmd, Common* c) {
  cmd->add_option("--seed", c->seed, "Top-level seed; all randomness derives from it");
  cmd->add_option("--out", c->out, "Artifact directory (created if missing)");
  cmd->add_option("--threads", c->threads, "Worker threads (0 = machine parallelism)");
  cmd->add_option("--budget", c->budget, "Branch-and-bound node budget per solve");
  cmd->add_option("--fingerprint-file", c->fingerprint_file,
                  "token<TAB>v1<TAB>... rows; switches to injected fingerprints");
  cmd->set_config("--config", "", "key = value file; flags win over the file");
}

FingerprintScheme scheme_from(const Common& c) {
  if (c.fingerprint_file.empty()) return FingerprintScheme::pseudorandom();
  std::ifstream is(c.fingerprint_file);
  if (!is) throw FileMissingError{c.fingerprint_file};
  std::map<Domain, std::vector<double>> table;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string token;
    if (!std::getline(ss, token, '\t')) continue;
    std::vector<double> values;
    std::string field;
    while (std::getline(ss, field, '\t')) values.push_back(std::stod(field));
    table[token] = std::move(values);
  }
  return FingerprintScheme::injected(std::move(table));
}

std::ofstream open_artifact(const Common& c, const std::string& name) {
  fs::create_directories(c.out);
  std::ofstream os(fs::path(c.out) / name);
  if (!os) throw std::runtime_error("cannot write artifact " + name);
  return os;
}

void write_manifest(const CLI::App& app, const Common& c,
                    const std::string& command,
                    const FingerprintScheme& scheme) {
  if (c.out.empty()) return;
  std::ofstream os = open_artifact(c, "manifest.txt");
  os << "lshpriv-manifest v1\n";
  os << "command " << command << "\n";
  os << "seed " << c.seed << "\n";
  os << "threads " << c.threads << "\n";
  os << "budget " << c.budget << "\n";
  os << "fingerprint-scheme " << scheme.describe() << "\n";
  os << "format-versions manifest=1 preimage=1 histories=1 sybil-report=1 "
        "grid-snapshot=1\n";
  os << "--- effective configuration ---\n";
  os << const_cast<CLI::App&>(app).config_to_str(true, false);
}

// Raw history lines: tab-separated tokens, '#' header lines skipped.
std::vector<History> read_raw_histories(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FileMissingError{path};
  std::vector<History> out;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<Domain> items;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, '\t')) {
      if (!token.empty()) items.push_back(token);
    }
    if (!items.empty()) out.push_back(History{std::move(items)});
  }
  return out;
}

std::vector<UserRecord> read_population(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FileMissingError{path};
  std::vector<UserRecord> users;
  std::string id, bits;
  while (is >> id >> bits) {
    users.push_back(UserRecord{id, SimHash{bits}, false});
  }
  return users;
}

Vocabulary read_vocab(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FileMissingError{path};
  Vocabulary v;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      v.items.push_back(line);
      v.frequencies.push_back(1);
    } else {
      v.items.push_back(line.substr(0, tab));
      v.frequencies.push_back(std::stoull(line.substr(tab + 1)));
    }
  }
  return v;
}

Vocabulary synthetic_vocab(size_t n) {
  Vocabulary v;
  for (size_t i = 0; i < n; ++i) {
    v.items.push_back("item" + std::to_string(i));
    v.frequencies.push_back(std::max<uint64_t>(1, 100'000 / (i + 1)));
  }
  return v;
}

void print_id_set(std::ostream& os, const char* label,
                  const std::vector<uint64_t>& xs, uint64_t base) {
  os << label;
  for (uint64_t x : xs) os << ' ' << base + x;
  os << "\n";
}

// --- subcommand bodies ---

int run_simhash(const CLI::App& app, const Common& c,
                const std::string& histories_path, size_t ell) {
  FingerprintScheme scheme = scheme_from(c);
  std::vector<History> histories = read_raw_histories(histories_path);
  std::ostringstream lines;
  for (const History& h : histories) {
    lines << simhash(h, ell, scheme).bits() << "\n";
  }
  std::cout << lines.str();
  if (!c.out.empty()) {
    open_artifact(c, "hashes.txt") << lines.str();
    write_manifest(app, c, "simhash", scheme);
  }
  return kExitOk;
}

int run_cohortize(const CLI::App& app, const Common& c,
                  const std::string& hashes_path,
                  const std::string& histories_path, size_t ell, int k) {
  FingerprintScheme scheme = scheme_from(c);
  std::vector<UserRecord> users;
  if (!hashes_path.empty()) {
    users = read_population(hashes_path);
  } else {
    std::vector<History> histories = read_raw_histories(histories_path);
    size_t i = 0;
    for (const History& h : histories) {
      users.push_back(
          UserRecord{"u" + std::to_string(++i), simhash(h, ell, scheme), false});
    }
  }
  CohortTree tree = CohortTree::build(users, k);
  std::ostringstream table;
  tree.export_table(table);
  std::cout << table.str();
  if (!c.out.empty()) {
    open_artifact(c, "clustering.txt") << table.str();
    write_manifest(app, c, "cohortize", scheme);
  }
  return kExitOk;
}

int run_preimage(const CLI::App& app, const Common& c,
                 const std::string& problem_path, const std::string& pool_path,
                 const std::string& target_bits) {
  FingerprintScheme scheme = scheme_from(c);
  PreimageProblem problem;
  if (!problem_path.empty()) {
    std::ifstream is(problem_path);
    if (!is) throw FileMissingError{problem_path};
    problem = read_problem(is);
  } else {
    std::vector<Domain> pool;
    std::ifstream is(pool_path);
    if (!is) throw FileMissingError{pool_path};
    std::string token;
    while (std::getline(is, token)) {
      if (!token.empty() && token.back() == '\r') token.pop_back();
      if (!token.empty() && token[0] != '#') pool.push_back(token);
    }
    problem = build_problem(pool, parse_target(target_bits), scheme);
  }
  SolveResult result = solve(problem, c.budget);
  if (result.solution &&
      !verify_selection(result.solution->selection, problem.candidates,
                        problem.target, scheme)) {
    std::cerr << "internal error: solver output failed re-verification\n";
    return kExitInternalError;
  }
  write_problem(std::cout, problem, &result);
  if (!c.out.empty()) {
    std::ofstream os = open_artifact(c, "solution.txt");
    write_problem(os, problem, &result);
    write_manifest(app, c, "preimage", scheme);
  }
  return kExitOk;
}

int run_sybil(const CLI::App& app, const Common& c,
              const std::string& population_path, const std::string& vocab_path,
              int k, const std::string& target, int rounds, int batch,
              size_t history_len, int attempts) {
  FingerprintScheme scheme = scheme_from(c);
  CohortTree tree = CohortTree::build(read_population(population_path), k);
  Vocabulary vocab =
      vocab_path.empty() ? synthetic_vocab(256) : read_vocab(vocab_path);
  SybilCampaign campaign;
  campaign.target_user = target;
  campaign.rounds = rounds;
  campaign.batch = batch;
  campaign.attempts_per_sybil = attempts;
  campaign.node_budget = c.budget;
  campaign.generator = {GeneratorKind::kUniform, history_len, "",
                        derive_seed(c.seed, "sybil-generator"), true};
  CampaignReport report = run_campaign(tree, campaign, vocab, scheme);
  write_campaign_report(std::cout, report);
  if (!c.out.empty()) {
    std::ofstream os = open_artifact(c, "campaign.txt");
    write_campaign_report(os, report);
    std::ostringstream table;
    tree.export_table(table);
    open_artifact(c, "clustering.txt") << table.str();
    write_manifest(app, c, "sybil", scheme);
  }
  return kExitOk;
}

int run_minhash_attack(const CLI::App& app, const Common& c,
                       const std::string& trajectories_path, size_t limit,
                       size_t rows, size_t cols, double trim_low,
                       double trim_high, size_t hash_count,
                       const std::string& snapshot_in,
                       const std::string& snapshot_out,
                       const std::string& vehicle_sig, int64_t checkpoint,
                       uint64_t vehicle_universe) {
  FingerprintScheme scheme = scheme_from(c);
  if (!snapshot_in.empty()) {
    std::ifstream is(snapshot_in, std::ios::binary);
    if (!is) throw FileMissingError{snapshot_in};
    CheckpointField field = CheckpointField::load(is);
    if (!vehicle_sig.empty()) {
      std::vector<uint64_t> entries;
      std::stringstream ss(vehicle_sig);
      std::string part;
      while (std::getline(ss, part, ',')) entries.push_back(std::stoull(part));
      Partition p = attack_checkpoints(field, MinHashSignature{entries});
      print_id_set(std::cout, "white:", p.white, 1);
      print_id_set(std::cout, "black:", p.black, 1);
      print_id_set(std::cout, "gray:", p.gray, 1);
      std::cout << "coverage " << coverage_ratio(p, field.grid.cell_count())
                << "\n";
    }
    if (checkpoint >= 0) {
      std::vector<uint64_t> universe;
      for (uint64_t v = 1; v <= vehicle_universe; ++v) universe.push_back(v);
      Partition p =
          attack_vehicles(field, static_cast<size_t>(checkpoint), universe);
      print_id_set(std::cout, "white:", p.white, 0);
      print_id_set(std::cout, "black:", p.black, 0);
      print_id_set(std::cout, "gray:", p.gray, 0);
    }
    if (!c.out.empty()) write_manifest(app, c, "minhash-attack", scheme);
    return kExitOk;
  }

  TrajectoryLoad load = load_trajectories(trajectories_path, limit);
  std::cerr << "loaded " << load.trajectories.size() << " trajectories ("
            << load.stats.rows_skipped << " rows skipped)\n";
  CheckpointGrid grid =
      CheckpointGrid::fit(load.trajectories, rows, cols, trim_low, trim_high);
  HashFamily family = HashFamily::random(
      hash_count, load.trajectories.size(), derive_seed(c.seed, "hash-family"));
  CheckpointField field =
      accumulate(grid, load.trajectories, family, c.threads);
  if (!snapshot_out.empty()) {
    std::ofstream os(snapshot_out, std::ios::binary);
    field.save(os);
  }
  TrajectoryStudyConfig study;
  study.threads = c.threads;
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    study.heatmap_dir = c.out;
  }
  TrajectoryStudyResult result =
      trajectory_study(field, load.trajectories, study);
  write_trajectory_csv(std::cout, result, family, c.seed);
  if (!c.out.empty()) {
    std::ofstream os = open_artifact(c, "coverage.csv");
    write_trajectory_csv(os, result, family, c.seed);
    write_manifest(app, c, "minhash-attack", scheme);
  }
  return kExitOk;
}

int run_dp_witness(const CLI::App& app, const Common& c, uint64_t n,
                   bool identity) {
  FingerprintScheme scheme = scheme_from(c);
  HashFamily family = identity
                          ? HashFamily::identity(1, n)
                          : HashFamily::random(1, n, derive_seed(c.seed, "dp"));
  DpWitness w = dp_counterexample(n, family);
  std::ostringstream os;
  os << "lshpriv-dp-witness v1\n";
  os << "population " << n << "\n";
  os << "modulus " << family.modulus() << " r " << family.params()[0].r
     << " c " << family.params()[0].c << "\n";
  os << "output-with-last " << w.output_with_last << "\n";
  os << "output-without-last " << w.output_without_last << "\n";
  os << "target-output " << w.target_output << "\n";
  os << "prob-d1 " << w.prob_d1 << "\n";
  os << "prob-d2 " << w.prob_d2 << "\n";
  os << "violates-dp-for-every-epsilon "
     << (w.prob_d1 == 1.0 && w.prob_d2 == 0.0 ? 1 : 0) << "\n";
  std::cout << os.str();
  if (!c.out.empty()) {
    open_artifact(c, "dp-witness.txt") << os.str();
    write_manifest(app, c, "dp-witness", scheme);
  }
  return kExitOk;
}

int run_bench(const CLI::App& app, const Common& c,
              const std::string& ratings_path, const std::string& lengths_csv,
              size_t targets_per_length, size_t pool_size, bool with_overlap,
              size_t overlap_targets, size_t per_target, size_t bits,
              const std::string& histories_file) {
  FingerprintScheme scheme = scheme_from(c);
  Vocabulary vocab;
  std::vector<History> histories;
  if (!ratings_path.empty()) {
    RatingsLoad load = load_ratings(ratings_path, 5000, 32);
    std::cerr << "ratings: " << load.stats.rows_parsed << " rows, "
              << load.histories.size() << " users\n";
    vocab = load.vocabulary;
    histories = load.histories;
  } else {
    vocab = synthetic_vocab(5000);
    GeneratorSpec synth{GeneratorKind::kEmpirical, 32, "",
                        derive_seed(c.seed, "synthetic-users"), true};
    histories = generate(synth, vocab, 2000);
    std::cerr << "no ratings file; using a synthetic frequency-skewed corpus\n";
  }
  auto [train, test] =
      split_histories(histories, 0.96, derive_seed(c.seed, "split"));

  IpBenchmarkConfig config;
  std::stringstream ss(lengths_csv);
  std::string part;
  while (std::getline(ss, part, ',')) {
    config.bit_lengths.push_back(std::stoull(part));
  }
  config.targets_per_length = targets_per_length;
  config.pool_size = pool_size;
  config.node_budget = c.budget;
  config.seed = c.seed;
  GeneratorSpec pool_spec{GeneratorKind::kUniform, pool_size, "", 0, true};
  std::vector<BenchmarkRow> rows =
      ip_benchmark(config, pool_spec, vocab, test, scheme);
  write_benchmark_csv(std::cout, config, rows);
  if (!c.out.empty()) {
    std::ofstream os = open_artifact(c, "ip-benchmark.csv");
    write_benchmark_csv(os, config, rows);
  }

  if (with_overlap) {
    OverlapStudyConfig oconfig;
    oconfig.per_target_count = per_target;
    oconfig.bits = bits;
    oconfig.node_budget = c.budget;
    oconfig.seed = c.seed;
    std::vector<History> targets;
    std::mt19937_64 rng(derive_seed(c.seed, "overlap-targets"));
    for (const History& h : test) {
      if (h.size() >= 32) targets.push_back(h);
      if (targets.size() == overlap_targets) break;
    }
    while (targets.size() < overlap_targets && !test.empty()) {
      targets.push_back(test[uniform_u64(rng, test.size())]);
    }
    std::vector<std::pair<std::string, GeneratorSpec>> specs = {
        {"uniform", {GeneratorKind::kUniform, 32, "", 0, true}},
        {"empirical", {GeneratorKind::kEmpirical, 32, "", 0, true}},
    };
    if (!histories_file.empty()) {
      specs.push_back({"file", {GeneratorKind::kFile, 32, histories_file, 0, true}});
    }
    for (const auto& [label, spec] : specs) {
      OverlapStudyResult result =
          overlap_study(targets, spec, vocab, scheme, oconfig);
      write_overlap_csv(std::cout, label, oconfig, result);
      if (!c.out.empty()) {
        std::ofstream os = open_artifact(c, "overlap-" + label + ".csv");
        write_overlap_csv(os, label, oconfig, result);
      }
    }
  }
  if (!c.out.empty()) write_manifest(app, c, "bench", scheme);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LSH privacy systems and the attacks against them"};
  app.require_subcommand(1);

  Common c;

  auto* simhash_cmd = app.add_subcommand("simhash", "Hash a file of histories");
  std::string histories_path;
  size_t ell = 15;
  simhash_cmd->add_option("--histories", histories_path, "History file")
      ->required();
  simhash_cmd->add_option("--ell", ell, "Hash length in bits");
  add_common(simhash_cmd, &c);

  auto* cohortize_cmd =
      app.add_subcommand("cohortize", "Cluster users into prefix cohorts");
  std::string hashes_path;
  std::string cohort_histories;
  int min_size = 2;
  cohortize_cmd->add_option("--hashes", hashes_path, "user_id<TAB>bits file");
  cohortize_cmd->add_option("--histories", cohort_histories,
                            "History file (users named u1..uN)");
  cohortize_cmd->add_option("--k", min_size, "Minimum cohort size");
  cohortize_cmd->add_option("--ell", ell, "Hash length for --histories");
  add_common(cohortize_cmd, &c);

  auto* preimage_cmd =
      app.add_subcommand("preimage", "Solve a SimHash pre-image program");
  std::string problem_path;
  std::string pool_path;
  std::string target_bits;
  preimage_cmd->add_option("--problem", problem_path,
                           "Problem in the interchange format");
  preimage_cmd->add_option("--pool", pool_path, "Candidate tokens, one per line");
  preimage_cmd->add_option("--target", target_bits,
                           "Target bits over 0/1/F (F = unconstrained)");
  add_common(preimage_cmd, &c);

  auto* sybil_cmd = app.add_subcommand("sybil", "Run a Sybil prefix campaign");
  std::string population_path;
  std::string vocab_path;
  std::string target_user;
  int rounds = 10;
  int batch = 4;
  size_t history_len = 32;
  int attempts = 8;
  sybil_cmd->add_option("--population", population_path, "user_id<TAB>bits file")
      ->required();
  sybil_cmd->add_option("--target", target_user, "Target user id")->required();
  sybil_cmd->add_option("--k", min_size, "Minimum cohort size");
  sybil_cmd->add_option("--rounds", rounds, "Max campaign rounds");
  sybil_cmd->add_option("--batch", batch, "Sybils injected per round");
  sybil_cmd->add_option("--vocab", vocab_path, "Vocabulary file (token[<TAB>freq])");
  sybil_cmd->add_option("--history-len", history_len, "Generated history size");
  sybil_cmd->add_option("--attempts", attempts, "Histories tried per Sybil");
  add_common(sybil_cmd, &c);

  auto* attack_cmd = app.add_subcommand(
      "minhash-attack", "Checkpoint accumulation and trajectory attacks");
  std::string trajectories_path;
  std::string snapshot_in;
  std::string snapshot_out;
  std::string vehicle_sig;
  size_t limit = 30'000;
  size_t rows = 88;
  size_t cols = 88;
  double trim_low = 2.0;
  double trim_high = 98.0;
  size_t hash_count = 200;
  int64_t checkpoint = -1;
  uint64_t vehicle_universe = 0;
  attack_cmd->add_option("--trajectories", trajectories_path, "Porto-style CSV");
  attack_cmd->add_option("--limit", limit, "Trajectories to ingest (0 = all)");
  attack_cmd->add_option("--rows", rows, "Grid rows");
  attack_cmd->add_option("--cols", cols, "Grid columns");
  attack_cmd->add_option("--trim-low", trim_low, "Lower trim percentile");
  attack_cmd->add_option("--trim-high", trim_high, "Upper trim percentile");
  attack_cmd->add_option("--hash-count", hash_count, "MinHash functions");
  attack_cmd->add_option("--load-grid", snapshot_in, "Run on a saved snapshot");
  attack_cmd->add_option("--save-grid", snapshot_out, "Save the accumulated grid");
  attack_cmd->add_option("--vehicle-signature", vehicle_sig,
                         "Comma-separated z entries (with --load-grid)");
  attack_cmd->add_option("--checkpoint", checkpoint,
                         "Checkpoint index for the vehicle-side attack");
  attack_cmd->add_option("--vehicles", vehicle_universe,
                         "Vehicle universe size 1..N for --checkpoint");
  add_common(attack_cmd, &c);

  auto* dp_cmd =
      app.add_subcommand("dp-witness", "Differential-privacy counterexample");
  uint64_t population = 100;
  bool identity = false;
  dp_cmd->add_option("--n", population, "Population size (>= 2)");
  dp_cmd->add_flag("--identity", identity, "Use the identity hash");
  add_common(dp_cmd, &c);

  auto* bench_cmd =
      app.add_subcommand("bench", "Success-rate benchmark and overlap study");
  std::string ratings_path;
  std::string lengths_csv = "5,10,15,20,25";
  size_t targets_per_length = 100;
  size_t pool_size = 32;
  bool with_overlap = false;
  size_t overlap_targets = 5;
  size_t per_target = 200;
  size_t bits = 15;
  std::string gan_histories;
  bench_cmd->add_option("--ratings", ratings_path, "MovieLens-style ratings CSV");
  bench_cmd->add_option("--bit-lengths", lengths_csv, "Comma-separated lengths");
  bench_cmd->add_option("--targets", targets_per_length, "Instances per length");
  bench_cmd->add_option("--pool-size", pool_size, "Candidates per instance");
  bench_cmd->add_flag("--overlap", with_overlap, "Also run the overlap study");
  bench_cmd->add_option("--overlap-targets", overlap_targets, "Targets to attack");
  bench_cmd->add_option("--per-target", per_target, "Histories per target");
  bench_cmd->add_option("--bits", bits, "Overlap target hash length");
  bench_cmd->add_option("--histories-file", gan_histories,
                        "Externally generated histories for FILE mode");
  add_common(bench_cmd, &c);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(simhash_cmd)) {
      return run_simhash(*simhash_cmd, c, histories_path, ell);
    }
    if (app.got_subcommand(cohortize_cmd)) {
      if (hashes_path.empty() && cohort_histories.empty()) {
        std::cerr << "cohortize needs --hashes or --histories\n";
        return kExitInputError;
      }
      return run_cohortize(*cohortize_cmd, c, hashes_path, cohort_histories,
                           ell, min_size);
    }
    if (app.got_subcommand(preimage_cmd)) {
      if (problem_path.empty() && (pool_path.empty() || target_bits.empty())) {
        std::cerr << "preimage needs --problem or --pool with --target\n";
        return kExitInputError;
      }
      return run_preimage(*preimage_cmd, c, problem_path, pool_path,
                          target_bits);
    }
    if (app.got_subcommand(sybil_cmd)) {
      return run_sybil(*sybil_cmd, c, population_path, vocab_path, min_size,
                       target_user, rounds, batch, history_len, attempts);
    }
    if (app.got_subcommand(attack_cmd)) {
      if (trajectories_path.empty() && snapshot_in.empty()) {
        std::cerr << "minhash-attack needs --trajectories or --load-grid\n";
        return kExitInputError;
      }
      return run_minhash_attack(*attack_cmd, c, trajectories_path, limit, rows,
                                cols, trim_low, trim_high, hash_count,
                                snapshot_in, snapshot_out, vehicle_sig,
                                checkpoint, vehicle_universe);
    }
    if (app.got_subcommand(dp_cmd)) {
      return run_dp_witness(*dp_cmd, c, population, identity);
    }
    if (app.got_subcommand(bench_cmd)) {
      return run_bench(*bench_cmd, c, ratings_path, lengths_csv,
                       targets_per_length, pool_size, with_overlap,
                       overlap_targets, per_target, bits, gan_histories);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
