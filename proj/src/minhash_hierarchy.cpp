#include "lshpriv/minhash_hierarchy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <unordered_map>

#include "lshpriv/util.hpp"

namespace lshpriv {

CheckpointGrid::CheckpointGrid(size_t rows, size_t cols, GridBounds bounds)
    : rows_(rows), cols_(cols), bounds_(bounds) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("grid needs at least one row and column");
  }
  if (!(bounds.lon_min < bounds.lon_max) ||
      !(bounds.lat_min < bounds.lat_max)) {
    throw DegenerateExtentError{};
  }
}

namespace {

// Nearest-rank percentile over a sorted sample.
double percentile(const std::vector<double>& sorted, double pct) {
  if (pct <= 0.0) return sorted.front();
  if (pct >= 100.0) return sorted.back();
  size_t rank = static_cast<size_t>(
      std::ceil(pct / 100.0 * static_cast<double>(sorted.size())));
  if (rank == 0) rank = 1;
  return sorted[rank - 1];
}

}  // namespace

CheckpointGrid CheckpointGrid::fit(const std::vector<Trajectory>& trajectories,
                                   size_t rows, size_t cols,
                                   double trim_low_pct, double trim_high_pct) {
  if (!(trim_low_pct >= 0.0 && trim_low_pct < trim_high_pct &&
        trim_high_pct <= 100.0)) {
    throw std::invalid_argument("trim percentiles must satisfy 0 <= low < high <= 100");
  }
  std::vector<double> lons;
  std::vector<double> lats;
  for (const Trajectory& t : trajectories) {
    for (const GeoPoint& p : t.points) {
      lons.push_back(p.lon);
      lats.push_back(p.lat);
    }
  }
  if (lons.empty()) throw NoPointsError{};
  std::sort(lons.begin(), lons.end());
  std::sort(lats.begin(), lats.end());
  GridBounds b{percentile(lons, trim_low_pct), percentile(lons, trim_high_pct),
               percentile(lats, trim_low_pct), percentile(lats, trim_high_pct)};
  return CheckpointGrid(rows, cols, b);
}

std::optional<size_t> CheckpointGrid::cell_of(GeoPoint p) const {
  if (p.lon < bounds_.lon_min || p.lon > bounds_.lon_max ||
      p.lat < bounds_.lat_min || p.lat > bounds_.lat_max) {
    return std::nullopt;
  }
  double cell_w = (bounds_.lon_max - bounds_.lon_min) / static_cast<double>(cols_);
  double cell_h = (bounds_.lat_max - bounds_.lat_min) / static_cast<double>(rows_);
  // ceil - 1 sends interior boundary coordinates to the lower-index cell.
  auto index = [](double offset, double width, size_t count) {
    double r = std::ceil(offset / width) - 1.0;
    if (r < 0.0) return size_t{0};
    size_t i = static_cast<size_t>(r);
    return std::min(i, count - 1);
  };
  size_t col = index(p.lon - bounds_.lon_min, cell_w, cols_);
  size_t row = index(p.lat - bounds_.lat_min, cell_h, rows_);
  return row * cols_ + col;
}

std::vector<uint32_t> visited_cells(const CheckpointGrid& grid,
                                    const Trajectory& t) {
  std::vector<uint32_t> cells;
  cells.reserve(t.points.size());
  for (const GeoPoint& p : t.points) {
    if (auto c = grid.cell_of(p)) cells.push_back(static_cast<uint32_t>(*c));
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return cells;
}

CheckpointField accumulate(const CheckpointGrid& grid,
                           const std::vector<Trajectory>& trajectories,
                           const HashFamily& family, unsigned threads) {
  size_t cells = grid.cell_count();
  size_t k = family.count();
  if (threads == 0) threads = std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, 8));

  std::vector<std::vector<uint64_t>> partials(
      threads, std::vector<uint64_t>(cells * k, kNoHash));
  parallel_chunks(
      trajectories.size(), threads, [&](size_t lo, size_t hi) {
        // Identify the worker by probing which chunk this is.
        size_t chunk = (trajectories.size() + threads - 1) / threads;
        size_t worker = chunk == 0 ? 0 : lo / chunk;
        std::vector<uint64_t>& local = partials[worker];
        std::vector<uint64_t> hashes(k);
        for (size_t t = lo; t < hi; ++t) {
          const Trajectory& traj = trajectories[t];
          std::vector<uint32_t> cells_hit = visited_cells(grid, traj);
          if (cells_hit.empty()) continue;
          for (size_t i = 0; i < k; ++i) {
            hashes[i] = family.eval(i, traj.vehicle_id);
          }
          for (uint32_t c : cells_hit) {
            uint64_t* sig = local.data() + static_cast<size_t>(c) * k;
            for (size_t i = 0; i < k; ++i) {
              sig[i] = std::min(sig[i], hashes[i]);
            }
          }
        }
      });

  CheckpointField field{grid, family, {}};
  field.signatures.reserve(cells);
  std::vector<uint64_t> merged(cells * k, kNoHash);
  for (const auto& local : partials) {
    for (size_t i = 0; i < merged.size(); ++i) {
      merged[i] = std::min(merged[i], local[i]);
    }
  }
  for (size_t c = 0; c < cells; ++c) {
    field.signatures.emplace_back(std::vector<uint64_t>(
        merged.begin() + static_cast<long>(c * k),
        merged.begin() + static_cast<long>((c + 1) * k)));
  }
  return field;
}

double coverage_ratio(const Partition& p, size_t total) {
  if (total == 0) throw std::invalid_argument("universe must be non-empty");
  return static_cast<double>(p.black.size() + p.gray.size()) /
         static_cast<double>(total);
}

MinHashSignature vehicle_signature(const HashFamily& family,
                                   uint64_t vehicle_id) {
  return minhash_signature(family, {vehicle_id});
}

Partition attack_checkpoints(const CheckpointField& field,
                             const MinHashSignature& z) {
  if (z.size() != field.family.count()) throw FamilyMismatchError{};
  Partition out;
  size_t k = z.size();
  for (size_t c = 0; c < field.signatures.size(); ++c) {
    const auto& s = field.signatures[c].entries();
    bool below = false;
    bool equal = false;
    for (size_t i = 0; i < k; ++i) {
      if (z.entry(i) < s[i]) {
        below = true;
        break;
      }
      if (z.entry(i) == s[i]) equal = true;
    }
    if (below) {
      out.white.push_back(c);
    } else if (equal) {
      out.black.push_back(c);
    } else {
      out.gray.push_back(c);
    }
  }
  return out;
}

Partition attack_vehicles(const CheckpointField& field, size_t cell,
                          const std::vector<uint64_t>& vehicles) {
  std::vector<std::pair<uint64_t, MinHashSignature>> sigs;
  sigs.reserve(vehicles.size());
  for (uint64_t v : vehicles) {
    sigs.emplace_back(v, vehicle_signature(field.family, v));
  }
  return attack_vehicles(field, cell, sigs);
}

Partition attack_vehicles(
    const CheckpointField& field, size_t cell,
    const std::vector<std::pair<uint64_t, MinHashSignature>>& vehicle_sigs) {
  if (cell >= field.signatures.size()) {
    throw std::out_of_range("checkpoint index out of range");
  }
  const auto& s = field.signatures[cell].entries();
  Partition out;
  for (const auto& [v, z] : vehicle_sigs) {
    if (z.size() != s.size()) throw FamilyMismatchError{};
    bool below = false;
    bool equal = false;
    for (size_t i = 0; i < s.size(); ++i) {
      if (z.entry(i) < s[i]) {
        below = true;
        break;
      }
      if (z.entry(i) == s[i]) equal = true;
    }
    if (below) {
      out.white.push_back(v);
    } else if (equal) {
      out.black.push_back(v);
    } else {
      out.gray.push_back(v);
    }
  }
  return out;
}

std::vector<VehicleCoverage> attack_all_vehicles(
    const CheckpointField& field, const std::vector<uint64_t>& vehicle_ids,
    unsigned threads) {
  size_t cells = field.signatures.size();
  size_t k = field.family.count();
  size_t n = vehicle_ids.size();
  size_t words = (cells + 63) / 64;

  // not_excluded[v] starts all-ones and gets intersected per coordinate with
  // the set {c : s_i(c) <= z_i(v)}; equality[v] collects B witnesses.
  std::vector<uint64_t> not_excluded(n * words, ~uint64_t{0});
  if (cells % 64 != 0) {
    uint64_t tail = (uint64_t{1} << (cells % 64)) - 1;
    for (size_t v = 0; v < n; ++v) not_excluded[v * words + words - 1] = tail;
  }
  std::vector<uint64_t> equality(n * words, 0);

  std::vector<uint32_t> cell_order(cells);
  std::vector<uint64_t> z_of(n);
  std::vector<uint32_t> vehicle_order(n);

  for (size_t i = 0; i < k; ++i) {
    for (size_t c = 0; c < cells; ++c) cell_order[c] = static_cast<uint32_t>(c);
    std::sort(cell_order.begin(), cell_order.end(),
              [&](uint32_t a, uint32_t b) {
                return field.signatures[a].entry(i) <
                       field.signatures[b].entry(i);
              });
    for (size_t v = 0; v < n; ++v) z_of[v] = field.family.eval(i, vehicle_ids[v]);
    for (size_t v = 0; v < n; ++v) vehicle_order[v] = static_cast<uint32_t>(v);
    std::sort(vehicle_order.begin(), vehicle_order.end(),
              [&](uint32_t a, uint32_t b) { return z_of[a] < z_of[b]; });

    // Value -> cells with s_i(c) == value, for the equality pass.
    std::unordered_map<uint64_t, std::vector<uint32_t>> by_value;
    for (size_t c = 0; c < cells; ++c) {
      by_value[field.signatures[c].entry(i)].push_back(
          static_cast<uint32_t>(c));
    }

    std::vector<uint64_t> reachable(words, 0);
    size_t next_cell = 0;
    for (uint32_t vi : vehicle_order) {
      uint64_t z = z_of[vi];
      while (next_cell < cells &&
             field.signatures[cell_order[next_cell]].entry(i) <= z) {
        uint32_t c = cell_order[next_cell];
        reachable[c / 64] |= uint64_t{1} << (c % 64);
        ++next_cell;
      }
      uint64_t* acc = not_excluded.data() + static_cast<size_t>(vi) * words;
      for (size_t w = 0; w < words; ++w) acc[w] &= reachable[w];
      auto eq = by_value.find(z);
      if (eq != by_value.end()) {
        uint64_t* eqw = equality.data() + static_cast<size_t>(vi) * words;
        for (uint32_t c : eq->second) eqw[c / 64] |= uint64_t{1} << (c % 64);
      }
    }
  }

  std::vector<VehicleCoverage> out(n);
  parallel_chunks(n, threads == 0 ? std::thread::hardware_concurrency() : threads,
                  [&](size_t lo, size_t hi) {
                    for (size_t v = lo; v < hi; ++v) {
                      const uint64_t* acc = not_excluded.data() + v * words;
                      const uint64_t* eqw = equality.data() + v * words;
                      size_t kept = 0;
                      size_t black = 0;
                      for (size_t w = 0; w < words; ++w) {
                        kept += std::popcount(acc[w]);
                        black += std::popcount(acc[w] & eqw[w]);
                      }
                      out[v].vehicle_id = vehicle_ids[v];
                      out[v].black = black;
                      out[v].gray = kept - black;
                      out[v].white = cells - kept;
                      out[v].a_z = static_cast<double>(kept) /
                                   static_cast<double>(cells);
                    }
                  });
  return out;
}

DpWitness dp_counterexample(const std::vector<uint64_t>& ids,
                            const HashFamily& family_k1) {
  if (ids.size() < 2) {
    throw std::invalid_argument("need a population of at least 2");
  }
  DpWitness w;
  w.ordered_ids = ids;
  std::sort(w.ordered_ids.begin(), w.ordered_ids.end(),
            [&](uint64_t a, uint64_t b) {
              return family_k1.eval(0, a) > family_k1.eval(0, b);
            });
  for (size_t i = 1; i < w.ordered_ids.size(); ++i) {
    if (family_k1.eval(0, w.ordered_ids[i - 1]) ==
        family_k1.eval(0, w.ordered_ids[i])) {
      throw std::invalid_argument("ids must hash to distinct values");
    }
  }
  uint64_t last = w.ordered_ids.back();
  w.output_with_last = family_k1.eval(0, last);
  w.output_without_last =
      family_k1.eval(0, w.ordered_ids[w.ordered_ids.size() - 2]);
  w.target_output = w.output_with_last;
  return w;
}

DpWitness dp_counterexample(uint64_t n, const HashFamily& family_k1) {
  std::vector<uint64_t> ids(n);
  for (uint64_t i = 0; i < n; ++i) ids[i] = i + 1;
  return dp_counterexample(ids, family_k1);
}

namespace {

constexpr char kSnapshotMagic[8] = {'L', 'S', 'H', 'G', 'R', 'D', '0', '1'};

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw std::runtime_error("truncated grid snapshot");
  return v;
}

}  // namespace

void CheckpointField::save(std::ostream& os) const {
  os.write(kSnapshotMagic, sizeof kSnapshotMagic);
  put<uint32_t>(os, static_cast<uint32_t>(grid.rows()));
  put<uint32_t>(os, static_cast<uint32_t>(grid.cols()));
  put<double>(os, grid.bounds().lon_min);
  put<double>(os, grid.bounds().lon_max);
  put<double>(os, grid.bounds().lat_min);
  put<double>(os, grid.bounds().lat_max);
  put<uint64_t>(os, family.modulus());
  put<uint64_t>(os, family.count());
  for (const auto& pr : family.params()) {
    put<uint64_t>(os, pr.r);
    put<uint64_t>(os, pr.c);
  }
  for (const MinHashSignature& sig : signatures) {
    for (uint64_t e : sig.entries()) put<uint64_t>(os, e);
  }
}

CheckpointField CheckpointField::load(std::istream& is) {
  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kSnapshotMagic, sizeof magic) != 0) {
    throw std::runtime_error("not a grid snapshot (bad magic)");
  }
  uint32_t rows = get<uint32_t>(is);
  uint32_t cols = get<uint32_t>(is);
  GridBounds b{};
  b.lon_min = get<double>(is);
  b.lon_max = get<double>(is);
  b.lat_min = get<double>(is);
  b.lat_max = get<double>(is);
  uint64_t modulus = get<uint64_t>(is);
  uint64_t k = get<uint64_t>(is);
  std::vector<HashFamily::Params> params(k);
  for (auto& pr : params) {
    pr.r = get<uint64_t>(is);
    pr.c = get<uint64_t>(is);
  }
  CheckpointField field{CheckpointGrid(rows, cols, b),
                        HashFamily::with_params(std::move(params), modulus),
                        {}};
  size_t cells = field.grid.cell_count();
  field.signatures.reserve(cells);
  for (size_t c = 0; c < cells; ++c) {
    std::vector<uint64_t> entries(k);
    for (auto& e : entries) e = get<uint64_t>(is);
    field.signatures.emplace_back(std::move(entries));
  }
  return field;
}

void write_pgm(const std::string& path, size_t rows, size_t cols,
               const std::vector<uint8_t>& pixels) {
  if (pixels.size() != rows * cols) {
    throw std::invalid_argument("pixel buffer does not match dimensions");
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << "P5\n" << cols << " " << rows << "\n255\n";
  os.write(reinterpret_cast<const char*>(pixels.data()),
           static_cast<std::streamsize>(pixels.size()));
}

std::vector<uint8_t> visit_count_pixels(const std::vector<uint32_t>& counts) {
  uint32_t max = 0;
  for (uint32_t c : counts) max = std::max(max, c);
  std::vector<uint8_t> px(counts.size(), 0);
  if (max == 0) return px;
  for (size_t i = 0; i < counts.size(); ++i) {
    px[i] = static_cast<uint8_t>(
        std::lround(255.0 * static_cast<double>(counts[i]) / max));
  }
  return px;
}

std::vector<uint8_t> partition_pixels(const Partition& p, size_t cell_count) {
  std::vector<uint8_t> px(cell_count, 255);
  for (uint64_t c : p.gray) px[c] = 128;
  for (uint64_t c : p.black) px[c] = 0;
  return px;
}

}  // namespace lshpriv
