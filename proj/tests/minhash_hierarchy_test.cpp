#include "lshpriv/minhash_hierarchy.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "lshpriv/util.hpp"
#include "support/fixtures.hpp"

namespace lshpriv {
namespace {

using testing::worked_checkpoint_signatures;
using testing::worked_vehicle_signatures;

Trajectory traj(uint64_t id, std::vector<GeoPoint> pts) {
  return Trajectory{id, std::move(pts)};
}

// Five checkpoints on a 1x5 strip with the worked-example signatures.
CheckpointField worked_field() {
  CheckpointField field{CheckpointGrid(1, 5, {0.0, 5.0, 0.0, 1.0}),
                        HashFamily::with_params({{1, 0}, {1, 1}}, 31),
                        {}};
  for (const auto& sig : worked_checkpoint_signatures()) {
    field.signatures.emplace_back(sig);
  }
  return field;
}

TEST(FitGrid, SinglePointIsDegenerate) {
  EXPECT_THROW(
      CheckpointGrid::fit({traj(1, {{1.0, 2.0}})}, 88, 88, 0.0, 100.0),
      DegenerateExtentError);
}

TEST(FitGrid, NoPointsRejected) {
  EXPECT_THROW(CheckpointGrid::fit({traj(1, {})}, 4, 4, 0.0, 100.0),
               NoPointsError);
  EXPECT_THROW(CheckpointGrid::fit({}, 4, 4, 2.0, 98.0), NoPointsError);
}

TEST(FitGrid, UnitSquareCellEdges) {
  std::vector<Trajectory> ts;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      ts.push_back(traj(1, {{i / 10.0, j / 10.0}}));
    }
  }
  CheckpointGrid grid = CheckpointGrid::fit(ts, 88, 88, 0.0, 100.0);
  EXPECT_EQ(grid.cell_count(), 7744u);
  EXPECT_DOUBLE_EQ(grid.bounds().lon_min, 0.0);
  EXPECT_DOUBLE_EQ(grid.bounds().lon_max, 1.0);
  // First interior gridline belongs to the lower cell.
  EXPECT_EQ(grid.cell_of({1.0 / 88, 0.0}).value(), 0u);
  EXPECT_EQ(grid.cell_of({1.0 / 88 + 1e-9, 0.0}).value(), 1u);
  EXPECT_EQ(grid.cell_of({1.0, 1.0}).value(), 7743u);
  EXPECT_FALSE(grid.cell_of({1.1, 0.5}).has_value());
  EXPECT_FALSE(grid.cell_of({0.5, -0.1}).has_value());
}

TEST(FitGrid, PercentileTrimming) {
  // 100 longitudes 0..99 paired with latitudes 0..990: the 2/98 trim keeps
  // [1, 97] and [10, 970].
  std::vector<Trajectory> ts;
  for (int i = 0; i < 100; ++i) {
    ts.push_back(traj(1, {{static_cast<double>(i), i * 10.0}}));
  }
  CheckpointGrid grid = CheckpointGrid::fit(ts, 4, 4, 2.0, 98.0);
  EXPECT_DOUBLE_EQ(grid.bounds().lon_min, 1.0);
  EXPECT_DOUBLE_EQ(grid.bounds().lon_max, 97.0);
  EXPECT_DOUBLE_EQ(grid.bounds().lat_min, 10.0);
  EXPECT_DOUBLE_EQ(grid.bounds().lat_max, 970.0);
  EXPECT_FALSE(grid.cell_of({0.0, 500.0}).has_value());
  EXPECT_FALSE(grid.cell_of({99.0, 500.0}).has_value());
}

TEST(Accumulate, UntouchedCellsStayUnset) {
  CheckpointGrid grid(2, 2, {0.0, 1.0, 0.0, 1.0});
  HashFamily family = HashFamily::identity(1, 100);
  CheckpointField field =
      accumulate(grid, {traj(7, {{0.1, 0.1}})}, family, 1);
  EXPECT_EQ(field.signatures[0].entries(), std::vector<uint64_t>{7});
  for (size_t c = 1; c < 4; ++c) {
    EXPECT_TRUE(field.signatures[c].all_unset()) << "cell " << c;
  }
}

// With a single identity hash, each visited cell stores the minimum vehicle
// id that crossed it.
TEST(Accumulate, IdentityHashTinyMap) {
  CheckpointGrid grid(3, 3, {0.0, 3.0, 0.0, 3.0});
  HashFamily family = HashFamily::identity(1, 10);
  std::vector<Trajectory> ts = {
      traj(3, {{0.5, 0.5}, {1.5, 0.5}}),
      traj(1, {{1.5, 0.5}, {1.5, 1.5}}),
      traj(2, {{0.5, 0.5}, {2.5, 2.5}}),
  };
  CheckpointField field = accumulate(grid, ts, family, 1);
  EXPECT_EQ(field.signatures[0].entry(0), 2u);  // visited by 3 and 2
  EXPECT_EQ(field.signatures[1].entry(0), 1u);  // visited by 3 and 1
  EXPECT_EQ(field.signatures[4].entry(0), 1u);  // visited by 1
  EXPECT_EQ(field.signatures[8].entry(0), 2u);  // visited by 2
  EXPECT_TRUE(field.signatures[2].all_unset());
}

TEST(Accumulate, OneVehicleTouchesExactlyItsCells) {
  CheckpointGrid grid(4, 4, {0.0, 4.0, 0.0, 4.0});
  HashFamily family = HashFamily::random(8, 50, 3);
  Trajectory t = traj(9, {{0.5, 0.5},
                          {1.5, 0.5},
                          {2.5, 0.5},
                          {2.5, 1.5},
                          {2.5, 2.5},
                          {2.5, 2.6}});  // 5 distinct cells
  CheckpointField field = accumulate(grid, {t}, family, 1);
  std::vector<uint32_t> cells = visited_cells(grid, t);
  EXPECT_EQ(cells.size(), 5u);
  for (size_t c = 0; c < grid.cell_count(); ++c) {
    bool visited = std::find(cells.begin(), cells.end(), c) != cells.end();
    EXPECT_EQ(!field.signatures[c].all_unset(), visited) << "cell " << c;
  }
}

TEST(Accumulate, ParallelEqualsSequential) {
  CheckpointGrid grid(6, 6, {0.0, 6.0, 0.0, 6.0});
  HashFamily family = HashFamily::random(16, 2000, 5);
  std::mt19937_64 rng(8);
  std::vector<Trajectory> ts;
  for (uint64_t v = 1; v <= 200; ++v) {
    Trajectory t{v, {}};
    for (int p = 0; p < 20; ++p) {
      t.points.push_back({6.0 * uniform_unit(rng), 6.0 * uniform_unit(rng)});
    }
    ts.push_back(std::move(t));
  }
  CheckpointField seq = accumulate(grid, ts, family, 1);
  CheckpointField par = accumulate(grid, ts, family, 4);
  EXPECT_EQ(seq.signatures, par.signatures);
}

TEST(AttackCheckpoints, WorkedPartition) {
  CheckpointField field = worked_field();
  MinHashSignature z{std::vector<uint64_t>{9, 11}};
  Partition p = attack_checkpoints(field, z);
  EXPECT_EQ(p.white, (std::vector<uint64_t>{0, 4}));  // c1, c5
  EXPECT_EQ(p.black, (std::vector<uint64_t>{3}));     // c4
  EXPECT_EQ(p.gray, (std::vector<uint64_t>{1, 2}));   // c2, c3
  EXPECT_DOUBLE_EQ(coverage_ratio(p, 5), 0.6);
}

TEST(AttackCheckpoints, FamilyMismatchRejected) {
  CheckpointField field = worked_field();
  EXPECT_THROW(attack_checkpoints(field, MinHashSignature(3)),
               FamilyMismatchError);
}

TEST(AttackCheckpoints, UnsetSignatureAlwaysExcluded) {
  CheckpointField field = worked_field();
  field.signatures[2] = MinHashSignature(2);  // all sentinel
  MinHashSignature z{std::vector<uint64_t>{9, 11}};
  Partition p = attack_checkpoints(field, z);
  EXPECT_TRUE(std::find(p.white.begin(), p.white.end(), 2u) != p.white.end());
}

TEST(AttackVehicles, WorkedPartition) {
  CheckpointField field = worked_field();
  std::vector<std::pair<uint64_t, MinHashSignature>> sigs;
  uint64_t id = 1;
  for (const auto& entries : worked_vehicle_signatures()) {
    sigs.emplace_back(id++, MinHashSignature{entries});
  }
  Partition p = attack_vehicles(field, 3, sigs);  // c4
  EXPECT_EQ(p.white, (std::vector<uint64_t>{2, 4}));  // v2, v4
  EXPECT_EQ(p.black, (std::vector<uint64_t>{1}));     // v1
  EXPECT_EQ(p.gray, (std::vector<uint64_t>{3, 5}));   // v3, v5
}

TEST(AttackVehicles, EmptyUniverse) {
  Partition p = attack_vehicles(worked_field(), 0, std::vector<uint64_t>{});
  EXPECT_EQ(p.universe_size(), 0u);
}

TEST(CoverageRatio, Validation) {
  Partition all_white;
  all_white.white = {0, 1, 2};
  EXPECT_DOUBLE_EQ(coverage_ratio(all_white, 3), 0.0);
  EXPECT_THROW(coverage_ratio(all_white, 0), std::invalid_argument);
}

TEST(DpCounterexample, IdentityPairFromExample) {
  HashFamily identity = HashFamily::identity(1, 10);
  DpWitness w = dp_counterexample(std::vector<uint64_t>{5, 3}, identity);
  EXPECT_EQ(w.output_with_last, 3u);
  EXPECT_EQ(w.output_without_last, 5u);
  EXPECT_EQ(w.target_output, 3u);
  EXPECT_DOUBLE_EQ(w.prob_d1, 1.0);
  EXPECT_DOUBLE_EQ(w.prob_d2, 0.0);
}

TEST(DpCounterexample, RandomFamiliesAlwaysSeparate) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    HashFamily f = HashFamily::random(1, 1000, rng());
    DpWitness w = dp_counterexample(100, f);
    EXPECT_LT(w.output_with_last, w.output_without_last);
    EXPECT_NE(w.output_with_last, w.output_without_last);
    // h(t_1) > ... > h(t_n) by construction.
    for (size_t i = 1; i < w.ordered_ids.size(); ++i) {
      EXPECT_GT(f.eval(0, w.ordered_ids[i - 1]), f.eval(0, w.ordered_ids[i]));
    }
  }
}

TEST(VehicleSignature, MatchesSingletonSignature) {
  HashFamily f = HashFamily::random(50, 500, 9);
  EXPECT_EQ(vehicle_signature(f, 123),
            minhash_signature(f, std::vector<uint64_t>{123}));
}

// Algorithm duality plus partition completeness plus batched-sweep
// equivalence over random small fields.
TEST(AttackProperty, DualityCompletenessAndBatchedAgreement) {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 500; ++trial) {
    size_t rows = 2 + rng() % 4;
    size_t cols = 2 + rng() % 4;
    CheckpointGrid grid(rows, cols,
                        {0.0, static_cast<double>(cols), 0.0,
                         static_cast<double>(rows)});
    size_t n_vehicles = 1 + rng() % 15;
    size_t k = 1 + rng() % 6;
    HashFamily family = HashFamily::random(k, n_vehicles, rng());
    std::vector<Trajectory> ts;
    std::vector<uint64_t> ids;
    for (uint64_t v = 1; v <= n_vehicles; ++v) {
      Trajectory t{v, {}};
      size_t steps = rng() % 6;
      for (size_t s = 0; s < steps; ++s) {
        t.points.push_back({cols * uniform_unit(rng), rows * uniform_unit(rng)});
      }
      ts.push_back(std::move(t));
      ids.push_back(v);
    }
    CheckpointField field = accumulate(grid, ts, family, 1);

    std::vector<Partition> by_vehicle;
    for (uint64_t v : ids) {
      Partition p = attack_checkpoints(field, vehicle_signature(family, v));
      ASSERT_EQ(p.universe_size(), grid.cell_count());
      by_vehicle.push_back(std::move(p));
    }
    auto label_of = [](const Partition& p, uint64_t x) {
      if (std::find(p.black.begin(), p.black.end(), x) != p.black.end()) return 'B';
      if (std::find(p.gray.begin(), p.gray.end(), x) != p.gray.end()) return 'G';
      return 'W';
    };
    for (size_t c = 0; c < grid.cell_count(); ++c) {
      Partition pc = attack_vehicles(field, c, ids);
      ASSERT_EQ(pc.universe_size(), ids.size());
      for (size_t vi = 0; vi < ids.size(); ++vi) {
        ASSERT_EQ(label_of(pc, ids[vi]), label_of(by_vehicle[vi], c))
            << "vehicle " << ids[vi] << " cell " << c;
      }
    }
    std::vector<VehicleCoverage> batched = attack_all_vehicles(field, ids, 1);
    for (size_t vi = 0; vi < ids.size(); ++vi) {
      ASSERT_EQ(batched[vi].black, by_vehicle[vi].black.size());
      ASSERT_EQ(batched[vi].gray, by_vehicle[vi].gray.size());
      ASSERT_EQ(batched[vi].white, by_vehicle[vi].white.size());
    }
  }
}

// Theorem 2 at desk scale: excluded checkpoints were really never visited,
// and every black label has an equality witness among true visitors.
TEST(AttackProperty, ExclusionSoundnessAndBlackWitness) {
  std::mt19937_64 rng(515);
  CheckpointGrid grid(8, 8, {0.0, 8.0, 0.0, 8.0});
  HashFamily family = HashFamily::random(40, 200, 616);
  std::vector<Trajectory> ts;
  std::vector<uint64_t> ids;
  for (uint64_t v = 1; v <= 200; ++v) {
    Trajectory t{v, {}};
    double x = 8.0 * uniform_unit(rng);
    double y = 8.0 * uniform_unit(rng);
    for (int s = 0; s < 12; ++s) {
      x = std::clamp(x + 0.7 * (uniform_unit(rng) - 0.5), 0.0, 8.0);
      y = std::clamp(y + 0.7 * (uniform_unit(rng) - 0.5), 0.0, 8.0);
      t.points.push_back({x, y});
    }
    ts.push_back(std::move(t));
    ids.push_back(v);
  }
  CheckpointField field = accumulate(grid, ts, family, 1);
  std::vector<std::vector<uint64_t>> visitors(grid.cell_count());
  for (const Trajectory& t : ts) {
    for (uint32_t c : visited_cells(grid, t)) visitors[c].push_back(t.vehicle_id);
  }
  for (uint64_t v : ids) {
    MinHashSignature z = vehicle_signature(family, v);
    Partition p = attack_checkpoints(field, z);
    for (uint64_t c : p.white) {
      const auto& vis = visitors[c];
      ASSERT_TRUE(std::find(vis.begin(), vis.end(), v) == vis.end())
          << "white checkpoint " << c << " was visited by " << v;
    }
    for (uint64_t c : p.black) {
      bool witness = false;
      for (size_t i = 0; i < family.count() && !witness; ++i) {
        if (z.entry(i) != field.signatures[c].entry(i)) continue;
        for (uint64_t other : visitors[c]) {
          if (family.eval(i, other) == z.entry(i)) {
            witness = true;
            break;
          }
        }
      }
      ASSERT_TRUE(witness) << "no collision witness for black cell " << c;
    }
  }
}

TEST(Snapshot, RoundTrip) {
  CheckpointGrid grid(3, 4, {-8.7, -8.5, 41.1, 41.3});
  HashFamily family = HashFamily::random(6, 100, 77);
  std::mt19937_64 rng(4);
  std::vector<Trajectory> ts;
  for (uint64_t v = 1; v <= 30; ++v) {
    Trajectory t{v, {}};
    for (int s = 0; s < 5; ++s) {
      t.points.push_back({-8.7 + 0.2 * uniform_unit(rng),
                          41.1 + 0.2 * uniform_unit(rng)});
    }
    ts.push_back(std::move(t));
  }
  CheckpointField field = accumulate(grid, ts, family, 1);
  std::stringstream ss;
  field.save(ss);
  CheckpointField back = CheckpointField::load(ss);
  EXPECT_EQ(back.grid.rows(), field.grid.rows());
  EXPECT_EQ(back.grid.cols(), field.grid.cols());
  EXPECT_EQ(back.family, field.family);
  EXPECT_EQ(back.signatures, field.signatures);
  std::stringstream bad("not a snapshot at all");
  EXPECT_THROW(CheckpointField::load(bad), std::runtime_error);
}

TEST(Heatmap, PgmHeaderAndPayload) {
  std::string path = ::testing::TempDir() + "heatmap-test.pgm";
  write_pgm(path, 2, 3, {0, 10, 20, 30, 40, 255});
  std::ifstream is(path, std::ios::binary);
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, "P5");
  std::string dims;
  std::getline(is, dims);
  EXPECT_EQ(dims, "3 2");
  std::remove(path.c_str());
  EXPECT_THROW(write_pgm(path, 2, 2, {0}), std::invalid_argument);
}

TEST(Heatmap, PartitionPixels) {
  Partition p;
  p.black = {0};
  p.gray = {2};
  p.white = {1, 3};
  EXPECT_EQ(partition_pixels(p, 4), (std::vector<uint8_t>{0, 255, 128, 255}));
}

}  // namespace
}  // namespace lshpriv
