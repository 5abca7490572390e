#include "lshpriv/preimage_ip.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "lshpriv/util.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace lshpriv {
namespace {

using testing::brute_force_preimage;
using testing::worked_scheme;

std::vector<Domain> worked_candidates() {
  return {"google", "youtube", "facebook"};
}

PreimageProblem worked_problem() {
  return build_problem(worked_candidates(), parse_target("10111"),
                       worked_scheme());
}

TEST(BuildProblem, WorkedInstanceConstraints) {
  PreimageProblem p = worked_problem();
  EXPECT_EQ(p.n(), 3u);
  EXPECT_EQ(p.ell(), 5u);
  EXPECT_EQ(p.constrained_bits(), 5u);
  // Row j of the program carries (2 z_j - 1) * eta[i][j]; spot-check the
  // bit-0 row (j = 1) and one bit-1 row (j = 4).
  auto coeff = [&p](size_t j, size_t i) {
    double sign = p.target[j] == TargetBit::kOne ? 1.0 : -1.0;
    return sign * p.eta[i][j];
  };
  EXPECT_DOUBLE_EQ(coeff(1, 0), -0.18);   // google, constrained to bit 0
  EXPECT_DOUBLE_EQ(coeff(1, 1), 1.79);    // youtube
  EXPECT_DOUBLE_EQ(coeff(1, 2), 0.03);    // facebook
  EXPECT_DOUBLE_EQ(coeff(4, 0), -0.88);
  EXPECT_DOUBLE_EQ(coeff(4, 1), 1.11);
  EXPECT_DOUBLE_EQ(coeff(4, 2), 1.61);
}

TEST(BuildProblem, AllFreeTargetRejected) {
  EXPECT_THROW(
      build_problem(worked_candidates(), parse_target("FFFFF"), worked_scheme()),
      NoConstraintError);
}

TEST(BuildProblem, EmptyCandidatesRejected) {
  EXPECT_THROW(build_problem({}, parse_target("101"), worked_scheme()),
               EmptyCandidatesError);
}

TEST(BuildProblem, DuplicateCandidatesRejected) {
  EXPECT_THROW(build_problem({"google", "google"}, parse_target("1"),
                             worked_scheme()),
               std::invalid_argument);
}

TEST(BuildProblem, PrefixTargetShape) {
  std::vector<Domain> pool;
  for (int i = 0; i < 32; ++i) pool.push_back("cand-" + std::to_string(i));
  PreimageProblem p =
      build_problem(pool, prefix_target("101101010011010", 15),
                    FingerprintScheme::pseudorandom());
  EXPECT_EQ(p.n(), 32u);
  EXPECT_EQ(p.constrained_bits(), 15u);
  PreimageProblem shorter = build_problem(
      pool, prefix_target("1011", 15), FingerprintScheme::pseudorandom());
  EXPECT_EQ(shorter.ell(), 15u);
  EXPECT_EQ(shorter.constrained_bits(), 4u);
}

TEST(Solve, WorkedInstanceOptimum) {
  SolveResult r = solve(worked_problem());
  ASSERT_EQ(r.status, SolveStatus::kSolved);
  EXPECT_EQ(r.solution->selection, (std::vector<uint8_t>{1, 1, 0}));
  EXPECT_EQ(r.solution->cardinality, 2);
  EXPECT_TRUE(verify_selection(r.solution->selection, worked_candidates(),
                               parse_target("10111"), worked_scheme()));
  // Exhaustive 2^3 enumeration agrees.
  testing::BruteForceResult oracle =
      brute_force_preimage(worked_problem().eta, parse_target("10111"));
  EXPECT_TRUE(oracle.feasible);
  EXPECT_EQ(oracle.max_cardinality, 2);
  EXPECT_EQ(oracle.lex_min_selection, r.solution->mask());
}

TEST(Solve, FullSetTargetSelectsEverything) {
  FingerprintScheme scheme = FingerprintScheme::pseudorandom();
  std::vector<Domain> pool;
  for (int i = 0; i < 20; ++i) pool.push_back("full-" + std::to_string(i));
  SimHash z = simhash(History{pool}, 12, scheme);
  SolveResult r = solve(build_problem(pool, target_from_simhash(z), scheme));
  ASSERT_EQ(r.status, SolveStatus::kSolved);
  EXPECT_EQ(r.solution->cardinality, 20);
}

TEST(Solve, InfeasibleInstanceProvenExhaustively) {
  // Both fingerprints are positive on the single constrained column, so no
  // non-empty subset can hash to bit 0 there.
  FingerprintScheme scheme = FingerprintScheme::injected(
      {{"a", {1.0}}, {"b", {2.0}}});
  SolveResult r = solve(build_problem({"a", "b"}, parse_target("0"), scheme));
  EXPECT_EQ(r.status, SolveStatus::kInfeasible);
  EXPECT_FALSE(r.solution.has_value());
}

TEST(Solve, BoundaryColumnFallsBackToVerifiedOptimum) {
  // {a, b} sums to exactly zero on the constrained column; the relaxed
  // program accepts it but sgn(0) reads as bit 1, so the verified optimum is
  // the singleton {b}.
  FingerprintScheme scheme = FingerprintScheme::injected(
      {{"a", {1.0}}, {"b", {-1.0}}});
  std::vector<Domain> pool{"a", "b"};
  SolveResult r = solve(build_problem(pool, parse_target("0"), scheme));
  ASSERT_EQ(r.status, SolveStatus::kSolved);
  EXPECT_EQ(r.solution->selection, (std::vector<uint8_t>{0, 1}));
  EXPECT_FALSE(verify_selection({1, 1}, pool, parse_target("0"), scheme));
  EXPECT_TRUE(verify_selection({0, 1}, pool, parse_target("0"), scheme));
}

TEST(Solve, LexicographicTieBreak) {
  // Two cardinality-2 optima {a,b} and {a,c}; (1,0,1) is lexicographically
  // smaller than (1,1,0).
  FingerprintScheme scheme = FingerprintScheme::injected(
      {{"a", {-3.0, 2.0}}, {"b", {2.0, -3.0}}, {"c", {2.0, -3.0}}});
  SolveResult r = solve(build_problem({"a", "b", "c"}, parse_target("00"), scheme));
  ASSERT_EQ(r.status, SolveStatus::kSolved);
  EXPECT_EQ(r.solution->selection, (std::vector<uint8_t>{1, 0, 1}));
}

TEST(Verify, AllZeroSelectionFalse) {
  EXPECT_FALSE(verify_selection({0, 0, 0}, worked_candidates(),
                                parse_target("10111"), worked_scheme()));
}

TEST(Solve, BudgetOfOneReportsExceeded) {
  SolveResult r = solve(worked_problem(), 1);
  EXPECT_EQ(r.status, SolveStatus::kBudgetExceeded);
  EXPECT_LE(r.nodes_expanded, 1u);
}

TEST(SolveProperty, SoundnessOnRandomInstances) {
  FingerprintScheme scheme = FingerprintScheme::pseudorandom();
  std::mt19937_64 rng(31337);
  int solved = 0;
  for (int trial = 0; trial < 1'000; ++trial) {
    size_t n = 1 + rng() % 12;
    size_t ell = 1 + rng() % 8;
    std::vector<Domain> pool;
    for (size_t i = 0; i < n; ++i) {
      pool.push_back("s" + std::to_string(trial) + "-" + std::to_string(i));
    }
    std::string target;
    for (size_t j = 0; j < ell; ++j) {
      target.push_back("01F"[rng() % 3]);
    }
    if (target.find_first_of("01") == std::string::npos) target[0] = '1';
    PreimageProblem p = build_problem(pool, parse_target(target), scheme);
    SolveResult r = solve(p, 100'000);
    if (r.solution.has_value()) {
      ASSERT_TRUE(verify_selection(r.solution->selection, pool,
                                   p.target, scheme))
          << "unverified solution at trial " << trial;
      ++solved;
    }
    ASSERT_LE(r.nodes_expanded, 100'000u);
  }
  EXPECT_GT(solved, 0);
}

TEST(SolveProperty, MatchesBruteForceOnSmallInstances) {
  FingerprintScheme scheme = FingerprintScheme::pseudorandom();
  std::mt19937_64 rng(271828);
  for (size_t ell : {5u, 10u, 15u}) {
    for (int trial = 0; trial < 200; ++trial) {
      size_t n = 2 + rng() % 15;  // up to 16
      std::vector<Domain> pool;
      for (size_t i = 0; i < n; ++i) {
        pool.push_back("bf" + std::to_string(ell) + "-" +
                       std::to_string(trial) + "-" + std::to_string(i));
      }
      std::string target;
      for (size_t j = 0; j < ell; ++j) target.push_back((rng() & 1) ? '1' : '0');
      PreimageProblem p = build_problem(pool, parse_target(target), scheme);
      SolveResult r = solve(p);
      testing::BruteForceResult oracle = brute_force_preimage(p.eta, p.target);
      if (oracle.feasible) {
        ASSERT_EQ(r.status, SolveStatus::kSolved)
            << "ell=" << ell << " trial=" << trial;
        ASSERT_EQ(r.solution->cardinality, oracle.max_cardinality)
            << "ell=" << ell << " trial=" << trial;
        ASSERT_EQ(r.solution->mask(), oracle.lex_min_selection)
            << "ell=" << ell << " trial=" << trial;
      } else {
        ASSERT_EQ(r.status, SolveStatus::kInfeasible)
            << "ell=" << ell << " trial=" << trial;
      }
    }
  }
}

TEST(ProblemText, RoundTrip) {
  PreimageProblem p = worked_problem();
  SolveResult r = solve(p);
  std::stringstream ss;
  write_problem(ss, p, &r);
  PreimageProblem back = read_problem(ss);
  EXPECT_EQ(back.candidates, p.candidates);
  EXPECT_EQ(back.eta, p.eta);
  EXPECT_EQ(target_to_string(back.target), target_to_string(p.target));
}

}  // namespace
}  // namespace lshpriv
