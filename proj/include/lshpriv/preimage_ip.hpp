#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lshpriv/lsh_core.hpp"

namespace lshpriv {

struct EmptyCandidatesError : std::invalid_argument {
  EmptyCandidatesError() : std::invalid_argument("candidate set is empty") {}
};

struct NoConstraintError : std::invalid_argument {
  NoConstraintError()
      : std::invalid_argument("target constrains no position (all FREE)") {}
};

enum class TargetBit : uint8_t { kZero, kOne, kFree };

// Parses a target string over '0', '1' and 'F'/'f'/'*' (unconstrained).
std::vector<TargetBit> parse_target(const std::string& s);
std::vector<TargetBit> target_from_simhash(const SimHash& z);
// A fully-constrained prefix padded with FREE positions up to ell.
std::vector<TargetBit> prefix_target(const std::string& prefix_bits,
                                     size_t ell);
std::string target_to_string(const std::vector<TargetBit>& target);

// The 0/1 program data: candidates (order preserved, no duplicates),
// their fingerprint rows, and the per-position target bits. Row j of the
// constraint system exists iff target[j] != kFree, with coefficients
// (2 z_j - 1) * eta[i][j] and right-hand side >= 0.
struct PreimageProblem {
  std::vector<Domain> candidates;         // n <= 64 entries
  std::vector<std::vector<double>> eta;   // n rows of ell values
  std::vector<TargetBit> target;          // length ell

  size_t n() const { return candidates.size(); }
  size_t ell() const { return target.size(); }
  size_t constrained_bits() const;
};

PreimageProblem build_problem(const std::vector<Domain>& candidates,
                              std::vector<TargetBit> target,
                              const FingerprintScheme& scheme);

struct SubsetSolution {
  std::vector<uint8_t> selection;  // 0/1 per candidate, caller order
  int cardinality = 0;
  bool verified = false;

  uint64_t mask() const;
};

enum class SolveStatus { kSolved, kInfeasible, kBudgetExceeded };

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  // Present for kSolved; for kBudgetExceeded, the best verified incumbent
  // found before the budget ran out, if any.
  std::optional<SubsetSolution> solution;
  uint64_t nodes_expanded = 0;
  // False when the node budget ran out during tie-breaking; the solution is
  // still cardinality-optimal, just not proven lexicographically smallest.
  bool tie_break_complete = true;
};

constexpr uint64_t kDefaultNodeBudget = 10'000'000;

// Exact best-first branch and bound. Maximizes selected cardinality subject
// to the sign constraints; a returned solution always passes verification
// (every constrained bit of the selected subset's SimHash matches, with
// sgn(0) -> 1). Ties in cardinality resolve to the lexicographically
// smallest selection. Infeasible means exhaustive proof that no non-empty
// verified selection exists.
SolveResult solve(const PreimageProblem& problem,
                  uint64_t node_budget = kDefaultNodeBudget);

// Recomputes the selected subset's SimHash from the seed scheme and checks
// every constrained target bit. False for the empty selection.
bool verify_selection(const std::vector<uint8_t>& selection,
                      const std::vector<Domain>& candidates,
                      const std::vector<TargetBit>& target,
                      const FingerprintScheme& scheme);

// Plain-text interchange (matrix + target + optional selection), for
// cross-checks against external solvers.
void write_problem(std::ostream& os, const PreimageProblem& p,
                   const SolveResult* result = nullptr);
PreimageProblem read_problem(std::istream& is);

}  // namespace lshpriv
