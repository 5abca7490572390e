#include "lshpriv/preimage_ip.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace lshpriv {

std::vector<TargetBit> parse_target(const std::string& s) {
  std::vector<TargetBit> out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '0': out.push_back(TargetBit::kZero); break;
      case '1': out.push_back(TargetBit::kOne); break;
      case 'F':
      case 'f':
      case '*': out.push_back(TargetBit::kFree); break;
      default:
        throw std::invalid_argument("bad target character: " +
                                    std::string(1, c));
    }
  }
  return out;
}

std::vector<TargetBit> target_from_simhash(const SimHash& z) {
  return parse_target(z.bits());
}

std::vector<TargetBit> prefix_target(const std::string& prefix_bits,
                                     size_t ell) {
  if (prefix_bits.size() > ell) {
    throw std::invalid_argument("prefix longer than hash length");
  }
  std::vector<TargetBit> out = parse_target(prefix_bits);
  out.resize(ell, TargetBit::kFree);
  return out;
}

std::string target_to_string(const std::vector<TargetBit>& target) {
  std::string s;
  s.reserve(target.size());
  for (TargetBit b : target) {
    s.push_back(b == TargetBit::kZero ? '0'
                : b == TargetBit::kOne ? '1'
                                       : 'F');
  }
  return s;
}

size_t PreimageProblem::constrained_bits() const {
  size_t k = 0;
  for (TargetBit b : target) {
    if (b != TargetBit::kFree) ++k;
  }
  return k;
}

uint64_t SubsetSolution::mask() const {
  uint64_t m = 0;
  for (size_t i = 0; i < selection.size(); ++i) {
    if (selection[i]) m |= uint64_t{1} << i;
  }
  return m;
}

PreimageProblem build_problem(const std::vector<Domain>& candidates,
                              std::vector<TargetBit> target,
                              const FingerprintScheme& scheme) {
  if (candidates.empty()) throw EmptyCandidatesError{};
  if (candidates.size() > 64) {
    throw std::invalid_argument("candidate sets are limited to 64 entries");
  }
  if (target.empty()) throw NoConstraintError{};
  if (std::all_of(target.begin(), target.end(),
                  [](TargetBit b) { return b == TargetBit::kFree; })) {
    throw NoConstraintError{};
  }
  std::vector<Domain> sorted = candidates;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate candidate domain");
  }
  PreimageProblem p;
  p.candidates = candidates;
  p.target = std::move(target);
  p.eta.reserve(candidates.size());
  for (const Domain& d : candidates) {
    p.eta.push_back(scheme.fingerprint(d, p.target.size()).values);
  }
  return p;
}

bool verify_selection(const std::vector<uint8_t>& selection,
                      const std::vector<Domain>& candidates,
                      const std::vector<TargetBit>& target,
                      const FingerprintScheme& scheme) {
  if (selection.size() != candidates.size()) {
    throw std::invalid_argument("selection length does not match candidates");
  }
  std::vector<Domain> chosen;
  for (size_t i = 0; i < selection.size(); ++i) {
    if (selection[i]) chosen.push_back(candidates[i]);
  }
  if (chosen.empty()) return false;
  SimHash z = simhash(History{std::move(chosen)}, target.size(), scheme);
  for (size_t j = 0; j < target.size(); ++j) {
    if (target[j] == TargetBit::kFree) continue;
    if (z.bit(j) != (target[j] == TargetBit::kOne)) return false;
  }
  return true;
}

namespace {

// Constraint rows with the sign already folded in: feasibility of selection
// x is row_sum >= 0 per row; rows from target bit 0 additionally need
// row_sum > 0 for the subset's hash to actually show a 0 there.
struct FoldedRows {
  size_t n = 0;
  std::vector<std::vector<double>> a;  // rows x n
  std::vector<uint8_t> strict;
};

FoldedRows fold(const PreimageProblem& p) {
  FoldedRows rows;
  rows.n = p.n();
  for (size_t j = 0; j < p.ell(); ++j) {
    if (p.target[j] == TargetBit::kFree) continue;
    double sign = p.target[j] == TargetBit::kOne ? 1.0 : -1.0;
    std::vector<double> row(p.n());
    for (size_t i = 0; i < p.n(); ++i) row[i] = sign * p.eta[i][j];
    rows.a.push_back(std::move(row));
    rows.strict.push_back(p.target[j] == TargetBit::kZero ? 1 : 0);
  }
  return rows;
}

// Lexicographic order on selections (position 0 first, 0 < 1).
bool lex_less(uint64_t a, uint64_t b) {
  if (a == b) return false;
  unsigned pos = std::countr_zero(a ^ b);
  return ((a >> pos) & 1) == 0;
}

class Solver {
 public:
  Solver(const PreimageProblem& problem, uint64_t budget)
      : rows_(fold(problem)),
        n_(problem.n()),
        all_mask_(n_ == 64 ? ~uint64_t{0} : ((uint64_t{1} << n_) - 1)),
        budget_(budget) {}

  SolveResult run() {
    SolveResult result;
    search_max_cardinality();
    result.nodes_expanded = expanded_;
    if (!have_best_) {
      result.status = exhausted_ && !budget_hit_ ? SolveStatus::kInfeasible
                                                 : SolveStatus::kBudgetExceeded;
      return result;
    }
    if (budget_hit_ || !proved_optimal_) {
      result.status = SolveStatus::kBudgetExceeded;
      result.solution = to_solution(best_mask_);
      result.nodes_expanded = expanded_;
      return result;
    }
    result.tie_break_complete = lexicographic_minimize();
    result.status = SolveStatus::kSolved;
    result.solution = to_solution(best_mask_);
    result.nodes_expanded = expanded_;
    return result;
  }

 private:
  struct Node {
    uint64_t ones;
    uint64_t decided;
    uint32_t bound;
    uint64_t seq;
  };
  struct NodeOrder {
    bool operator()(const Node& x, const Node& y) const {
      if (x.bound != y.bound) return x.bound < y.bound;  // max-heap on bound
      return x.seq > y.seq;                              // FIFO among ties
    }
  };

  bool verified(uint64_t mask) const {
    if (mask == 0) return false;
    for (size_t r = 0; r < rows_.a.size(); ++r) {
      double s = row_sum(r, mask);
      if (rows_.strict[r] ? !(s > 0.0) : !(s >= 0.0)) return false;
    }
    return true;
  }

  double row_sum(size_t r, uint64_t mask) const {
    const double* a = rows_.a[r].data();
    double s = 0.0;
    uint64_t m = mask;
    while (m) {
      unsigned i = std::countr_zero(m);
      s += a[i];
      m &= m - 1;
    }
    return s;
  }

  // One expansion step shared by both phases. Returns false when the node is
  // closed (pruned, leaf, or all-in closure); fills branch variable otherwise.
  bool open_node(const Node& node, uint64_t* closure_mask, unsigned* branch) {
    uint64_t undecided = all_mask_ & ~node.decided;
    double worst_base = 0.0;
    size_t worst_row = rows_.a.size();
    bool prunable = false;
    for (size_t r = 0; r < rows_.a.size(); ++r) {
      const double* a = rows_.a[r].data();
      double base = row_sum(r, node.ones);
      double optimistic = base;
      uint64_t m = undecided;
      while (m) {
        unsigned i = std::countr_zero(m);
        if (a[i] > 0.0) optimistic += a[i];
        m &= m - 1;
      }
      if (rows_.strict[r] ? !(optimistic > 0.0) : !(optimistic >= 0.0)) {
        prunable = true;
        break;
      }
      if (worst_row == rows_.a.size() || base < worst_base) {
        worst_base = base;
        worst_row = r;
      }
    }
    if (prunable) return false;

    uint64_t full = node.ones | undecided;
    if (verified(full)) {
      // Max cardinality inside this subtree, already verified: close it.
      *closure_mask = full;
      return false;
    }
    if (undecided == 0) {
      if (verified(node.ones)) *closure_mask = node.ones;
      return false;
    }

    // Branch on the largest-magnitude coefficient in the tightest row.
    const double* a = rows_.a[worst_row].data();
    unsigned pick = std::countr_zero(undecided);
    double best_mag = -1.0;
    uint64_t m = undecided;
    while (m) {
      unsigned i = std::countr_zero(m);
      if (std::abs(a[i]) > best_mag) {
        best_mag = std::abs(a[i]);
        pick = i;
      }
      m &= m - 1;
    }
    *branch = pick;
    return true;
  }

  void consider_incumbent(uint64_t mask) {
    int card = std::popcount(mask);
    if (!have_best_ || card > best_card_ ||
        (card == best_card_ && lex_less(mask, best_mask_))) {
      have_best_ = true;
      best_card_ = card;
      best_mask_ = mask;
    }
  }

  void search_max_cardinality() {
    std::priority_queue<Node, std::vector<Node>, NodeOrder> queue;
    uint64_t seq = 0;
    queue.push(Node{0, 0, static_cast<uint32_t>(n_), seq++});
    while (!queue.empty()) {
      Node node = queue.top();
      if (have_best_ && static_cast<int>(node.bound) <= best_card_) {
        proved_optimal_ = true;
        return;
      }
      queue.pop();
      if (expanded_ >= budget_) {
        budget_hit_ = true;
        return;
      }
      ++expanded_;
      uint64_t closure = 0;
      unsigned branch = 0;
      if (!open_node(node, &closure, &branch)) {
        if (closure) consider_incumbent(closure);
        continue;
      }
      uint64_t bit = uint64_t{1} << branch;
      queue.push(Node{node.ones | bit, node.decided | bit, node.bound, seq++});
      queue.push(Node{node.ones, node.decided | bit, node.bound - 1, seq++});
    }
    exhausted_ = true;
    proved_optimal_ = have_best_;
  }

  // Goal search: any verified selection of cardinality best_card_ with the
  // given forced assignment, or nullopt.
  std::optional<uint64_t> probe(uint64_t fixed_ones, uint64_t fixed_decided) {
    std::priority_queue<Node, std::vector<Node>, NodeOrder> queue;
    uint64_t seq = 0;
    uint32_t bound = static_cast<uint32_t>(
        std::popcount(fixed_ones) + std::popcount(all_mask_ & ~fixed_decided));
    if (static_cast<int>(bound) < best_card_) return std::nullopt;
    queue.push(Node{fixed_ones, fixed_decided, bound, seq++});
    while (!queue.empty()) {
      Node node = queue.top();
      queue.pop();
      if (static_cast<int>(node.bound) < best_card_) continue;
      if (expanded_ >= budget_) {
        budget_hit_ = true;
        return std::nullopt;
      }
      ++expanded_;
      uint64_t closure = 0;
      unsigned branch = 0;
      if (!open_node(node, &closure, &branch)) {
        if (closure && std::popcount(closure) == best_card_) return closure;
        continue;
      }
      uint64_t bit = uint64_t{1} << branch;
      queue.push(Node{node.ones | bit, node.decided | bit, node.bound, seq++});
      queue.push(Node{node.ones, node.decided | bit, node.bound - 1, seq++});
    }
    return std::nullopt;
  }

  // Greedy prefix fixing: walks positions in order, keeping a witness
  // selection; flips a 1 to 0 whenever some witness allows it.
  bool lexicographic_minimize() {
    uint64_t fixed_zero = 0;
    uint64_t fixed_one = 0;
    for (size_t i = 0; i < n_; ++i) {
      uint64_t bit = uint64_t{1} << i;
      if ((best_mask_ & bit) == 0) {
        fixed_zero |= bit;
        continue;
      }
      auto witness = probe(fixed_one, fixed_one | fixed_zero | bit);
      if (budget_hit_) return false;
      if (witness) {
        best_mask_ = *witness;
        fixed_zero |= bit;
      } else {
        fixed_one |= bit;
      }
    }
    return true;
  }

  SubsetSolution to_solution(uint64_t mask) const {
    SubsetSolution s;
    s.selection.resize(n_, 0);
    for (size_t i = 0; i < n_; ++i) {
      if (mask & (uint64_t{1} << i)) s.selection[i] = 1;
    }
    s.cardinality = std::popcount(mask);
    s.verified = true;
    return s;
  }

  FoldedRows rows_;
  size_t n_;
  uint64_t all_mask_;
  uint64_t budget_;
  uint64_t expanded_ = 0;
  bool budget_hit_ = false;
  bool exhausted_ = false;
  bool proved_optimal_ = false;
  bool have_best_ = false;
  int best_card_ = 0;
  uint64_t best_mask_ = 0;
};

}  // namespace

SolveResult solve(const PreimageProblem& problem, uint64_t node_budget) {
  Solver solver(problem, node_budget);
  return solver.run();
}

void write_problem(std::ostream& os, const PreimageProblem& p,
                   const SolveResult* result) {
  os << "lshpriv-preimage v1\n";
  os << "n " << p.n() << " ell " << p.ell() << "\n";
  os << "target " << target_to_string(p.target) << "\n";
  os.precision(17);
  for (size_t i = 0; i < p.n(); ++i) {
    os << "candidate " << p.candidates[i];
    for (double v : p.eta[i]) os << ' ' << v;
    os << "\n";
  }
  if (result) {
    switch (result->status) {
      case SolveStatus::kSolved: os << "status solved\n"; break;
      case SolveStatus::kInfeasible: os << "status infeasible\n"; break;
      case SolveStatus::kBudgetExceeded: os << "status budget-exceeded\n"; break;
    }
    os << "nodes " << result->nodes_expanded << "\n";
    if (result->solution) {
      os << "selection ";
      for (uint8_t b : result->solution->selection) os << (b ? '1' : '0');
      os << "\ncardinality " << result->solution->cardinality << "\n";
    }
  }
}

PreimageProblem read_problem(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "lshpriv-preimage v1") {
    throw std::invalid_argument("bad preimage problem header");
  }
  size_t n = 0;
  size_t ell = 0;
  std::string tag;
  is >> tag >> n >> tag >> ell;
  std::string target_str;
  is >> tag >> target_str;
  PreimageProblem p;
  p.target = parse_target(target_str);
  if (p.target.size() != ell) {
    throw std::invalid_argument("target length mismatch in problem file");
  }
  for (size_t i = 0; i < n; ++i) {
    is >> tag;
    if (tag != "candidate") {
      throw std::invalid_argument("expected candidate row");
    }
    std::string token;
    is >> token;
    std::vector<double> row(ell);
    for (double& v : row) is >> v;
    if (!is) throw std::invalid_argument("truncated candidate row");
    p.candidates.push_back(std::move(token));
    p.eta.push_back(std::move(row));
  }
  return p;
}

}  // namespace lshpriv
