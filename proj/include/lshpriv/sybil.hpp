#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lshpriv/floc_cohorts.hpp"
#include "lshpriv/history_gen.hpp"
#include "lshpriv/preimage_ip.hpp"

namespace lshpriv {

struct TargetMissingError : std::invalid_argument {
  explicit TargetMissingError(const std::string& id)
      : std::invalid_argument("target user not in tree: " + id) {}
};

struct SybilCampaign {
  std::string target_user;
  int rounds = 10;
  // Sybils injected per round, split evenly across the two prefix
  // extensions. Below the tree's min cohort size a split cannot be forced
  // by Sybils alone; 0 makes the campaign observation-only.
  int batch = 4;
  GeneratorSpec generator;
  uint64_t node_budget = 200'000;  // per Sybil synthesis solve
  int attempts_per_sybil = 8;      // generated histories tried per Sybil
};

struct RoundRecord {
  std::string prefix_before;
  std::string prefix_after;
  int injected = 0;
  size_t cohort_real = 0;   // target cohort census after the round
  size_t cohort_sybil = 0;
  bool stalled = false;     // no feasible Sybil found this round
};

struct CampaignReport {
  std::string target_user;
  size_t hash_length = 0;
  std::string initial_prefix;
  std::string final_prefix;
  bool stalled = false;
  std::vector<RoundRecord> rounds;
};

// Runs the prefix-extension attack: each round reads the target's cohort
// prefix, synthesizes Sybil histories whose SimHash extends it (through
// prefix-constrained pre-image solves over generated histories, never forged
// hashes), inserts them, and records the outcome. Stops when rounds are
// exhausted, the prefix reaches the full hash length, or a round yields no
// feasible Sybil.
CampaignReport run_campaign(CohortTree& tree, const SybilCampaign& campaign,
                            const Vocabulary& vocab,
                            const FingerprintScheme& scheme);

// Final prefix length minus initial prefix length.
int leaked_bits(const CampaignReport& report);

// Structured text: per-round prefix and real/Sybil cohort census.
void write_campaign_report(std::ostream& os, const CampaignReport& report);

}  // namespace lshpriv
