#include "lshpriv/sybil.hpp"

#include <ostream>

namespace lshpriv {

namespace {

void census(const CohortTree& tree, const CohortId& cohort, size_t* real,
            size_t* sybil) {
  *real = 0;
  *sybil = 0;
  for (const UserRecord* u : tree.members(cohort)) {
    if (u->is_sybil) {
      ++*sybil;
    } else {
      ++*real;
    }
  }
}

}  // namespace

CampaignReport run_campaign(CohortTree& tree, const SybilCampaign& campaign,
                            const Vocabulary& vocab,
                            const FingerprintScheme& scheme) {
  if (campaign.batch < 0) throw std::invalid_argument("batch must be >= 0");
  if (campaign.rounds < 0) throw std::invalid_argument("rounds must be >= 0");
  // Throws TargetMissingError via UnknownUserError mapping below.
  const UserRecord* target = nullptr;
  try {
    target = &tree.user(campaign.target_user);
  } catch (const UnknownUserError&) {
    throw TargetMissingError{campaign.target_user};
  }

  CampaignReport report;
  report.target_user = campaign.target_user;
  report.hash_length = tree.hash_length();
  report.initial_prefix = tree.cohort_of(campaign.target_user);
  report.final_prefix = report.initial_prefix;

  HistoryGenerator gen(campaign.generator, vocab);
  int sybil_serial = 0;

  for (int round = 0; round < campaign.rounds; ++round) {
    CohortId sigma = tree.cohort_of(campaign.target_user);
    if (!target->simhash.has_prefix(sigma)) {
      throw std::logic_error("cohort prefix is not a prefix of the target hash");
    }
    if (sigma.size() >= tree.hash_length()) break;

    RoundRecord rec;
    rec.prefix_before = sigma;
    for (int s = 0; s < campaign.batch; ++s) {
      // Even split across both extensions: the cohort becomes decomposable
      // no matter what the target's next bit is.
      std::string desired = sigma + (s % 2 == 0 ? '0' : '1');
      for (int attempt = 0; attempt < campaign.attempts_per_sybil; ++attempt) {
        History h = gen.next();
        PreimageProblem problem =
            build_problem(h.items(), parse_target(desired), scheme);
        SolveResult solved = solve(problem, campaign.node_budget);
        if (solved.status != SolveStatus::kSolved) continue;
        std::vector<Domain> chosen;
        for (size_t i = 0; i < h.items().size(); ++i) {
          if (solved.solution->selection[i]) chosen.push_back(h.items()[i]);
        }
        SimHash z = simhash(History{chosen}, tree.hash_length(), scheme);
        if (!z.has_prefix(desired)) {
          throw std::logic_error("solver returned a non-matching Sybil hash");
        }
        UserRecord sybil;
        sybil.user_id = "sybil-" + std::to_string(sybil_serial++);
        sybil.simhash = z;
        sybil.is_sybil = true;
        tree.insert(std::move(sybil));
        ++rec.injected;
        break;
      }
    }
    rec.prefix_after = tree.cohort_of(campaign.target_user);
    census(tree, rec.prefix_after, &rec.cohort_real, &rec.cohort_sybil);
    rec.stalled = rec.injected == 0;
    report.final_prefix = rec.prefix_after;
    report.rounds.push_back(rec);
    if (rec.stalled) {
      report.stalled = true;
      break;
    }
  }
  return report;
}

int leaked_bits(const CampaignReport& report) {
  return static_cast<int>(report.final_prefix.size()) -
         static_cast<int>(report.initial_prefix.size());
}

void write_campaign_report(std::ostream& os, const CampaignReport& report) {
  os << "lshpriv-sybil-report v1\n";
  os << "target " << report.target_user << "\n";
  os << "hash-length " << report.hash_length << "\n";
  os << "initial-prefix \"" << report.initial_prefix << "\"\n";
  os << "final-prefix \"" << report.final_prefix << "\"\n";
  os << "leaked-bits " << leaked_bits(report) << "\n";
  os << "stalled " << (report.stalled ? 1 : 0) << "\n";
  int i = 1;
  for (const RoundRecord& r : report.rounds) {
    os << "round " << i++ << " prefix-before \"" << r.prefix_before
       << "\" injected " << r.injected << " prefix-after \"" << r.prefix_after
       << "\" cohort-real " << r.cohort_real << " cohort-sybil "
       << r.cohort_sybil << " stalled " << (r.stalled ? 1 : 0) << "\n";
  }
}

}  // namespace lshpriv
