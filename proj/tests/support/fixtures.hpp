#pragma once

// Shared golden fixtures: the worked 5-bit SimHash table, the 3-hash MinHash
// family, the 5x5 vehicle/checkpoint signature table, and the example movie
// histories.

#include <map>
#include <string>
#include <vector>

#include "lshpriv/lsh_core.hpp"

namespace lshpriv::testing {

// Per-domain 5-entry fingerprints of the worked SimHash example.
inline std::map<lshpriv::Domain, std::vector<double>> worked_fingerprints() {
  return {
      {"google", {2.03, 0.18, 0.67, 0.62, -0.88}},
      {"youtube", {-1.51, -1.79, -0.26, 0.76, 1.11}},
      {"facebook", {0.07, -0.03, -1.55, -0.62, 1.61}},
      {"netflix", {0.46, 0.67, 0.20, -1.24, 0.03}},
  };
}

inline lshpriv::FingerprintScheme worked_scheme() {
  return lshpriv::FingerprintScheme::injected(worked_fingerprints());
}

// h1 = x+3, h2 = 2x+1, h3 = 3x+4, all mod 5.
inline lshpriv::HashFamily worked_family() {
  return lshpriv::HashFamily::with_params({{1, 3}, {2, 1}, {3, 4}}, 5);
}

// Five checkpoint signatures and five vehicle signatures (k = 2).
inline std::vector<std::vector<uint64_t>> worked_checkpoint_signatures() {
  return {{8, 12}, {6, 3}, {2, 7}, {4, 11}, {11, 5}};
}
inline std::vector<std::vector<uint64_t>> worked_vehicle_signatures() {
  return {{9, 11}, {2, 8}, {12, 13}, {7, 10}, {5, 18}};
}

// The example target history (32 titles) and generated history (24 titles);
// they share exactly 11 titles.
std::vector<std::string> example_target_history();
std::vector<std::string> example_generated_history();

}  // namespace lshpriv::testing
