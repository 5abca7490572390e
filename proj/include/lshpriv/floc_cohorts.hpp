#pragma once

#include <deque>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "lshpriv/lsh_core.hpp"

namespace lshpriv {

struct MixedHashLengthsError : std::invalid_argument {
  MixedHashLengthsError()
      : std::invalid_argument("users carry SimHashes of different lengths") {}
};

struct DuplicateUserError : std::invalid_argument {
  explicit DuplicateUserError(const std::string& id)
      : std::invalid_argument("user already present: " + id) {}
};

struct UnknownUserError : std::invalid_argument {
  explicit UnknownUserError(const std::string& id)
      : std::invalid_argument("no such user: " + id) {}
};

struct UserRecord {
  std::string user_id;
  SimHash simhash;
  bool is_sybil = false;  // attack bookkeeping only
};

// A cohort is identified by the SimHash prefix shared by its members.
using CohortId = std::string;

// Prefix tree over SimHashes. Leaves partition the hash space; a leaf whose
// two prefix-children would each hold >= k users gets split until no such
// leaf remains. Splits are processed in FIFO order of discovery.
class CohortTree {
 public:
  CohortTree(size_t hash_length, int min_size);

  static CohortTree build(const std::vector<UserRecord>& users, int min_size);

  void insert(UserRecord user);

  // The unique leaf whose prefix is a prefix of z. The cover is complete,
  // so this always succeeds for hashes of the right length.
  CohortId assign(const SimHash& z) const;

  CohortId cohort_of(const std::string& user_id) const;
  const UserRecord& user(const std::string& user_id) const;

  std::vector<CohortId> leaves() const;
  std::vector<const UserRecord*> members(const CohortId& leaf) const;
  size_t user_count() const { return users_.size(); }
  size_t hash_length() const { return hash_length_; }
  int min_size() const { return min_size_; }

  // Line-oriented table: user_id, simhash bits, cohort prefix.
  void export_table(std::ostream& os) const;

 private:
  bool decomposable(const CohortId& leaf) const;
  void split(const CohortId& leaf);
  void settle(CohortId start);

  size_t hash_length_;
  int min_size_;
  std::map<CohortId, std::vector<std::string>> leaves_;  // prefix -> user ids
  std::unordered_map<std::string, UserRecord> users_;
  std::unordered_map<std::string, CohortId> membership_;
};

}  // namespace lshpriv
