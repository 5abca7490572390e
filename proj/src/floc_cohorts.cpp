#include "lshpriv/floc_cohorts.hpp"

#include <algorithm>

namespace lshpriv {

CohortTree::CohortTree(size_t hash_length, int min_size)
    : hash_length_(hash_length), min_size_(min_size) {
  if (min_size < 1) throw std::invalid_argument("min cohort size must be >= 1");
  leaves_.emplace(CohortId{}, std::vector<std::string>{});
}

CohortTree CohortTree::build(const std::vector<UserRecord>& users,
                             int min_size) {
  if (users.empty()) {
    throw std::invalid_argument("cannot infer hash length from zero users");
  }
  CohortTree tree(users.front().simhash.length(), min_size);
  for (const UserRecord& u : users) {
    if (u.simhash.length() != tree.hash_length_) throw MixedHashLengthsError{};
    if (tree.users_.count(u.user_id)) throw DuplicateUserError{u.user_id};
    tree.users_.emplace(u.user_id, u);
    tree.membership_.emplace(u.user_id, CohortId{});
    tree.leaves_.begin()->second.push_back(u.user_id);
  }
  tree.settle(CohortId{});
  return tree;
}

void CohortTree::insert(UserRecord user) {
  if (user.simhash.length() != hash_length_) throw MixedHashLengthsError{};
  if (users_.count(user.user_id)) throw DuplicateUserError{user.user_id};
  CohortId leaf = assign(user.simhash);
  std::string id = user.user_id;
  users_.emplace(id, std::move(user));
  membership_.emplace(id, leaf);
  leaves_.at(leaf).push_back(id);
  settle(leaf);
}

CohortId CohortTree::assign(const SimHash& z) const {
  if (z.length() != hash_length_) throw MixedHashLengthsError{};
  std::string prefix;
  prefix.reserve(hash_length_);
  for (size_t len = 0; len <= hash_length_; ++len) {
    if (leaves_.count(prefix)) return prefix;
    prefix.push_back(z.bits()[len]);
  }
  throw std::logic_error("leaf cover is incomplete");  // unreachable
}

CohortId CohortTree::cohort_of(const std::string& user_id) const {
  auto it = membership_.find(user_id);
  if (it == membership_.end()) throw UnknownUserError{user_id};
  return it->second;
}

const UserRecord& CohortTree::user(const std::string& user_id) const {
  auto it = users_.find(user_id);
  if (it == users_.end()) throw UnknownUserError{user_id};
  return it->second;
}

std::vector<CohortId> CohortTree::leaves() const {
  std::vector<CohortId> out;
  out.reserve(leaves_.size());
  for (const auto& [prefix, _] : leaves_) out.push_back(prefix);
  return out;
}

std::vector<const UserRecord*> CohortTree::members(const CohortId& leaf) const {
  auto it = leaves_.find(leaf);
  if (it == leaves_.end()) throw std::out_of_range("no such cohort: " + leaf);
  std::vector<const UserRecord*> out;
  out.reserve(it->second.size());
  for (const std::string& id : it->second) out.push_back(&users_.at(id));
  return out;
}

bool CohortTree::decomposable(const CohortId& leaf) const {
  if (leaf.size() >= hash_length_) return false;
  const auto& ids = leaves_.at(leaf);
  size_t zeros = 0;
  size_t ones = 0;
  for (const std::string& id : ids) {
    if (users_.at(id).simhash.bit(leaf.size())) {
      ++ones;
    } else {
      ++zeros;
    }
  }
  return zeros >= static_cast<size_t>(min_size_) &&
         ones >= static_cast<size_t>(min_size_);
}

void CohortTree::split(const CohortId& leaf) {
  std::vector<std::string> ids = std::move(leaves_.at(leaf));
  leaves_.erase(leaf);
  CohortId zero = leaf + '0';
  CohortId one = leaf + '1';
  auto& zero_ids = leaves_[zero];
  auto& one_ids = leaves_[one];
  for (std::string& id : ids) {
    const UserRecord& u = users_.at(id);
    CohortId& target = u.simhash.bit(leaf.size()) ? one : zero;
    membership_[id] = target;
    (u.simhash.bit(leaf.size()) ? one_ids : zero_ids).push_back(std::move(id));
  }
}

void CohortTree::settle(CohortId start) {
  std::deque<CohortId> queue{std::move(start)};
  while (!queue.empty()) {
    CohortId leaf = std::move(queue.front());
    queue.pop_front();
    if (!leaves_.count(leaf)) continue;  // already split away
    if (!decomposable(leaf)) continue;
    split(leaf);
    queue.push_back(leaf + '0');
    queue.push_back(leaf + '1');
  }
}

void CohortTree::export_table(std::ostream& os) const {
  std::vector<std::string> ids;
  ids.reserve(users_.size());
  for (const auto& [id, _] : users_) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  for (const std::string& id : ids) {
    const UserRecord& u = users_.at(id);
    os << id << '\t' << u.simhash.bits() << '\t' << membership_.at(id) << '\n';
  }
}

}  // namespace lshpriv
