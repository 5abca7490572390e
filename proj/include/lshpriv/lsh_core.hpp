#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lshpriv/util.hpp"

namespace lshpriv {

// A domain name, movie id, or any other history item. Compared byte-exact.
using Domain = std::string;

struct EmptyHistoryError : std::invalid_argument {
  EmptyHistoryError() : std::invalid_argument("history is empty") {}
};

struct LengthMismatchError : std::invalid_argument {
  explicit LengthMismatchError(const std::string& what)
      : std::invalid_argument(what) {}
};

// A finite set of domains. Stored sorted and deduplicated so that equality,
// intersection, and iteration order are all deterministic.
class History {
 public:
  History() = default;
  explicit History(std::vector<Domain> items);

  bool empty() const { return items_.empty(); }
  size_t size() const { return items_.size(); }
  const std::vector<Domain>& items() const { return items_; }
  bool contains(const Domain& d) const;

  bool operator==(const History&) const = default;

 private:
  std::vector<Domain> items_;
};

// Count of common items between two histories.
size_t score_overlap(const History& a, const History& b);

struct FingerprintVector {
  std::vector<double> values;  // length ell, finite entries
  size_t ell() const { return values.size(); }
};

// An ell-bit SimHash. bits() is a '0'/'1' string; bit 0 is the first
// (most significant for cohort-prefix purposes) position.
class SimHash {
 public:
  SimHash() = default;
  explicit SimHash(std::string bits);

  size_t length() const { return bits_.size(); }
  bool bit(size_t j) const { return bits_[j] == '1'; }
  const std::string& bits() const { return bits_; }
  bool has_prefix(const std::string& prefix) const {
    return bits_.compare(0, prefix.size(), prefix) == 0;
  }

  bool operator==(const SimHash&) const = default;

 private:
  std::string bits_;
};

// Source of per-domain fingerprint vectors. The default scheme derives a
// Gaussian stream per domain: FNV-1a(token) seeds SplitMix64, and pairs of
// (0,1] uniforms go through Box-Muller. Streams are prefix-stable: the first
// ell entries do not depend on the requested length.
//
// The injected mode substitutes a fixed token -> vector table, used for
// golden examples and cross-checks. Tokens absent from the table fall back
// to the pseudorandom stream.
class FingerprintScheme {
 public:
  static FingerprintScheme pseudorandom();
  static FingerprintScheme injected(
      std::map<Domain, std::vector<double>> table);

  FingerprintVector fingerprint(const Domain& d, size_t ell) const;

  // Goes into run manifests so hashes are replayable bit-for-bit.
  std::string describe() const;

 private:
  FingerprintScheme() = default;
  std::map<Domain, std::vector<double>> injected_;
  bool is_injected_ = false;
};

// SimHash of a history: elementwise sign of the summed fingerprints.
// Sign convention: sum >= 0 yields bit 1 (sgn(0) -> 1).
SimHash simhash(const History& h, size_t ell, const FingerprintScheme& scheme);

// --- MinHash ---

// Sentinel for "no element seen yet"; strictly greater than any modulus - 1.
constexpr uint64_t kNoHash = UINT64_MAX;

// k affine hash functions h_i(x) = (r_i * x + c_i) mod p over entity ids.
// Ids are already naturals here, so the id-to-natural base map is the
// identity; p must exceed the largest id in use.
class HashFamily {
 public:
  struct Params {
    uint64_t r;
    uint64_t c;
    bool operator==(const Params&) const = default;
  };

  // Random family: p = smallest prime > max_id, r_i in [1, p), c_i in [0, p).
  static HashFamily random(size_t count, uint64_t max_id, uint64_t seed);

  // Explicit parameters, e.g. worked examples. modulus must be prime.
  static HashFamily with_params(std::vector<Params> params, uint64_t modulus);

  // Identity-like family of size count: h_i(x) = x mod p.
  static HashFamily identity(size_t count, uint64_t max_id);

  size_t count() const { return params_.size(); }
  uint64_t modulus() const { return modulus_; }
  const std::vector<Params>& params() const { return params_; }

  // h_i(x); i is zero-based, throws std::out_of_range when i >= count().
  uint64_t eval(size_t i, uint64_t x) const;

  bool operator==(const HashFamily&) const = default;

 private:
  std::vector<Params> params_;
  uint64_t modulus_ = 0;
};

// Coordinate-wise minimum of hashed elements. Entries only ever decrease.
class MinHashSignature {
 public:
  MinHashSignature() = default;
  explicit MinHashSignature(size_t count)
      : entries_(count, kNoHash) {}
  explicit MinHashSignature(std::vector<uint64_t> entries)
      : entries_(std::move(entries)) {}

  size_t size() const { return entries_.size(); }
  const std::vector<uint64_t>& entries() const { return entries_; }
  uint64_t entry(size_t i) const { return entries_[i]; }

  // Folds one element in: entry i becomes min(entry i, h_i(x)).
  void update(const HashFamily& f, uint64_t x);

  bool all_unset() const;

  bool operator==(const MinHashSignature&) const = default;

 private:
  std::vector<uint64_t> entries_;
};

// Batch signature of a set; empty sets yield the all-sentinel signature.
MinHashSignature minhash_signature(const HashFamily& f,
                                   const std::vector<uint64_t>& ids);

// Fraction of coordinates where the two signatures agree (both-unset
// positions count as agreement). Throws LengthMismatchError.
double jaccard_estimate(const MinHashSignature& a, const MinHashSignature& b);

}  // namespace lshpriv
