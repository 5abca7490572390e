#include "lshpriv/lsh_core.hpp"

#include <algorithm>
#include <cmath>

namespace lshpriv {

History::History(std::vector<Domain> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool History::contains(const Domain& d) const {
  return std::binary_search(items_.begin(), items_.end(), d);
}

size_t score_overlap(const History& a, const History& b) {
  size_t n = 0;
  auto ia = a.items().begin();
  auto ib = b.items().begin();
  while (ia != a.items().end() && ib != b.items().end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

SimHash::SimHash(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("SimHash bits must be '0' or '1'");
    }
  }
}

FingerprintScheme FingerprintScheme::pseudorandom() {
  return FingerprintScheme{};
}

FingerprintScheme FingerprintScheme::injected(
    std::map<Domain, std::vector<double>> table) {
  FingerprintScheme s;
  s.injected_ = std::move(table);
  s.is_injected_ = true;
  return s;
}

namespace {

// (0, 1] uniform from the stream; the +1 in the mantissa keeps log() finite.
double next_unit_open_zero(uint64_t& state) {
  return static_cast<double>((splitmix64(state) >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

FingerprintVector FingerprintScheme::fingerprint(const Domain& d,
                                                 size_t ell) const {
  if (ell == 0) throw std::invalid_argument("fingerprint length must be >= 1");
  if (is_injected_) {
    auto it = injected_.find(d);
    if (it != injected_.end()) {
      if (it->second.size() < ell) {
        throw std::invalid_argument("injected fingerprint for '" + d +
                                    "' is shorter than requested length");
      }
      return FingerprintVector{
          std::vector<double>(it->second.begin(), it->second.begin() + ell)};
    }
  }
  FingerprintVector out;
  out.values.reserve(ell);
  uint64_t state = fnv1a64(d);
  constexpr double two_pi = 6.283185307179586476925286766559;
  while (out.values.size() < ell) {
    double u1 = next_unit_open_zero(state);
    double u2 = next_unit_open_zero(state);
    double radius = std::sqrt(-2.0 * std::log(u1));
    out.values.push_back(radius * std::cos(two_pi * u2));
    if (out.values.size() < ell) {
      out.values.push_back(radius * std::sin(two_pi * u2));
    }
  }
  return out;
}

std::string FingerprintScheme::describe() const {
  if (is_injected_) {
    return "injected-table(" + std::to_string(injected_.size()) +
           " entries, fallback fnv1a64-splitmix64-boxmuller-v1)";
  }
  return "fnv1a64-splitmix64-boxmuller-v1";
}

SimHash simhash(const History& h, size_t ell,
                const FingerprintScheme& scheme) {
  if (h.empty()) throw EmptyHistoryError{};
  std::vector<double> sums(ell, 0.0);
  for (const Domain& d : h.items()) {
    FingerprintVector fp = scheme.fingerprint(d, ell);
    for (size_t j = 0; j < ell; ++j) sums[j] += fp.values[j];
  }
  std::string bits(ell, '0');
  for (size_t j = 0; j < ell; ++j) {
    if (sums[j] >= 0.0) bits[j] = '1';
  }
  return SimHash{std::move(bits)};
}

HashFamily HashFamily::random(size_t count, uint64_t max_id, uint64_t seed) {
  if (count == 0) throw std::invalid_argument("hash family needs count >= 1");
  uint64_t p = next_prime_above(max_id);
  std::mt19937_64 rng(seed);
  std::vector<Params> params;
  params.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    uint64_t r = 1 + uniform_u64(rng, p - 1);  // [1, p)
    uint64_t c = uniform_u64(rng, p);          // [0, p)
    params.push_back({r, c});
  }
  return with_params(std::move(params), p);
}

HashFamily HashFamily::with_params(std::vector<Params> params,
                                   uint64_t modulus) {
  if (params.empty()) throw std::invalid_argument("hash family needs count >= 1");
  if (!is_prime(modulus)) {
    throw std::invalid_argument("hash family modulus must be prime");
  }
  HashFamily f;
  f.params_ = std::move(params);
  f.modulus_ = modulus;
  return f;
}

HashFamily HashFamily::identity(size_t count, uint64_t max_id) {
  uint64_t p = next_prime_above(max_id);
  return with_params(std::vector<Params>(count, Params{1, 0}), p);
}

uint64_t HashFamily::eval(size_t i, uint64_t x) const {
  if (i >= params_.size()) {
    throw std::out_of_range("hash function index out of range");
  }
  const Params& pr = params_[i];
  unsigned __int128 v = static_cast<unsigned __int128>(pr.r) * x + pr.c;
  return static_cast<uint64_t>(v % modulus_);
}

void MinHashSignature::update(const HashFamily& f, uint64_t x) {
  if (entries_.size() != f.count()) {
    throw LengthMismatchError("signature length does not match family count");
  }
  for (size_t i = 0; i < entries_.size(); ++i) {
    entries_[i] = std::min(entries_[i], f.eval(i, x));
  }
}

bool MinHashSignature::all_unset() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](uint64_t e) { return e == kNoHash; });
}

MinHashSignature minhash_signature(const HashFamily& f,
                                   const std::vector<uint64_t>& ids) {
  MinHashSignature sig(f.count());
  for (uint64_t x : ids) sig.update(f, x);
  return sig;
}

double jaccard_estimate(const MinHashSignature& a, const MinHashSignature& b) {
  if (a.size() != b.size()) {
    throw LengthMismatchError("signature lengths differ");
  }
  if (a.size() == 0) return 0.0;
  size_t agree = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a.entry(i) == b.entry(i)) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(a.size());
}

}  // namespace lshpriv
