#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace lshpriv {

// FNV-1a, the fixed string hash used to seed per-domain fingerprint streams.
constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

constexpr uint64_t fnv1a64(std::string_view s) {
  uint64_t h = kFnvOffset;
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Expands one top-level seed into per-purpose streams. Labels are part of the
// replay contract: same (seed, label) always yields the same stream seed.
inline uint64_t derive_seed(uint64_t base, std::string_view label) {
  uint64_t s = base ^ fnv1a64(label);
  return splitmix64(s);
}

// Deterministic bounded draw; std::uniform_int_distribution is
// implementation-defined, so bulk sampling goes through these helpers.
inline uint64_t uniform_u64(std::mt19937_64& rng, uint64_t bound) {
  // bound > 0; rejection sampling keeps the draw unbiased.
  uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline uint64_t next_prime_above(uint64_t n) {
  uint64_t p = n + 1;
  while (!is_prime(p)) ++p;
  return p;
}

// Runs fn(begin..end) across workers. fn(lo, hi) handles [lo, hi).
inline void parallel_chunks(size_t count, unsigned threads,
                            const std::function<void(size_t, size_t)>& fn) {
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads <= 1 || count < 2) {
    fn(0, count);
    return;
  }
  threads = std::min<unsigned>(threads, static_cast<unsigned>(count));
  std::vector<std::thread> pool;
  size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    size_t lo = t * chunk;
    size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

inline MeanSd mean_sd(const std::vector<double>& xs) {
  MeanSd out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return out;
}

}  // namespace lshpriv
