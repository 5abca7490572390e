#include "lshpriv/history_gen.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "lshpriv/util.hpp"

namespace lshpriv {

bool Vocabulary::contains(const Domain& d) const {
  return std::find(items.begin(), items.end(), d) != items.end();
}

uint64_t Vocabulary::checksum() const {
  uint64_t h = kFnvOffset;
  for (const Domain& d : items) {
    for (unsigned char c : d) {
      h ^= c;
      h *= kFnvPrime;
    }
    h ^= '\n';
    h *= kFnvPrime;
  }
  return h;
}

namespace {

// Binary-indexed tree over item weights; supports weighted draws without
// replacement in O(log n) per draw.
class WeightedSampler {
 public:
  explicit WeightedSampler(const std::vector<uint64_t>& weights)
      : n_(weights.size()), tree_(weights.size() + 1, 0) {
    for (size_t i = 0; i < n_; ++i) add(i, static_cast<int64_t>(weights[i]));
  }

  int64_t total() const { return prefix(n_); }

  // Draws index with probability weight/total and removes it.
  size_t draw(std::mt19937_64& rng) {
    int64_t t = static_cast<int64_t>(
        uniform_u64(rng, static_cast<uint64_t>(total())));
    size_t idx = find(t);
    int64_t w = weight(idx);
    add(idx, -w);
    return idx;
  }

 private:
  void add(size_t i, int64_t delta) {
    for (size_t j = i + 1; j <= n_; j += j & (~j + 1)) tree_[j] += delta;
  }
  int64_t prefix(size_t i) const {
    int64_t s = 0;
    for (size_t j = i; j > 0; j -= j & (~j + 1)) s += tree_[j];
    return s;
  }
  int64_t weight(size_t i) const { return prefix(i + 1) - prefix(i); }
  // Smallest index with prefix(index + 1) > t.
  size_t find(int64_t t) const {
    size_t pos = 0;
    size_t mask = 1;
    while ((mask << 1) <= n_) mask <<= 1;
    for (; mask > 0; mask >>= 1) {
      if (pos + mask <= n_ && tree_[pos + mask] <= t) {
        pos += mask;
        t -= tree_[pos];
      }
    }
    return pos;  // zero-based item index
  }

  size_t n_;
  std::vector<int64_t> tree_;
};

std::vector<Domain> pick(const Vocabulary& vocab,
                         const std::vector<size_t>& idx) {
  std::vector<Domain> out;
  out.reserve(idx.size());
  for (size_t i : idx) out.push_back(vocab.items[i]);
  return out;
}

}  // namespace

HistoryGenerator::HistoryGenerator(GeneratorSpec spec, const Vocabulary& vocab)
    : spec_(std::move(spec)), vocab_(vocab), rng_(spec_.rng_seed) {
  if (spec_.kind != GeneratorKind::kFile) {
    if (spec_.history_len < 1 || spec_.history_len > vocab_.size()) {
      throw std::invalid_argument(
          "history_len must be in [1, vocabulary size]");
    }
  }
  if (spec_.kind == GeneratorKind::kEmpirical) {
    uint64_t total = 0;
    for (uint64_t f : vocab_.frequencies) total += f;
    if (vocab_.frequencies.size() != vocab_.size() || total == 0) {
      throw std::invalid_argument(
          "empirical generation needs positive vocabulary frequencies");
    }
  }
  if (spec_.kind == GeneratorKind::kFile) {
    if (spec_.source_path.empty()) {
      throw std::invalid_argument("FILE generator needs source_path");
    }
    file_histories_ =
        read_history_file(spec_.source_path, vocab_, spec_.strict);
  }
}

History HistoryGenerator::next() {
  switch (spec_.kind) {
    case GeneratorKind::kUniform: {
      // Floyd's subset sampling: history_len draws, no O(vocab) setup.
      std::unordered_set<size_t> chosen;
      std::vector<size_t> idx;
      size_t v = vocab_.size();
      for (size_t j = v - spec_.history_len; j < v; ++j) {
        size_t t = static_cast<size_t>(uniform_u64(rng_, j + 1));
        if (chosen.insert(t).second) {
          idx.push_back(t);
        } else {
          chosen.insert(j);
          idx.push_back(j);
        }
      }
      return History{pick(vocab_, idx)};
    }
    case GeneratorKind::kEmpirical: {
      WeightedSampler sampler(vocab_.frequencies);
      std::vector<size_t> idx;
      for (size_t j = 0; j < spec_.history_len; ++j) {
        if (sampler.total() == 0) break;  // fewer positive weights than len
        idx.push_back(sampler.draw(rng_));
      }
      return History{pick(vocab_, idx)};
    }
    case GeneratorKind::kFile: {
      if (file_pos_ >= file_histories_.size()) {
        throw std::out_of_range("history file exhausted");
      }
      return file_histories_[file_pos_++];
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<History> HistoryGenerator::take(size_t count) {
  std::vector<History> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    if (spec_.kind == GeneratorKind::kFile &&
        file_pos_ >= file_histories_.size()) {
      break;
    }
    out.push_back(next());
  }
  return out;
}

size_t HistoryGenerator::remaining_file_histories() const {
  return file_histories_.size() - file_pos_;
}

std::vector<History> generate(const GeneratorSpec& spec,
                              const Vocabulary& vocab, size_t count) {
  HistoryGenerator gen(spec, vocab);
  return gen.take(count);
}

void write_history_file(const std::string& path, const Vocabulary& vocab,
                        const std::vector<History>& histories) {
  std::ofstream os(path);
  if (!os) throw FileMissingError{path};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(vocab.checksum()));
  os << "# lshpriv-histories v1 vocab-checksum " << buf << "\n";
  for (const History& h : histories) {
    for (size_t i = 0; i < h.items().size(); ++i) {
      if (i) os << '\t';
      os << h.items()[i];
    }
    os << '\n';
  }
}

std::vector<History> read_history_file(const std::string& path,
                                       const Vocabulary& vocab, bool strict) {
  std::ifstream is(path);
  if (!is) throw FileMissingError{path};
  std::unordered_set<std::string> known(vocab.items.begin(),
                                        vocab.items.end());
  std::vector<History> out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && line.rfind("#", 0) == 0) {
      first = false;
      auto pos = line.find("vocab-checksum ");
      if (pos != std::string::npos && strict) {
        uint64_t stamped =
            std::stoull(line.substr(pos + 15), nullptr, 16);
        if (stamped != vocab.checksum()) {
          throw std::runtime_error(
              "history file was written against a different vocabulary");
        }
      }
      continue;
    }
    first = false;
    if (line.empty()) continue;
    std::vector<Domain> items;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, '\t')) {
      if (token.empty()) continue;
      if (!known.count(token)) {
        if (strict) throw UnknownItemError{token};
        continue;  // lenient: drop the unknown item
      }
      items.push_back(token);
    }
    if (!items.empty()) out.push_back(History{std::move(items)});
  }
  return out;
}

}  // namespace lshpriv
