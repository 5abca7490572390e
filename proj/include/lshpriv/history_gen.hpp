#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lshpriv/lsh_core.hpp"

namespace lshpriv {

struct FileMissingError : std::runtime_error {
  explicit FileMissingError(const std::string& path)
      : std::runtime_error("cannot open file: " + path) {}
};

struct UnknownItemError : std::runtime_error {
  explicit UnknownItemError(const std::string& item)
      : std::runtime_error("item not in vocabulary: " + item) {}
};

// Ordered item universe with empirical counts (e.g. the most-watched movies).
struct Vocabulary {
  std::vector<Domain> items;
  std::vector<uint64_t> frequencies;

  size_t size() const { return items.size(); }
  bool contains(const Domain& d) const;
  // Stable 64-bit digest of the item list; stamped into history files.
  uint64_t checksum() const;
};

enum class GeneratorKind { kUniform, kEmpirical, kFile };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kUniform;
  size_t history_len = 32;
  std::string source_path;  // kFile only
  uint64_t rng_seed = 0;
  bool strict = true;  // kFile: reject items outside the vocabulary
};

// Stateful history stream so long-running attacks can keep drawing fresh
// candidates. kUniform draws uniform fixed-size subsets; kEmpirical samples
// without replacement proportional to frequency; kFile replays a recorded
// file in order (and throws when exhausted).
class HistoryGenerator {
 public:
  HistoryGenerator(GeneratorSpec spec, const Vocabulary& vocab);

  History next();
  std::vector<History> take(size_t count);
  size_t remaining_file_histories() const;

 private:
  GeneratorSpec spec_;
  const Vocabulary& vocab_;
  std::mt19937_64 rng_;
  std::vector<History> file_histories_;
  size_t file_pos_ = 0;
};

// Batch form; kFile yields at most the file's contents.
std::vector<History> generate(const GeneratorSpec& spec,
                              const Vocabulary& vocab, size_t count);

// One history per line, tab-separated item tokens, UTF-8; the header line
// carries the vocabulary checksum.
void write_history_file(const std::string& path, const Vocabulary& vocab,
                        const std::vector<History>& histories);
std::vector<History> read_history_file(const std::string& path,
                                       const Vocabulary& vocab, bool strict);

}  // namespace lshpriv
