#include "lshpriv/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <unordered_map>

#include "lshpriv/util.hpp"

namespace lshpriv {

namespace {

// Minimal RFC4180-ish reader: quoted fields may contain commas and escaped
// quotes. Porto polylines rely on this.
bool read_csv_row(std::istream& is, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  int c;
  while ((c = is.get()) != EOF) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (is.peek() == '"') {
          field.push_back('"');
          is.get();
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(static_cast<char>(c));
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field.push_back(static_cast<char>(c));
    }
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

size_t find_column(const std::vector<std::string>& header,
                   const std::string& name) {
  for (size_t i = 0; i < header.size(); ++i) {
    if (lower(header[i]) == lower(name)) return i;
  }
  throw MissingColumnError{name};
}

bool parse_u64(const std::string& s, uint64_t* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size()) return false;
  *out = v;
  return true;
}

bool parse_i64(const std::string& s, int64_t* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size()) return false;
  *out = v;
  return true;
}

void note_skip(LoadStats& stats, size_t row, const std::string& why) {
  ++stats.rows_skipped;
  if (stats.skip_samples.size() < 10) {
    stats.skip_samples.push_back("row " + std::to_string(row) + ": " + why);
  }
}

// "[[lon,lat],[lon,lat],...]" with arbitrary whitespace; scientific notation
// accepted. Returns false on any structural problem.
bool parse_polyline(const std::string& s, std::vector<GeoPoint>* points) {
  points->clear();
  const char* p = s.c_str();
  auto skip_ws = [&p] {
    while (*p == ' ' || *p == '\t') ++p;
  };
  skip_ws();
  if (*p != '[') return false;
  ++p;
  skip_ws();
  if (*p == ']') {
    ++p;
    skip_ws();
    return *p == '\0';
  }
  for (;;) {
    skip_ws();
    if (*p != '[') return false;
    ++p;
    char* end = nullptr;
    double lon = std::strtod(p, &end);
    if (end == p) return false;
    p = end;
    skip_ws();
    if (*p != ',') return false;
    ++p;
    double lat = std::strtod(p, &end);
    if (end == p) return false;
    p = end;
    skip_ws();
    if (*p != ']') return false;
    ++p;
    if (!std::isfinite(lon) || !std::isfinite(lat)) return false;
    points->push_back(GeoPoint{lon, lat});
    skip_ws();
    if (*p == ',') {
      ++p;
      continue;
    }
    if (*p == ']') {
      ++p;
      skip_ws();
      return *p == '\0';
    }
    return false;
  }
}

}  // namespace

RatingsLoad load_ratings(const std::string& path, size_t top_k_items,
                         size_t max_history_len) {
  if (top_k_items < 1) throw std::invalid_argument("top_k_items must be >= 1");
  std::ifstream is(path);
  if (!is) throw FileMissingError{path};

  std::vector<std::string> fields;
  if (!read_csv_row(is, fields)) throw MissingColumnError{"userId"};
  size_t user_col = find_column(fields, "userId");
  size_t item_col = find_column(fields, "movieId");
  size_t rating_col = find_column(fields, "rating");
  size_t ts_col = find_column(fields, "timestamp");

  RatingsLoad out;
  // user -> item -> latest timestamp (duplicates collapse to one membership)
  std::map<uint64_t, std::unordered_map<uint64_t, int64_t>> memberships;
  size_t row = 1;
  while (read_csv_row(is, fields)) {
    ++row;
    ++out.stats.rows_in;
    size_t needed =
        std::max(std::max(user_col, item_col), std::max(rating_col, ts_col));
    if (fields.size() <= needed) {
      note_skip(out.stats, row, "too few fields");
      continue;
    }
    uint64_t user = 0;
    uint64_t item = 0;
    int64_t ts = 0;
    char* end = nullptr;
    const std::string& rating_s = fields[rating_col];
    std::strtod(rating_s.c_str(), &end);
    bool rating_ok =
        !rating_s.empty() && end == rating_s.c_str() + rating_s.size();
    if (!parse_u64(fields[user_col], &user) ||
        !parse_u64(fields[item_col], &item) || !rating_ok ||
        !parse_i64(fields[ts_col], &ts)) {
      note_skip(out.stats, row, "unparseable field");
      continue;
    }
    ++out.stats.rows_parsed;
    auto& items = memberships[user];
    auto it = items.find(item);
    if (it == items.end()) {
      items.emplace(item, ts);
    } else {
      it->second = std::max(it->second, ts);
    }
  }

  // Vocabulary: top-k by membership count, ties by ascending item id.
  std::unordered_map<uint64_t, uint64_t> item_count;
  for (const auto& [user, items] : memberships) {
    for (const auto& [item, ts] : items) ++item_count[item];
  }
  std::vector<std::pair<uint64_t, uint64_t>> ranked(item_count.begin(),
                                                    item_count.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (ranked.size() > top_k_items) ranked.resize(top_k_items);
  std::unordered_map<uint64_t, uint64_t> in_vocab;  // item -> frequency
  for (const auto& [item, count] : ranked) in_vocab.emplace(item, count);
  for (const auto& [item, count] : ranked) {
    out.vocabulary.items.push_back(std::to_string(item));
    out.vocabulary.frequencies.push_back(count);
  }

  for (const auto& [user, items] : memberships) {
    // Most recent first; ties by ascending item id for determinism.
    std::vector<std::pair<int64_t, uint64_t>> recency;
    for (const auto& [item, ts] : items) {
      if (in_vocab.count(item)) recency.emplace_back(ts, item);
    }
    std::sort(recency.begin(), recency.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    if (recency.size() > max_history_len) recency.resize(max_history_len);
    if (recency.empty()) continue;
    std::vector<Domain> tokens;
    tokens.reserve(recency.size());
    for (const auto& [ts, item] : recency) tokens.push_back(std::to_string(item));
    out.user_ids.push_back(user);
    out.histories.push_back(History{std::move(tokens)});
  }
  return out;
}

TrajectoryLoad load_trajectories(const std::string& path, size_t limit) {
  std::ifstream is(path);
  if (!is) throw FileMissingError{path};
  std::vector<std::string> fields;
  if (!read_csv_row(is, fields)) throw MissingColumnError{"POLYLINE"};
  size_t poly_col = find_column(fields, "POLYLINE");

  TrajectoryLoad out;
  size_t row = 1;
  while (read_csv_row(is, fields)) {
    ++row;
    ++out.stats.rows_in;
    if (fields.size() <= poly_col) {
      note_skip(out.stats, row, "too few fields");
      continue;
    }
    std::vector<GeoPoint> points;
    if (!parse_polyline(fields[poly_col], &points)) {
      note_skip(out.stats, row, "bad polyline");
      continue;
    }
    ++out.stats.rows_parsed;
    Trajectory t;
    t.vehicle_id = out.trajectories.size() + 1;
    t.points = std::move(points);
    out.trajectories.push_back(std::move(t));
    if (limit != 0 && out.trajectories.size() >= limit) break;
  }
  return out;
}

std::pair<std::vector<History>, std::vector<History>> split_histories(
    const std::vector<History>& histories, double train_fraction,
    uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must be inside (0, 1)");
  }
  std::vector<size_t> order(histories.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (size_t i = order.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(uniform_u64(rng, i));
    std::swap(order[i - 1], order[j]);
  }
  size_t train_n = static_cast<size_t>(
      std::llround(train_fraction * static_cast<double>(histories.size())));
  train_n = std::min(train_n, histories.size());
  std::pair<std::vector<History>, std::vector<History>> out;
  for (size_t i = 0; i < order.size(); ++i) {
    (i < train_n ? out.first : out.second).push_back(histories[order[i]]);
  }
  return out;
}

}  // namespace lshpriv
