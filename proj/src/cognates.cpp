#include "cogmorf/cognates.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "cogmorf/edit_model.hpp"
#include "cogmorf/error.hpp"

namespace cogmorf {

size_t levenshtein_threshold(size_t len_a, size_t len_b, size_t short_length) {
  if (std::min(len_a, len_b) <= short_length) return 0;
  // ceil(((a + b) / 2) / 3), kept in integers
  return (len_a + len_b + 5) / 6;
}

bool passes_filter(const AlignedPair& pair, const CognateFilter& filter) {
  if (pair.count < filter.min_count) return false;
  if (pair.word_a.empty() || pair.word_b.empty()) return false;
  if (filter.reject_punct &&
      (contains_punct_or_digit(pair.word_a) || contains_punct_or_digit(pair.word_b)))
    return false;
  const size_t limit =
      levenshtein_threshold(pair.word_a.size(), pair.word_b.size(), filter.short_length);
  if (limit == 0) return pair.word_a == pair.word_b;
  return levenshtein_distance(pair.word_a, pair.word_b) <= limit;
}

std::vector<AlignedPair> filter_pairs(const std::vector<AlignedPair>& pairs,
                                      const CognateFilter& filter) {
  std::vector<AlignedPair> kept;
  for (const auto& p : pairs)
    if (passes_filter(p, filter)) kept.push_back(p);
  return kept;
}

namespace {
bool by_word(const AlignedPair& x, const AlignedPair& y) {
  if (x.word_a != y.word_a) return x.word_a < y.word_a;
  return x.word_b < y.word_b;
}
}  // namespace

CognateList resolve_unique(const std::vector<AlignedPair>& pairs) {
  std::vector<AlignedPair> order = pairs;
  std::sort(order.begin(), order.end(), [](const AlignedPair& x, const AlignedPair& y) {
    if (x.count != y.count) return x.count > y.count;
    return by_word(x, y);
  });
  std::set<UString> used_a, used_b;
  CognateList out;
  for (const auto& p : order) {
    if (used_a.count(p.word_a) || used_b.count(p.word_b)) continue;
    used_a.insert(p.word_a);
    used_b.insert(p.word_b);
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(), by_word);
  return out;
}

CognateList extract(const std::vector<AlignedPair>& pairs, const CognateFilter& filter) {
  return resolve_unique(filter_pairs(pairs, filter));
}

std::vector<AlignedPair> read_aligned_pairs(std::istream& in) {
  std::map<std::pair<UString, UString>, uint64_t> merged;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto where = [&] { return "line " + std::to_string(number) + ": "; };
    const size_t t1 = line.find('\t');
    const size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos)
      fail(ErrorCode::format, where() + "expected 3 tab-separated columns");
    uint64_t count = 0;
    const char* first = line.data() + t2 + 1;
    const char* last = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(first, last, count);
    if (ec != std::errc() || ptr != last || first == last || count == 0)
      fail(ErrorCode::format, where() + "invalid count");
    if (t1 == 0 || t2 == t1 + 1) fail(ErrorCode::format, where() + "empty word");
    try {
      merged[{utf8_to_u32(line.substr(0, t1)), utf8_to_u32(line.substr(t1 + 1, t2 - t1 - 1))}] +=
          count;
    } catch (const Error& e) {
      fail(ErrorCode::format, where() + e.what());
    }
  }
  if (in.bad()) fail(ErrorCode::io, "read failed");
  std::vector<AlignedPair> out;
  out.reserve(merged.size());
  for (auto& [words, count] : merged) out.push_back({words.first, words.second, count});
  return out;
}

void write_cognates(std::ostream& out, const CognateList& list) {
  for (const auto& p : list)
    out << u32_to_utf8(p.word_a) << '\t' << u32_to_utf8(p.word_b) << '\t' << p.count << '\n';
  if (!out) fail(ErrorCode::io, "write failed");
}

}  // namespace cogmorf
