#pragma once

// Reference implementations used by the tests. They are deliberately
// written in the most direct form possible and share no code with the
// library apart from the edit extractor, which is checked on its own.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cogmorf/edit_model.hpp"
#include "cogmorf/model.hpp"
#include "cogmorf/unicode.hpp"

namespace oracle {

using cogmorf::UString;

inline UString u(const std::string& s) { return cogmorf::utf8_to_u32(s); }
inline std::string s8(const UString& s) { return cogmorf::u32_to_utf8(s); }

// Edit distance by the textbook recursion, memoized on (i, j).
inline size_t levenshtein(const UString& a, const UString& b) {
  std::map<std::pair<size_t, size_t>, size_t> memo;
  std::function<size_t(size_t, size_t)> d = [&](size_t i, size_t j) -> size_t {
    if (i == 0) return j;
    if (j == 0) return i;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    size_t best = d(i - 1, j) + 1;
    best = std::min(best, d(i, j - 1) + 1);
    best = std::min(best, d(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? 0 : 1));
    memo[key] = best;
    return best;
  };
  return d(a.size(), b.size());
}

// All ways to cut a word into non-empty pieces, 2^(n-1) of them.
inline std::vector<std::vector<UString>> segmentations(const UString& w) {
  std::vector<std::vector<UString>> out;
  if (w.empty()) return out;
  const size_t cuts = w.size() - 1;
  for (uint64_t mask = 0; mask < (uint64_t{1} << cuts); ++mask) {
    std::vector<UString> parts;
    size_t start = 0;
    for (size_t k = 0; k < cuts; ++k) {
      if (mask & (uint64_t{1} << k)) {
        parts.push_back(w.substr(start, k + 1 - start));
        start = k + 1;
      }
    }
    parts.push_back(w.substr(start));
    out.push_back(std::move(parts));
  }
  return out;
}

// Lexicon plus weighted corpus cost of a bag of string tokens, written
// straight from the definitions:
//   corpus:  -sum_m c_m ln(c_m / N)
//   lexicon: ln C(N-1, M-1) - sum over the characters of all types (and one
//            end marker per type) of ln of their relative frequency.
struct BagCost {
  long double lexicon = 0;
  long double corpus = 0;
};

inline BagCost bag_cost(const std::map<UString, uint64_t>& bag) {
  BagCost out;
  if (bag.empty()) return out;
  long double n = 0;
  for (const auto& [k, c] : bag) n += c;
  const long double m = static_cast<long double>(bag.size());
  if (bag.size() > 1)
    for (const auto& [k, c] : bag) out.corpus -= c * std::log(c / n);
  out.lexicon = std::lgamma(n) - std::lgamma(m) - std::lgamma(n - m + 1);
  std::map<char32_t, long double> chars;
  long double total = 0;
  for (const auto& [k, c] : bag) {
    for (char32_t ch : k) chars[ch] += 1;
    total += k.size() + 1;
  }
  for (const auto& [ch, c] : chars) out.lexicon -= c * std::log(c / total);
  out.lexicon -= m * std::log(m / total);
  return out;
}

struct Weights {
  double alpha = 0.01;
  double edit_weight = 10.0;
  bool count_only = false;
};

// One language's analyses: word -> (count, morphs).
struct Segmented {
  uint64_t count = 1;
  std::vector<UString> morphs;
};
using SideAnalyses = std::map<UString, Segmented>;

// Total model cost of the given analyses. Pair edits are collected from
// morph-by-morph alignments of each pair (pairs with unequal morph counts
// are an error). Returns NaN if a pair is malformed.
inline long double total_cost(const SideAnalyses& a, const SideAnalyses& b,
                              const std::vector<cogmorf::CognatePair>& pairs,
                              const Weights& w) {
  auto bag_of = [](const SideAnalyses& side) {
    std::map<UString, uint64_t> bag;
    for (const auto& [word, seg] : side)
      for (const auto& m : seg.morphs) bag[m] += seg.count;
    return bag;
  };
  const BagCost ca = bag_cost(bag_of(a));
  const BagCost cb = bag_cost(bag_of(b));
  long double total = ca.lexicon + w.alpha * ca.corpus + cb.lexicon + w.alpha * cb.corpus;
  if (w.count_only) return total;

  std::map<UString, uint64_t> edits;
  for (const auto& p : pairs) {
    auto ia = a.find(p.word_a);
    auto ib = b.find(p.word_b);
    if (ia == a.end() || ib == b.end()) continue;
    const auto& ma = ia->second.morphs;
    const auto& mb = ib->second.morphs;
    if (ma.size() != mb.size()) return std::nanl("");
    for (size_t k = 0; k < ma.size(); ++k)
      for (const auto& e : cogmorf::extract_edits(ma[k], mb[k])) ++edits[e.lhs + U"|" + e.rhs];
  }
  const BagCost ce = bag_cost(edits);
  return total + w.edit_weight * (ce.lexicon + w.alpha * ce.corpus);
}

inline long double relative_diff(long double x, long double y) {
  const long double scale = std::max<long double>({1.0L, std::fabs(x), std::fabs(y)});
  return std::fabs(x - y) / scale;
}

}  // namespace oracle
