#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cogmorf/unicode.hpp"

namespace cogmorf {

// A word pair from a symmetrized word alignment and how often the two
// words were aligned to each other.
struct AlignedPair {
  UString word_a;
  UString word_b;
  uint64_t count = 1;

  bool operator==(const AlignedPair&) const = default;
};

using CognateList = std::vector<AlignedPair>;

struct CognateFilter {
  uint64_t min_count = 2;
  size_t short_length = 4;  // words this short must match exactly
  bool reject_punct = true;  // Unicode P* and Nd
};

// Largest Levenshtein distance accepted for words of the given lengths.
size_t levenshtein_threshold(size_t len_a, size_t len_b, size_t short_length = 4);

bool passes_filter(const AlignedPair& pair, const CognateFilter& filter);
std::vector<AlignedPair> filter_pairs(const std::vector<AlignedPair>& pairs,
                                      const CognateFilter& filter = {});

// Greedy one-to-one resolution: pairs are taken by descending count (ties
// by word_a, then word_b) and kept while neither word is already linked.
// The result is sorted by (word_a, word_b).
CognateList resolve_unique(const std::vector<AlignedPair>& pairs);

CognateList extract(const std::vector<AlignedPair>& pairs,
                    const CognateFilter& filter = {});

// TSV with columns word_a, word_b, count. Repeated pairs are summed.
std::vector<AlignedPair> read_aligned_pairs(std::istream& in);
void write_cognates(std::ostream& out, const CognateList& list);

}  // namespace cogmorf
