#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cogmorf/unicode.hpp"

namespace cogmorf::bpe {

// UTF-8 word -> count
using WordTable = std::map<std::string, uint64_t>;

// Marks the final symbol of a word during training and application.
inline constexpr std::string_view kEndOfWord = "</w>";

struct BalancedCounts {
  std::vector<WordTable> tables;
  std::vector<double> scales;  // largest sum / own sum
};

// Scales every table up to the largest table's token sum. Counts are
// apportioned by largest remainder, so all sums come out exactly equal and
// each count is within 1 of its exact scaled value.
BalancedCounts balance_counts(const std::vector<WordTable>& tables);

struct Merge {
  std::string left;
  std::string right;

  bool operator==(const Merge&) const = default;
};

struct MergeTable {
  std::vector<Merge> merges;  // acquisition order
  bool truncated = false;     // ran out of pairs before reaching the target
};

struct Options {
  std::u32string hyphens = U"-";
};

// Greedy most-frequent-pair merging over the summed balanced counts until
// alphabet size + merges reaches vocab_size. Hyphens split words into
// independent fragments, so no pair spanning a hyphen is ever counted.
// Equal frequencies go to the lexicographically smallest pair.
MergeTable train(const BalancedCounts& counts, size_t vocab_size, const Options& options = {});

// Size of the initial symbol alphabet for the given counts.
size_t alphabet_size(const BalancedCounts& counts, const Options& options = {});

class Encoder {
 public:
  explicit Encoder(const MergeTable& table, Options options = {});

  // Splits at hyphens (each hyphen is its own subword), then applies merges
  // by rank within each fragment. The parts concatenate to `word`.
  std::vector<std::string> apply(std::string_view word) const;

 private:
  std::vector<std::string> encode_fragment(std::vector<std::string> symbols) const;

  std::map<std::pair<std::string, std::string>, size_t> ranks_;
  Options options_;
};

std::vector<std::string> apply(const MergeTable& table, std::string_view word,
                               const Options& options = {});

void write_merges(std::ostream& out, const MergeTable& table);
MergeTable read_merges(std::istream& in);

// word<TAB>count per line
WordTable read_word_table(std::istream& in);

}  // namespace cogmorf::bpe
