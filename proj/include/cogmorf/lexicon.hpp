#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "cogmorf/unicode.hpp"

namespace cogmorf {

// Token counts over a set of string types with the character statistics
// needed to price the lexicon. Costs are in nats.
//
// The character model counts every character of every type plus one
// end-of-type marker per type. Cached sums are updated incrementally; an
// entry whose count drops to zero is evicted immediately.
class MorphLexicon {
 public:
  // Adds `delta` (may be negative) tokens of `key`. Throws Error(contract)
  // when a count would become negative.
  void add(const UString& key, int64_t delta);

  uint64_t count(const UString& key) const;
  bool contains(const UString& key) const { return counts_.count(key) != 0; }

  uint64_t tokens() const noexcept { return tokens_; }  // N
  size_t types() const noexcept { return counts_.size(); }  // M
  bool empty() const noexcept { return counts_.empty(); }

  // N ln N - sum_m c_m ln c_m
  double corpus_cost() const noexcept;

  // ln C(N-1, M-1) + sum over types and characters of -ln p(char)
  double lexicon_cost() const noexcept;

  // Same two costs evaluated directly from the entries, ignoring the
  // incrementally maintained sums.
  double corpus_cost_from_scratch() const;
  double lexicon_cost_from_scratch() const;

  const std::unordered_map<UString, uint64_t>& entries() const noexcept {
    return counts_;
  }
  std::map<UString, uint64_t> sorted_entries() const;

  // Character counts excluding the end marker (whose count equals types()).
  const std::unordered_map<char32_t, uint64_t>& char_counts() const noexcept {
    return char_counts_;
  }

  bool same_entries(const MorphLexicon& other) const {
    return counts_ == other.counts_;
  }

 private:
  void adjust_chars(const UString& key, int64_t sign);

  std::unordered_map<UString, uint64_t> counts_;
  std::unordered_map<char32_t, uint64_t> char_counts_;
  uint64_t tokens_ = 0;
  uint64_t char_total_ = 0;  // includes one end marker per type
  long double sum_count_log_count_ = 0;
  long double sum_char_log_char_ = 0;  // excludes the end marker term
};

// Boundary symbol between the two halves of a serialized edit.
inline constexpr char32_t kEditBoundary = U'|';

// A positionless substring transformation lhs -> rhs, always stored in
// language-a -> language-b direction. Either side may be empty (epsilon).
struct Edit {
  UString lhs;
  UString rhs;

  bool operator==(const Edit&) const = default;
  auto operator<=>(const Edit&) const = default;

  // lhs + boundary + rhs
  UString key() const;
  static Edit from_key(const UString& key);
  Edit reversed() const { return {rhs, lhs}; }
  bool valid() const noexcept;
};

using EditScript = std::vector<Edit>;

// Usage counts of edits. Priced exactly like a morph lexicon over the
// serialized form, so the boundary symbol takes part in the character model.
class EditLexicon {
 public:
  void add(const Edit& edit, int64_t delta);
  void add_all(const EditScript& script, int64_t delta);

  uint64_t count(const Edit& edit) const { return lexicon_.count(edit.key()); }
  uint64_t tokens() const noexcept { return lexicon_.tokens(); }
  size_t types() const noexcept { return lexicon_.types(); }
  bool empty() const noexcept { return lexicon_.empty(); }

  double corpus_cost() const noexcept { return lexicon_.corpus_cost(); }
  double lexicon_cost() const noexcept { return lexicon_.lexicon_cost(); }

  std::map<Edit, uint64_t> sorted_entries() const;
  const MorphLexicon& lexicon() const noexcept { return lexicon_; }

  bool same_entries(const EditLexicon& other) const {
    return lexicon_.same_entries(other.lexicon_);
  }

 private:
  MorphLexicon lexicon_;
};

}  // namespace cogmorf
