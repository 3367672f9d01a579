#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cogmorf/lexicon.hpp"

namespace cogmorf {

enum class AlignKind { match, substitute, remove, insert };

struct AlignmentOp {
  AlignKind kind;
  char32_t source = 0;  // unset for insert
  char32_t target = 0;  // unset for remove
  size_t source_pos = 0;  // index in source (insertion point for insert)
  size_t target_pos = 0;  // index in target (deletion point for remove)

  bool operator==(const AlignmentOp&) const = default;
};

using Alignment = std::vector<AlignmentOp>;

// Plain dynamic-programming edit distance (unit costs).
size_t levenshtein_distance(std::u32string_view a, std::u32string_view b);

// Number of non-match operations.
size_t alignment_cost(const Alignment& alignment) noexcept;

// One minimal-cost alignment of `a` onto `b`.
//
// Among all alignments of minimal Levenshtein cost, the one with the fewest
// maximal runs of non-match operations is chosen; remaining ties are broken
// left to right, preferring match, then substitute, then delete, then
// insert at each step.
Alignment levenshtein_align(std::u32string_view a, std::u32string_view b);

// An edit together with where it applies: source[source_begin, +lhs.size())
// becomes target[target_begin, +rhs.size()).
struct PositionedEdit {
  Edit edit;
  size_t source_begin = 0;
  size_t target_begin = 0;
};

// Merges adjacent non-match operations and applies the sound-length
// extension: an edit with an empty side absorbs a neighboring unchanged
// character when the non-empty side contains that character (left neighbor
// first). Each unchanged character is absorbed at most once.
std::vector<PositionedEdit> extract_positioned_edits(std::u32string_view a,
                                                     std::u32string_view b);

// The positionless edit script for a morph pair (language a -> language b).
EditScript extract_edits(std::u32string_view a, std::u32string_view b);

// Rebuilds the target from the source and a positioned script. Throws
// Error(format) if the script does not fit the source.
UString apply_edit_script(std::u32string_view source,
                          std::span<const PositionedEdit> script);

// Memoizes extract_edits. Not thread-safe.
class EditCache {
 public:
  const EditScript& get(const UString& a, const UString& b);
  size_t size() const noexcept { return cache_.size(); }
  void clear() { cache_.clear(); }

 private:
  std::unordered_map<UString, EditScript> cache_;
};

}  // namespace cogmorf
