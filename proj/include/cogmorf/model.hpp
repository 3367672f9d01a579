#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cogmorf/edit_model.hpp"
#include "cogmorf/lexicon.hpp"

namespace cogmorf {

enum class Side : int { a = 0, b = 1 };

inline constexpr std::array<Side, 2> kSides{Side::a, Side::b};
inline constexpr int index(Side s) noexcept { return static_cast<int>(s); }
inline constexpr Side other(Side s) noexcept { return s == Side::a ? Side::b : Side::a; }
const char* side_name(Side s) noexcept;

// full: edits are priced. count_only: edit costs are left out of the total
// but cognate pairs still keep equal morph counts.
enum class EditMode { full, count_only };

const char* edit_mode_name(EditMode m) noexcept;
EditMode parse_edit_mode(std::string_view text);

struct Analysis {
  UString word;
  std::vector<UString> morphs;
  uint64_t count = 1;

  bool operator==(const Analysis&) const = default;
  bool valid() const;  // concatenation equals word, count >= 1, no empty morph
};

struct CognatePair {
  UString word_a;
  UString word_b;

  bool operator==(const CognatePair&) const = default;
  auto operator<=>(const CognatePair&) const = default;
};

struct CostWeights {
  double alpha = 0.01;       // corpus cost weight
  double edit_weight = 10.0; // multiplies both edit cost terms
  EditMode edit_mode = EditMode::full;
};

struct CostBreakdown {
  double lexicon_a = 0, corpus_a = 0;
  double lexicon_b = 0, corpus_b = 0;
  double lexicon_e = 0, corpus_e = 0;
  double total = 0;
};

namespace detail {
struct ModelAccess;
}

// Two linked morph lexicons plus the edit lexicon over cognate pairs.
//
// Words are registered with the pair table before their analyses are
// added. A cognate pair contributes edit tokens only while both of its
// analyses are present; adding or removing either side adds or removes the
// pair's edits in the same step. Edits are counted once per pair.
//
// Single writer. A model that is no longer mutated may be read from any
// number of threads, except through edit_cache().
class CognateModel {
 public:
  explicit CognateModel(CostWeights weights = {});

  const CostWeights& weights() const noexcept { return weights_; }
  void set_weights(const CostWeights& w) { weights_ = w; }

  // Registers a cognate pair. Throws Error(contract) if either word is
  // already linked.
  void add_pair(const CognatePair& pair);
  const std::vector<CognatePair>& pairs() const noexcept { return pairs_; }
  std::optional<size_t> pair_of(Side side, const UString& word) const;

  // Both return total_cost(after) - total_cost(before).
  double add_analysis(Side side, const Analysis& analysis);
  double remove_analysis(Side side, const UString& word);

  const Analysis* analysis(Side side, const UString& word) const;
  const std::unordered_map<UString, Analysis>& analyses(Side side) const {
    return analyses_[index(side)];
  }
  std::map<UString, const Analysis*> sorted_analyses(Side side) const;

  const MorphLexicon& lexicon(Side side) const { return lexicons_[index(side)]; }
  const EditLexicon& edits() const noexcept { return edits_; }

  // Edits currently counted for a pair (empty if either side is absent).
  const EditScript& pair_edits(size_t pair) const { return pair_edits_[pair]; }

  double total_cost() const;
  CostBreakdown costs() const;

  // lexicon_cost + alpha * corpus_cost of one language.
  double language_cost(Side side) const;
  // Weighted edit terms; zero in count-only mode.
  double edit_cost() const;

  // Rebuilds lexicons and edit counts from the analyses alone and evaluates
  // the cost directly from the rebuilt entries. Throws Error(bookkeeping) if
  // the rebuilt state differs from the cached one.
  double recompute_from_scratch() const;

  EditCache& edit_cache() const { return edit_cache_; }

 private:
  friend struct detail::ModelAccess;

  void link_edits(size_t pair, int64_t sign);

  CostWeights weights_;
  std::array<MorphLexicon, 2> lexicons_;
  EditLexicon edits_;
  std::array<std::unordered_map<UString, Analysis>, 2> analyses_;
  std::vector<CognatePair> pairs_;
  std::array<std::unordered_map<UString, size_t>, 2> pair_index_;
  std::vector<EditScript> pair_edits_;
  mutable EditCache edit_cache_;
};

// Edit tokens between two equally long morph sequences, morphs paired up in
// order. Throws Error(contract) on unequal lengths.
EditScript pair_edit_script(const std::vector<UString>& morphs_a,
                            const std::vector<UString>& morphs_b,
                            EditCache& cache);

}  // namespace cogmorf
