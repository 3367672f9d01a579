#pragma once

#include "cogmorf/model.hpp"

namespace cogmorf::detail {

// Raw mutation used by the search: counts are moved without keeping the
// analysis table in sync until commit() is called.
struct ModelAccess {
  static MorphLexicon& lexicon(CognateModel& m, Side s) {
    return m.lexicons_[index(s)];
  }
  static EditLexicon& edits(CognateModel& m) { return m.edits_; }

  // Stores an analysis whose morph counts are already in the lexicon.
  static void commit(CognateModel& m, Side s, Analysis a) {
    auto& table = m.analyses_[index(s)];
    table.insert_or_assign(a.word, std::move(a));
  }
  // Records the edit tokens already added for a pair.
  static void commit_pair_edits(CognateModel& m, size_t pair, EditScript script) {
    m.pair_edits_[pair] = std::move(script);
  }
};

}  // namespace cogmorf::detail
