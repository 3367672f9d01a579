#include "cogmorf/model.hpp"

#include <cmath>

#include "cogmorf/error.hpp"

namespace cogmorf {

const char* side_name(Side s) noexcept { return s == Side::a ? "a" : "b"; }

const char* edit_mode_name(EditMode m) noexcept {
  return m == EditMode::full ? "full" : "count-only";
}

EditMode parse_edit_mode(std::string_view text) {
  if (text == "full") return EditMode::full;
  if (text == "count-only") return EditMode::count_only;
  fail(ErrorCode::invalid_argument, "unknown edit mode '" + std::string(text) + "'");
}

bool Analysis::valid() const {
  if (count == 0 || morphs.empty()) return false;
  UString joined;
  for (const auto& m : morphs) {
    if (m.empty()) return false;
    joined += m;
  }
  return joined == word;
}

EditScript pair_edit_script(const std::vector<UString>& morphs_a,
                            const std::vector<UString>& morphs_b,
                            EditCache& cache) {
  if (morphs_a.size() != morphs_b.size())
    fail(ErrorCode::contract, "cognate analyses have unequal morph counts");
  EditScript script;
  for (size_t i = 0; i < morphs_a.size(); ++i) {
    const auto& part = cache.get(morphs_a[i], morphs_b[i]);
    script.insert(script.end(), part.begin(), part.end());
  }
  return script;
}

CognateModel::CognateModel(CostWeights weights) : weights_(weights) {}

void CognateModel::add_pair(const CognatePair& pair) {
  if (pair.word_a.empty() || pair.word_b.empty())
    fail(ErrorCode::contract, "cognate pair with empty word");
  if (pair_index_[0].count(pair.word_a) || pair_index_[1].count(pair.word_b))
    fail(ErrorCode::contract,
         "word linked to more than one cognate: " + u32_to_utf8(pair.word_a) +
             " / " + u32_to_utf8(pair.word_b));
  const size_t id = pairs_.size();
  pairs_.push_back(pair);
  pair_index_[0].emplace(pair.word_a, id);
  pair_index_[1].emplace(pair.word_b, id);
  pair_edits_.emplace_back();
  if (analysis(Side::a, pair.word_a) && analysis(Side::b, pair.word_b))
    link_edits(id, +1);
}

std::optional<size_t> CognateModel::pair_of(Side side, const UString& word) const {
  const auto& idx = pair_index_[index(side)];
  auto it = idx.find(word);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

void CognateModel::link_edits(size_t pair, int64_t sign) {
  if (sign > 0) {
    const auto& p = pairs_[pair];
    pair_edits_[pair] = pair_edit_script(analyses_[0].at(p.word_a).morphs,
                                         analyses_[1].at(p.word_b).morphs,
                                         edit_cache_);
    edits_.add_all(pair_edits_[pair], +1);
  } else {
    edits_.add_all(pair_edits_[pair], -1);
    pair_edits_[pair].clear();
  }
}

double CognateModel::add_analysis(Side side, const Analysis& a) {
  if (!a.valid())
    fail(ErrorCode::contract, "invalid analysis for '" + u32_to_utf8(a.word) + "'");
  auto& table = analyses_[index(side)];
  if (table.count(a.word))
    fail(ErrorCode::contract, "duplicate analysis for '" + u32_to_utf8(a.word) + "'");

  const double before = total_cost();
  const auto pair = pair_of(side, a.word);
  if (pair) {
    const auto& p = pairs_[*pair];
    const auto* partner = analysis(other(side), side == Side::a ? p.word_b : p.word_a);
    if (partner && partner->morphs.size() != a.morphs.size())
      fail(ErrorCode::contract, "cognate analyses have unequal morph counts");
  }

  table.emplace(a.word, a);
  auto& lex = lexicons_[index(side)];
  for (const auto& m : a.morphs) lex.add(m, static_cast<int64_t>(a.count));
  if (pair) {
    const auto& p = pairs_[*pair];
    if (analysis(other(side), side == Side::a ? p.word_b : p.word_a))
      link_edits(*pair, +1);
  }
  return total_cost() - before;
}

double CognateModel::remove_analysis(Side side, const UString& word) {
  auto& table = analyses_[index(side)];
  auto it = table.find(word);
  if (it == table.end())
    fail(ErrorCode::contract, "no analysis for '" + u32_to_utf8(word) + "'");

  const double before = total_cost();
  if (const auto pair = pair_of(side, word)) {
    const auto& p = pairs_[*pair];
    if (analysis(other(side), side == Side::a ? p.word_b : p.word_a))
      link_edits(*pair, -1);
  }
  auto& lex = lexicons_[index(side)];
  for (const auto& m : it->second.morphs)
    lex.add(m, -static_cast<int64_t>(it->second.count));
  table.erase(it);
  return total_cost() - before;
}

const Analysis* CognateModel::analysis(Side side, const UString& word) const {
  const auto& table = analyses_[index(side)];
  auto it = table.find(word);
  return it == table.end() ? nullptr : &it->second;
}

std::map<UString, const Analysis*> CognateModel::sorted_analyses(Side side) const {
  std::map<UString, const Analysis*> out;
  for (const auto& [w, a] : analyses_[index(side)]) out.emplace(w, &a);
  return out;
}

double CognateModel::language_cost(Side side) const {
  const auto& lex = lexicons_[index(side)];
  return lex.lexicon_cost() + weights_.alpha * lex.corpus_cost();
}

double CognateModel::edit_cost() const {
  if (weights_.edit_mode == EditMode::count_only) return 0.0;
  return weights_.edit_weight *
         (edits_.lexicon_cost() + weights_.alpha * edits_.corpus_cost());
}

double CognateModel::total_cost() const {
  return language_cost(Side::a) + language_cost(Side::b) + edit_cost();
}

CostBreakdown CognateModel::costs() const {
  CostBreakdown c;
  c.lexicon_a = lexicons_[0].lexicon_cost();
  c.corpus_a = lexicons_[0].corpus_cost();
  c.lexicon_b = lexicons_[1].lexicon_cost();
  c.corpus_b = lexicons_[1].corpus_cost();
  c.lexicon_e = edits_.lexicon_cost();
  c.corpus_e = edits_.corpus_cost();
  c.total = total_cost();
  return c;
}

double CognateModel::recompute_from_scratch() const {
  std::array<MorphLexicon, 2> lexicons;
  EditLexicon edits;
  EditCache cache;
  for (Side side : kSides) {
    for (const auto& [word, a] : sorted_analyses(side)) {
      if (!a->valid())
        fail(ErrorCode::bookkeeping, "stored analysis does not concatenate to its word");
      for (const auto& m : a->morphs)
        lexicons[index(side)].add(m, static_cast<int64_t>(a->count));
    }
  }
  for (const auto& p : pairs_) {
    const auto* a = analysis(Side::a, p.word_a);
    const auto* b = analysis(Side::b, p.word_b);
    if (a && b) edits.add_all(pair_edit_script(a->morphs, b->morphs, cache), +1);
  }
  for (Side side : kSides)
    if (!lexicons[index(side)].same_entries(lexicons_[index(side)]))
      fail(ErrorCode::bookkeeping,
           std::string("cached lexicon ") + side_name(side) + " differs from analyses");
  if (!edits.same_entries(edits_))
    fail(ErrorCode::bookkeeping, "cached edit lexicon differs from cognate pairs");

  double total = 0;
  for (const auto& lex : lexicons)
    total += lex.lexicon_cost_from_scratch() + weights_.alpha * lex.corpus_cost_from_scratch();
  if (weights_.edit_mode == EditMode::full)
    total += weights_.edit_weight *
             (edits.lexicon().lexicon_cost_from_scratch() +
              weights_.alpha * edits.lexicon().corpus_cost_from_scratch());
  return total;
}

}  // namespace cogmorf
