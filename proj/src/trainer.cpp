#include "cogmorf/trainer.hpp"

#include <cmath>
#include <random>

#include "cogmorf/error.hpp"
#include "model_access.hpp"

namespace cogmorf {

using detail::ModelAccess;

const char* dampening_name(Dampening d) noexcept {
  return d == Dampening::none ? "none" : "log";
}

Dampening parse_dampening(std::string_view text) {
  if (text == "none") return Dampening::none;
  if (text == "log") return Dampening::log;
  fail(ErrorCode::invalid_argument, "unknown dampening '" + std::string(text) + "'");
}

uint64_t dampen(uint64_t count, Dampening d) noexcept {
  if (d == Dampening::none || count == 0) return count;
  return static_cast<uint64_t>(std::floor(std::log(static_cast<double>(count)))) + 1;
}

bool TrainingReport::operator==(const TrainingReport& o) const {
  if (epochs_run != o.epochs_run || converged != o.converged ||
      epochs.size() != o.epochs.size())
    return false;
  for (size_t i = 0; i < epochs.size(); ++i) {
    const auto& x = epochs[i];
    const auto& y = o.epochs[i];
    if (x.epoch != y.epoch || x.types_a != y.types_a || x.types_b != y.types_b ||
        x.types_edits != y.types_edits || x.costs.total != y.costs.total ||
        x.costs.lexicon_a != y.costs.lexicon_a || x.costs.corpus_a != y.costs.corpus_a ||
        x.costs.lexicon_b != y.costs.lexicon_b || x.costs.corpus_b != y.costs.corpus_b ||
        x.costs.lexicon_e != y.costs.lexicon_e || x.costs.corpus_e != y.costs.corpus_e)
      return false;
  }
  return true;
}

CognateModel initialize(const WordCounts& corpus_a, const WordCounts& corpus_b,
                        const std::vector<CognatePair>& pairs,
                        const TrainingParams& params) {
  CognateModel model(params.weights());
  for (const auto& p : pairs) {
    if (!corpus_a.count(p.word_a))
      fail(ErrorCode::invalid_argument,
           "cognate word missing from corpus a: " + u32_to_utf8(p.word_a));
    if (!corpus_b.count(p.word_b))
      fail(ErrorCode::invalid_argument,
           "cognate word missing from corpus b: " + u32_to_utf8(p.word_b));
    try {
      model.add_pair(p);
    } catch (const Error& e) {
      fail(ErrorCode::invalid_argument, e.what());
    }
  }
  const std::array<const WordCounts*, 2> corpora{&corpus_a, &corpus_b};
  for (Side side : kSides) {
    for (const auto& [word, count] : *corpora[index(side)]) {
      if (word.empty() || count == 0)
        fail(ErrorCode::invalid_argument, "empty word or zero count in corpus");
      model.add_analysis(side, Analysis{word, {word}, dampen(count, params.dampening)});
    }
  }
  return model;
}

namespace {

class WordSearch {
 public:
  WordSearch(CognateModel& model, Side side, uint64_t count)
      : model_(model), side_(side), lex_(ModelAccess::lexicon(model, side)),
        count_(static_cast<int64_t>(count)) {}

  void split(const UString& s, std::vector<UString>& out) {
    lex_.add(s, count_);
    double best = score();
    lex_.add(s, -count_);
    size_t best_split = 0;
    for (size_t i = 1; i < s.size(); ++i) {
      const UString prefix = s.substr(0, i), suffix = s.substr(i);
      lex_.add(prefix, count_);
      lex_.add(suffix, count_);
      const double cost = score();
      lex_.add(prefix, -count_);
      lex_.add(suffix, -count_);
      if (cost < best) {
        best = cost;
        best_split = i;
      }
    }
    if (best_split == 0) {
      lex_.add(s, count_);
      out.push_back(s);
      return;
    }
    const UString prefix = s.substr(0, best_split), suffix = s.substr(best_split);
    lex_.add(suffix, count_);
    split(prefix, out);
    lex_.add(suffix, -count_);
    split(suffix, out);
  }

 private:
  // Only this language's terms change while one of its words is resegmented.
  double score() const { return model_.language_cost(side_); }

  CognateModel& model_;
  Side side_;
  MorphLexicon& lex_;
  int64_t count_;
};

class PairSearch {
 public:
  PairSearch(CognateModel& model, uint64_t count_a, uint64_t count_b)
      : model_(model), lex_a_(ModelAccess::lexicon(model, Side::a)),
        lex_b_(ModelAccess::lexicon(model, Side::b)),
        edits_(ModelAccess::edits(model)), cache_(model.edit_cache()),
        count_a_(static_cast<int64_t>(count_a)),
        count_b_(static_cast<int64_t>(count_b)) {}

  void split(const UString& sa, const UString& sb, std::vector<UString>& out_a,
             std::vector<UString>& out_b) {
    place(sa, sb, +1);
    double best = model_.total_cost();
    place(sa, sb, -1);
    size_t best_i = 0, best_j = 0;
    for (size_t i = 1; i < sa.size(); ++i) {
      const UString pa = sa.substr(0, i), qa = sa.substr(i);
      for (size_t j = 1; j < sb.size(); ++j) {
        const UString pb = sb.substr(0, j), qb = sb.substr(j);
        place(pa, pb, +1);
        place(qa, qb, +1);
        const double cost = model_.total_cost();
        place(pa, pb, -1);
        place(qa, qb, -1);
        if (cost < best) {
          best = cost;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best_i == 0) {
      place(sa, sb, +1);
      out_a.push_back(sa);
      out_b.push_back(sb);
      return;
    }
    const UString pa = sa.substr(0, best_i), qa = sa.substr(best_i);
    const UString pb = sb.substr(0, best_j), qb = sb.substr(best_j);
    place(qa, qb, +1);
    split(pa, pb, out_a, out_b);
    place(qa, qb, -1);
    split(qa, qb, out_a, out_b);
  }

 private:
  void place(const UString& ma, const UString& mb, int64_t sign) {
    lex_a_.add(ma, sign * count_a_);
    lex_b_.add(mb, sign * count_b_);
    edits_.add_all(cache_.get(ma, mb), sign);
  }

  CognateModel& model_;
  MorphLexicon& lex_a_;
  MorphLexicon& lex_b_;
  EditLexicon& edits_;
  EditCache& cache_;
  int64_t count_a_, count_b_;
};

bool linked_pair_present(const CognateModel& model, Side side, const UString& word) {
  const auto pair = model.pair_of(side, word);
  if (!pair) return false;
  const auto& p = model.pairs()[*pair];
  return model.analysis(other(side), side == Side::a ? p.word_b : p.word_a) != nullptr;
}

// Rejection sampling keeps the result independent of the standard
// library's distribution implementations.
size_t uniform_below(std::mt19937_64& rng, size_t n) {
  const uint64_t bound = static_cast<uint64_t>(n);
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<size_t>(x % bound);
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

EpochStats snapshot(const CognateModel& model, int epoch) {
  EpochStats s;
  s.epoch = epoch;
  s.costs = model.costs();
  s.types_a = model.lexicon(Side::a).types();
  s.types_b = model.lexicon(Side::b).types();
  s.types_edits = model.edits().types();
  return s;
}

void train_word(CognateModel& model, Side side, const UString& word) {
  const Analysis old = *model.analysis(side, word);
  const double before = model.language_cost(side);
  model.remove_analysis(side, word);
  resegment_word(model, side, word, old.count);
  if (model.language_cost(side) > before) {
    model.remove_analysis(side, word);
    model.add_analysis(side, old);
  }
}

void train_pair(CognateModel& model, size_t pair) {
  const auto& p = model.pairs()[pair];
  const Analysis old_a = *model.analysis(Side::a, p.word_a);
  const Analysis old_b = *model.analysis(Side::b, p.word_b);
  const double before = model.total_cost();
  model.remove_analysis(Side::a, p.word_a);
  model.remove_analysis(Side::b, p.word_b);
  resegment_pair(model, pair, old_a.count, old_b.count);
  if (model.total_cost() > before) {
    model.remove_analysis(Side::a, p.word_a);
    model.remove_analysis(Side::b, p.word_b);
    model.add_analysis(Side::a, old_a);
    model.add_analysis(Side::b, old_b);
  }
}

}  // namespace

Analysis resegment_word(CognateModel& model, Side side, const UString& word,
                        uint64_t count) {
  if (word.empty()) fail(ErrorCode::contract, "cannot resegment an empty word");
  if (count == 0) fail(ErrorCode::contract, "word count must be positive");
  if (model.analysis(side, word))
    fail(ErrorCode::contract, "resegment_word: analysis still present");
  if (linked_pair_present(model, side, word))
    fail(ErrorCode::contract, "resegment_word: word is a linked cognate");

  Analysis result{word, {}, count};
  WordSearch(model, side, count).split(word, result.morphs);
  ModelAccess::commit(model, side, result);
  return result;
}

std::pair<Analysis, Analysis> resegment_pair(CognateModel& model, size_t pair,
                                             uint64_t count_a, uint64_t count_b) {
  if (pair >= model.pairs().size()) fail(ErrorCode::contract, "pair not registered");
  const CognatePair p = model.pairs()[pair];
  if (model.analysis(Side::a, p.word_a) || model.analysis(Side::b, p.word_b))
    fail(ErrorCode::contract, "resegment_pair: analyses still present");
  if (count_a == 0 || count_b == 0) fail(ErrorCode::contract, "word count must be positive");

  Analysis a{p.word_a, {}, count_a};
  Analysis b{p.word_b, {}, count_b};
  PairSearch(model, count_a, count_b).split(p.word_a, p.word_b, a.morphs, b.morphs);
  ModelAccess::commit(model, Side::a, a);
  ModelAccess::commit(model, Side::b, b);
  ModelAccess::commit_pair_edits(model, pair,
                                 pair_edit_script(a.morphs, b.morphs, model.edit_cache()));
  return {std::move(a), std::move(b)};
}

TrainingReport train(CognateModel& model, const TrainingParams& params,
                     const StepObserver& observer) {
  if (params.max_epochs < 1) fail(ErrorCode::invalid_argument, "max_epochs must be >= 1");
  model.set_weights(params.weights());

  // Pairs with both sides present are trained jointly; every other word is
  // its own unit. Lists start sorted so the shuffle alone fixes the order.
  std::array<std::vector<UString>, 2> words;
  std::vector<size_t> pair_units;
  for (Side side : kSides)
    for (const auto& [word, a] : model.sorted_analyses(side))
      if (!linked_pair_present(model, side, word)) words[index(side)].push_back(word);
  for (size_t i = 0; i < model.pairs().size(); ++i)
    if (linked_pair_present(model, Side::a, model.pairs()[i].word_a)) pair_units.push_back(i);

  // Each language's words get a generator seeded identically, so a
  // language is visited in the same order whether or not the other one is
  // present.
  std::mt19937_64 rng_a(params.seed), rng_b(params.seed);
  std::mt19937_64 rng_pairs(params.seed ^ 0x9e3779b97f4a7c15ULL);
  std::mt19937_64 rng_mix(params.seed ^ 0xc2b2ae3d27d4eb4fULL);

  TrainingReport report;
  report.epochs.push_back(snapshot(model, 0));
  double previous = model.total_cost();

  for (int epoch = 1; epoch <= params.max_epochs; ++epoch) {
    shuffle(words[0], rng_a);
    shuffle(words[1], rng_b);
    shuffle(pair_units, rng_pairs);

    std::array<size_t, 3> next{0, 0, 0};
    const std::array<size_t, 3> total{words[0].size(), words[1].size(), pair_units.size()};
    size_t remaining = total[0] + total[1] + total[2];
    size_t step = 0;
    while (remaining > 0) {
      size_t pick = uniform_below(rng_mix, remaining);
      int list = 0;
      while (pick >= total[list] - next[list]) {
        pick -= total[list] - next[list];
        ++list;
      }
      const size_t item = next[list]++;
      --remaining;

      const double before = observer ? model.total_cost() : 0.0;
      if (list == 2)
        train_pair(model, pair_units[item]);
      else
        train_word(model, kSides[list], words[list][item]);
      if (observer) observer({epoch, step, before, model.total_cost()});
      ++step;
    }

    report.epochs.push_back(snapshot(model, epoch));
    report.epochs_run = epoch;
    const double cost = model.total_cost();
    const double improvement = previous > 0 ? (previous - cost) / previous : 0.0;
    previous = cost;
    if (improvement < params.convergence_threshold) {
      report.converged = true;
      break;
    }
  }
  return report;
}

}  // namespace cogmorf
