#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "cogmorf/model.hpp"

namespace cogmorf {

using WordCounts = std::map<UString, uint64_t>;

// none: raw corpus frequencies. log: count <- floor(ln count) + 1.
enum class Dampening { none, log };

const char* dampening_name(Dampening d) noexcept;
Dampening parse_dampening(std::string_view text);
uint64_t dampen(uint64_t count, Dampening d) noexcept;

struct TrainingParams {
  double alpha = 0.01;
  double edit_weight = 10.0;
  int max_epochs = 15;
  double convergence_threshold = 1e-5;  // relative cost improvement per epoch
  uint64_t seed = 1;
  Dampening dampening = Dampening::none;
  EditMode edit_mode = EditMode::full;

  CostWeights weights() const { return {alpha, edit_weight, edit_mode}; }
};

struct EpochStats {
  int epoch = 0;  // 0 is the initialized state
  CostBreakdown costs;
  size_t types_a = 0, types_b = 0, types_edits = 0;
};

struct TrainingReport {
  std::vector<EpochStats> epochs;
  int epochs_run = 0;
  bool converged = false;

  bool operator==(const TrainingReport& o) const;
};

// Called after every training unit with the total cost before and after.
struct StepEvent {
  int epoch;
  size_t step;
  double cost_before;
  double cost_after;
};
using StepObserver = std::function<void(const StepEvent&)>;

// Every word starts as a single morph; pair edits come from the whole
// words. Throws Error(invalid_argument) if a pair word is missing from its
// corpus or a word is linked twice.
CognateModel initialize(const WordCounts& corpus_a, const WordCounts& corpus_b,
                        const std::vector<CognatePair>& pairs,
                        const TrainingParams& params);

// Recursive splitting of one word whose analysis has been removed. The
// word must not be a cognate with its partner present.
Analysis resegment_word(CognateModel& model, Side side, const UString& word,
                        uint64_t count);

// Paired recursive splitting of a registered pair whose analyses (and so
// edits) have been removed. Both words are split at every level or neither
// is, so the results have equal morph counts.
std::pair<Analysis, Analysis> resegment_pair(CognateModel& model, size_t pair,
                                             uint64_t count_a, uint64_t count_b);

TrainingReport train(CognateModel& model, const TrainingParams& params,
                     const StepObserver& observer = {});

}  // namespace cogmorf
