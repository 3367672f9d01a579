#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cogmorf/model.hpp"
#include "cogmorf/trainer.hpp"

namespace cogmorf {

inline constexpr int kModelFormatVersion = 1;

// Training settings recorded next to the model state.
struct ModelInfo {
  uint64_t seed = 1;
  Dampening dampening = Dampening::none;
};

struct LoadedModel {
  CognateModel model;
  ModelInfo info;
};

// Sectioned text format:
//
//   #cogmorf-model
//   version, alpha, edit_weight, edit_mode, seed, dampening  (key<TAB>value)
//   [LEXICON-A] [LEXICON-B]   morph<TAB>count
//   [EDITS]                   lhs|rhs<TAB>count
//   [PAIRS]                   word_a<TAB>word_b
//   [ANALYSES-A] [ANALYSES-B] word<TAB>count<TAB>morph morph ...
//
// Rows are sorted, so equal models serialize to identical bytes. Tab,
// newline, carriage return, space, backslash and '|' inside strings are
// backslash-escaped.
void write_model(std::ostream& out, const CognateModel& model, const ModelInfo& info);
void save_model(const std::filesystem::path& path, const CognateModel& model,
                const ModelInfo& info);

// Rebuilds the model from the pairs and analyses and checks the lexicon
// and edit sections against it. Errors carry the line number.
LoadedModel read_model(std::istream& in);
LoadedModel load_model(const std::filesystem::path& path);

std::string escape_field(const UString& text);
UString unescape_field(std::string_view text);

enum class EditDirection { ab, ba };

// Edits by descending usage count (ties by lhs, then rhs, in the displayed
// direction), at most top_k of them.
std::vector<std::pair<Edit, uint64_t>> report_edits(const CognateModel& model, size_t top_k,
                                                    EditDirection direction = EditDirection::ab);
// lhs<TAB>rhs<TAB>count with the empty string shown as ε.
void write_edit_report(std::ostream& out,
                       const std::vector<std::pair<Edit, uint64_t>>& rows);

// Training input. Tokens may not contain '|' or the joiner "@@".
WordCounts count_corpus_words(std::istream& in);
WordCounts read_word_counts(std::istream& in);  // word<TAB>count
void validate_training_token(const UString& token);

std::vector<CognatePair> read_cognate_pairs(std::istream& in);

}  // namespace cogmorf
