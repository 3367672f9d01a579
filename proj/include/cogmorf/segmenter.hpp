#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cogmorf/model.hpp"

namespace cogmorf {

struct SegmenterConfig {
  // Appended to every non-final subword of a token.
  std::string joiner = "@@";
  // Extra cost (nats) of a single character that is not a known morph, on
  // top of ln N. Any positive value makes every known morph cheaper than
  // the character fallback.
  double unknown_penalty = 10.0;
};

// Maximum-probability segmentation under the lexicon's unigram
// distribution. Ties go to fewer morphs, then to the longest leftmost morph.
Analysis viterbi_segment(const MorphLexicon& lexicon, const UString& word,
                         const SegmenterConfig& config);

// Stored training analysis if the word has one, otherwise Viterbi.
Analysis segment_word(const CognateModel& model, Side side, const UString& word,
                      const SegmenterConfig& config);

// Stored analysis from language a, then language b, of the cognate model;
// otherwise the source model's segmentation.
Analysis override_source_segmentation(const CognateModel& source_model,
                                      const CognateModel& cognate_model,
                                      const UString& word,
                                      const SegmenterConfig& config);

// "<to_xx>" pseudo-tokens; never segmented.
bool is_target_tag(std::string_view token) noexcept;

// "<to_" + lang + "> " + sentence. Throws Error(invalid_argument) if the
// language is not among `targets`.
std::string prefix_target_tag(std::string_view sentence, std::string_view lang,
                              std::span<const std::string> targets);

// Splits one token (UTF-8) into subwords.
using TokenSegmenter = std::function<std::vector<std::string>(std::string_view)>;

// Replaces each whitespace-separated token with its subwords, joined by
// joiner + ' '. Whitespace between tokens is left untouched, so
// unjoin_line() restores the input byte for byte. Target tags pass through.
// Throws Error(invalid_argument) for tokens that contain the joiner.
std::string segment_line(std::string_view line, const std::string& joiner,
                         const TokenSegmenter& segmenter);

std::string unjoin_line(std::string_view line, const std::string& joiner);

// Line-by-line driver; errors are rethrown with the 1-based line number.
void segment_stream(std::istream& in, std::ostream& out, const std::string& joiner,
                    const TokenSegmenter& segmenter);

TokenSegmenter model_segmenter(const CognateModel& model, Side side,
                               const SegmenterConfig& config);
TokenSegmenter source_segmenter(const CognateModel& source_model,
                                const CognateModel& cognate_model,
                                const SegmenterConfig& config);

}  // namespace cogmorf
