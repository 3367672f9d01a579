#include "cogmorf/segmenter.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "cogmorf/error.hpp"

namespace cogmorf {

namespace {

struct Cell {
  double cost = 0;
  size_t morphs = 0;
  size_t next = 0;  // end of the first morph of the suffix
};

bool cheaper(double cost, size_t morphs, const Cell& best) {
  const double tol = 1e-12 * std::max(1.0, std::abs(best.cost));
  if (cost < best.cost - tol) return true;
  if (cost > best.cost + tol) return false;
  return morphs < best.morphs;
}

bool ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

}  // namespace

Analysis viterbi_segment(const MorphLexicon& lexicon, const UString& word,
                         const SegmenterConfig& config) {
  if (word.empty()) fail(ErrorCode::invalid_argument, "cannot segment an empty word");
  const double log_n =
      lexicon.tokens() > 0 ? std::log(static_cast<double>(lexicon.tokens())) : 0.0;
  const size_t n = word.size();

  // best[i] covers the suffix starting at i; longer first morphs are tried
  // first so they win exact ties.
  std::vector<Cell> best(n + 1);
  for (size_t i = n; i-- > 0;) {
    Cell cell{INFINITY, SIZE_MAX, 0};
    for (size_t j = n; j > i; --j) {
      const UString morph = word.substr(i, j - i);
      const uint64_t c = lexicon.count(morph);
      double cost;
      if (c > 0)
        cost = log_n - std::log(static_cast<double>(c));
      else if (j == i + 1)
        cost = log_n + config.unknown_penalty;
      else
        continue;
      cost += best[j].cost;
      const size_t morphs = best[j].morphs + 1;
      if (cell.morphs == SIZE_MAX || cheaper(cost, morphs, cell)) cell = {cost, morphs, j};
    }
    best[i] = cell;
  }

  Analysis a{word, {}, 1};
  for (size_t i = 0; i < n; i = best[i].next) a.morphs.push_back(word.substr(i, best[i].next - i));
  return a;
}

Analysis segment_word(const CognateModel& model, Side side, const UString& word,
                      const SegmenterConfig& config) {
  if (const auto* stored = model.analysis(side, word)) return *stored;
  return viterbi_segment(model.lexicon(side), word, config);
}

Analysis override_source_segmentation(const CognateModel& source_model,
                                      const CognateModel& cognate_model,
                                      const UString& word,
                                      const SegmenterConfig& config) {
  for (Side side : kSides)
    if (const auto* stored = cognate_model.analysis(side, word)) return *stored;
  return segment_word(source_model, Side::a, word, config);
}

bool is_target_tag(std::string_view token) noexcept {
  return token.size() > 5 && token.substr(0, 4) == "<to_" && token.back() == '>' &&
         token.find('>') == token.size() - 1;
}

std::string prefix_target_tag(std::string_view sentence, std::string_view lang,
                              std::span<const std::string> targets) {
  bool known = false;
  for (const auto& t : targets) known = known || t == lang;
  if (!known)
    fail(ErrorCode::invalid_argument, "unknown target language '" + std::string(lang) + "'");
  std::string out = "<to_";
  out += lang;
  out += "> ";
  out += sentence;
  return out;
}

std::string segment_line(std::string_view line, const std::string& joiner,
                         const TokenSegmenter& segmenter) {
  std::string out;
  out.reserve(line.size() * 2);
  size_t i = 0;
  while (i < line.size()) {
    if (ascii_space(line[i])) {
      out += line[i++];
      continue;
    }
    size_t j = i;
    while (j < line.size() && !ascii_space(line[j])) ++j;
    const std::string_view token = line.substr(i, j - i);
    i = j;

    if (is_target_tag(token)) {
      out += token;
      continue;
    }
    if (!joiner.empty() && token.find(joiner) != std::string_view::npos)
      fail(ErrorCode::invalid_argument,
           "token contains the joiner '" + joiner + "': " + std::string(token));
    const auto parts = segmenter(token);
    for (size_t k = 0; k < parts.size(); ++k) {
      out += parts[k];
      if (k + 1 < parts.size()) {
        out += joiner;
        out += ' ';
      }
    }
  }
  return out;
}

std::string unjoin_line(std::string_view line, const std::string& joiner) {
  const std::string marker = joiner + ' ';
  std::string out;
  out.reserve(line.size());
  size_t pos = 0;
  while (true) {
    const size_t hit = line.find(marker, pos);
    if (hit == std::string_view::npos) break;
    out.append(line.substr(pos, hit - pos));
    pos = hit + marker.size();
  }
  out.append(line.substr(pos));
  return out;
}

void segment_stream(std::istream& in, std::ostream& out, const std::string& joiner,
                    const TokenSegmenter& segmenter) {
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    try {
      out << segment_line(line, joiner, segmenter) << '\n';
    } catch (const Error& e) {
      fail(e.code(), "line " + std::to_string(number) + ": " + e.what());
    }
    if (!out) fail(ErrorCode::io, "write failed at line " + std::to_string(number));
  }
  if (in.bad()) fail(ErrorCode::io, "read failed after line " + std::to_string(number));
}

namespace {
std::vector<std::string> to_utf8(const Analysis& a) {
  std::vector<std::string> parts;
  parts.reserve(a.morphs.size());
  for (const auto& m : a.morphs) parts.push_back(u32_to_utf8(m));
  return parts;
}
}  // namespace

TokenSegmenter model_segmenter(const CognateModel& model, Side side,
                               const SegmenterConfig& config) {
  return [&model, side, config](std::string_view token) {
    return to_utf8(segment_word(model, side, utf8_to_u32(token), config));
  };
}

TokenSegmenter source_segmenter(const CognateModel& source_model,
                                const CognateModel& cognate_model,
                                const SegmenterConfig& config) {
  return [&source_model, &cognate_model, config](std::string_view token) {
    return to_utf8(
        override_source_segmentation(source_model, cognate_model, utf8_to_u32(token), config));
  };
}

}  // namespace cogmorf
