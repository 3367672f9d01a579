#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cogmorf/error.hpp"
#include "cogmorf/segmenter.hpp"
#include "support/oracles.hpp"

using namespace cogmorf;
using oracle::u;

namespace {

MorphLexicon lexicon_of(std::initializer_list<std::pair<const char*, uint64_t>> entries) {
  MorphLexicon lex;
  for (const auto& [m, c] : entries) lex.add(u(m), static_cast<int64_t>(c));
  return lex;
}

std::vector<std::string> parts8(const Analysis& a) {
  std::vector<std::string> out;
  for (const auto& m : a.morphs) out.push_back(oracle::s8(m));
  return out;
}

// Unigram cost of a segmentation, infinite if it uses an unknown
// multi-character piece.
double unigram_cost(const MorphLexicon& lex, const std::vector<UString>& parts, double penalty) {
  const double n = static_cast<double>(lex.tokens());
  double cost = 0;
  for (const auto& p : parts) {
    const auto c = lex.count(p);
    if (c > 0)
      cost += std::log(n) - std::log(static_cast<double>(c));
    else if (p.size() == 1)
      cost += std::log(n) + penalty;
    else
      return INFINITY;
  }
  return cost;
}

std::vector<std::string> split_by_space(const std::string& s) {
  std::vector<std::string> parts;
  for (char32_t c : u(s)) parts.push_back(oracle::s8(UString(1, c)));
  return parts;
}

}  // namespace

TEST_CASE("frequent single morphs beat a rare whole") {
  const auto lex = lexicon_of({{"a", 10}, {"b", 5}, {"ab", 1}});
  SegmenterConfig cfg;
  CHECK(parts8(viterbi_segment(lex, u("ab"), cfg)) == std::vector<std::string>{"a", "b"});
  CHECK(parts8(viterbi_segment(lex, u("aab"), cfg)) == std::vector<std::string>{"a", "a", "b"});
}

TEST_CASE("unknown characters fall back to single characters") {
  const auto lex = lexicon_of({{"talo", 5}, {"ssa", 3}});
  SegmenterConfig cfg;
  CHECK(parts8(viterbi_segment(lex, u("talossa"), cfg)) == std::vector<std::string>{"talo", "ssa"});
  CHECK(parts8(viterbi_segment(lex, u("xtalo"), cfg)) == std::vector<std::string>{"x", "talo"});
  CHECK(parts8(viterbi_segment(MorphLexicon{}, u("ab"), cfg)) == std::vector<std::string>{"a", "b"});
  CHECK_THROWS_AS(viterbi_segment(lex, U"", cfg), Error);
}

TEST_CASE("ties prefer fewer morphs, then the longest leftmost morph") {
  // "abc" as ab+c or a+bc: equal cost and count
  const auto lex = lexicon_of({{"ab", 1}, {"c", 1}, {"a", 1}, {"bc", 1}});
  SegmenterConfig cfg;
  CHECK(parts8(viterbi_segment(lex, u("abc"), cfg)) == std::vector<std::string>{"ab", "c"});
}

TEST_CASE("viterbi matches brute force over all segmentations") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> pool{"a", "b", "ab", "ba", "aab", "bb", "abb", "ä"};
  SegmenterConfig cfg;
  for (int iter = 0; iter < 300; ++iter) {
    MorphLexicon lex;
    for (const auto& m : pool)
      if (rng() % 3) lex.add(u(m), static_cast<int64_t>(1 + rng() % 20));
    UString word;
    const size_t len = 1 + rng() % 8;
    for (size_t k = 0; k < len; ++k) word += u(pool[rng() % 2 ? 0 : 1])[0];
    if (rng() % 5 == 0) word += U'ä';
    double best = INFINITY;
    for (const auto& seg : oracle::segmentations(word))
      best = std::min(best, unigram_cost(lex, seg, cfg.unknown_penalty));
    const Analysis got = viterbi_segment(lex, word, cfg);
    CHECK(got.valid());
    CHECK(unigram_cost(lex, got.morphs, cfg.unknown_penalty) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("stored analyses win over viterbi") {
  CognateModel model;
  model.add_analysis(Side::a, {u("talossa"), {u("ta"), u("lossa")}, 1});
  model.add_analysis(Side::a, {u("talo"), {u("talo")}, 9});
  model.add_analysis(Side::a, {u("ssa"), {u("ssa")}, 9});
  SegmenterConfig cfg;
  CHECK(parts8(segment_word(model, Side::a, u("talossa"), cfg)) ==
        std::vector<std::string>{"ta", "lossa"});
  CHECK(parts8(segment_word(model, Side::a, u("talossassa"), cfg)) ==
        std::vector<std::string>{"talo", "ssa", "ssa"});
}

TEST_CASE("source override prefers the cognate model, language a first") {
  CognateModel source, cognate;
  source.add_analysis(Side::a, {u("kala"), {u("kala")}, 1});
  cognate.add_analysis(Side::a, {u("kala"), {u("ka"), u("la")}, 1});
  cognate.add_analysis(Side::b, {u("kala"), {u("k"), u("ala")}, 1});
  cognate.add_analysis(Side::b, {u("maja"), {u("ma"), u("ja")}, 1});
  SegmenterConfig cfg;
  CHECK(parts8(override_source_segmentation(source, cognate, u("kala"), cfg)) ==
        std::vector<std::string>{"ka", "la"});
  CHECK(parts8(override_source_segmentation(source, cognate, u("maja"), cfg)) ==
        std::vector<std::string>{"ma", "ja"});
  CHECK(parts8(override_source_segmentation(source, cognate, u("kalaa"), cfg)) ==
        std::vector<std::string>{"kala", "a"});
}

TEST_CASE("line formatting, tags and unjoin") {
  const TokenSegmenter chars = [](std::string_view t) { return split_by_space(std::string(t)); };
  CHECK(segment_line("ab c", "@@", chars) == "a@@ b c");
  CHECK(segment_line("<to_fi>  ab\t", "@@", chars) == "<to_fi>  a@@ b\t");
  CHECK(unjoin_line("a@@ b c", "@@") == "ab c");
  CHECK_THROWS_AS(segment_line("a@@b", "@@", chars), Error);
  CHECK(is_target_tag("<to_et>"));
  CHECK_FALSE(is_target_tag("<to_>"));
  CHECK_FALSE(is_target_tag("<to_a>b>"));
  const std::vector<std::string> targets{"fi", "et"};
  CHECK(prefix_target_tag("hello world", "et", targets) == "<to_et> hello world");
  CHECK_THROWS_AS(prefix_target_tag("x", "en", targets), Error);
}

TEST_CASE("stream errors name the line") {
  const TokenSegmenter whole = [](std::string_view t) { return std::vector<std::string>{std::string(t)}; };
  std::istringstream in("ok\nbad@@token\n");
  std::ostringstream out;
  try {
    segment_stream(in, out, "@@", whole);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("segment then unjoin restores random lines byte for byte") {
  std::mt19937_64 rng(99);
  const std::string alphabet[] = {"a", "b", "@", "ö", " ", "  ", "\t", "x"};
  const TokenSegmenter random_cut = [&rng](std::string_view t) {
    const auto chars = split_by_space(std::string(t));
    std::vector<std::string> parts;
    for (const auto& c : chars) {
      if (parts.empty() || rng() % 2) parts.emplace_back();
      parts.back() += c;
    }
    return parts;
  };
  int checked = 0;
  for (int iter = 0; iter < 5000; ++iter) {
    std::string line;
    const size_t len = rng() % 20;
    for (size_t k = 0; k < len; ++k) line += alphabet[rng() % 8];
    std::string seg;
    try {
      seg = segment_line(line, "@@", random_cut);
    } catch (const Error&) {
      CHECK(line.find("@@") != std::string::npos);
      continue;
    }
    CHECK(unjoin_line(seg, "@@") == line);
    ++checked;
  }
  CHECK(checked > 1000);
}
