#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "cogmorf/edit_model.hpp"
#include "cogmorf/error.hpp"
#include "support/oracles.hpp"

using namespace cogmorf;
using oracle::u;

namespace {

std::set<std::pair<std::string, std::string>> as_set(const EditScript& script) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& e : script) out.emplace(oracle::s8(e.lhs), oracle::s8(e.rhs));
  return out;
}

UString random_word(std::mt19937_64& rng, size_t max_len, const UString& alphabet) {
  const size_t len = rng() % (max_len + 1);
  UString w;
  for (size_t i = 0; i < len; ++i) w += alphabet[rng() % alphabet.size()];
  return w;
}

}  // namespace

TEST_CASE("identity alignment") {
  const auto al = levenshtein_align(U"abc", U"abc");
  REQUIRE(al.size() == 3);
  for (const auto& op : al) CHECK(op.kind == AlignKind::match);
  CHECK(alignment_cost(al) == 0);
  CHECK(extract_edits(U"abc", U"abc").empty());
}

TEST_CASE("empty strings") {
  CHECK(levenshtein_align(U"", U"").empty());
  CHECK(levenshtein_distance(U"", U"abc") == 3);
  CHECK(as_set(extract_edits(U"", U"ab")) == std::set<std::pair<std::string, std::string>>{{"", "ab"}});
  CHECK(as_set(extract_edits(U"ab", U"")) == std::set<std::pair<std::string, std::string>>{{"ab", ""}});
}

TEST_CASE("final deletion") {
  const auto al = levenshtein_align(u("saamiseksi"), u("saamiseks"));
  REQUIRE(al.size() == 10);
  for (size_t k = 0; k < 9; ++k) CHECK(al[k].kind == AlignKind::match);
  CHECK(al[9].kind == AlignKind::remove);
  CHECK(al[9].source == U'i');
  // 's' is not contained in "i", so no extension
  CHECK(as_set(extract_edits(u("saamiseksi"), u("saamiseks"))) ==
        std::set<std::pair<std::string, std::string>>{{"i", ""}});
}

TEST_CASE("golden Finnish-Estonian example") {
  const auto a = u("yhteenkuuluvuuspolitiikkaa");
  const auto b = u("ühtekuuluvuspoliitika");
  CHECK(levenshtein_distance(a, b) == oracle::levenshtein(a, b));
  const auto edits = extract_edits(a, b);
  CHECK(as_set(edits) == std::set<std::pair<std::string, std::string>>{
                             {"y", "ü"}, {"een", "e"}, {"uu", "u"}, {"ti", "it"}, {"kka", "k"}});
  CHECK(edits.size() == 5);
}

TEST_CASE("sound-length extension") {
  CHECK(as_set(extract_edits(u("maa"), u("ma"))) ==
        std::set<std::pair<std::string, std::string>>{{"aa", "a"}});
  CHECK(as_set(extract_edits(u("ma"), u("maa"))) ==
        std::set<std::pair<std::string, std::string>>{{"a", "aa"}});
  CHECK(as_set(extract_edits(u("tuli"), u("tulli"))) ==
        std::set<std::pair<std::string, std::string>>{{"l", "ll"}});
  // no same-character neighbor: stays an epsilon edit
  CHECK(as_set(extract_edits(u("abc"), u("abxc"))) ==
        std::set<std::pair<std::string, std::string>>{{"", "x"}});
}

TEST_CASE("round trip on the documented example") {
  const auto script = extract_positioned_edits(u("työ"), u("töö"));
  CHECK(apply_edit_script(u("työ"), script) == u("töö"));
  CHECK(apply_edit_script(u("työ"), {}) == u("työ"));
}

TEST_CASE("malformed scripts are rejected") {
  auto script = extract_positioned_edits(u("abc"), u("axc"));
  REQUIRE(script.size() == 1);
  script[0].source_begin = 7;
  CHECK_THROWS_AS(apply_edit_script(u("abc"), script), Error);
  script = extract_positioned_edits(u("abc"), u("axc"));
  CHECK_THROWS_AS(apply_edit_script(u("zzz"), script), Error);
}

TEST_CASE("random pairs: distance, minimality, round trip, extension soundness") {
  std::mt19937_64 rng(2024);
  const UString alphabet = u("aabüöl");
  for (int iter = 0; iter < 3000; ++iter) {
    const UString a = random_word(rng, 10, alphabet);
    const UString b = random_word(rng, 10, alphabet);
    const size_t dist = oracle::levenshtein(a, b);
    REQUIRE(levenshtein_distance(a, b) == dist);

    const auto al = levenshtein_align(a, b);
    CHECK(alignment_cost(al) == dist);
    UString src, dst;
    for (const auto& op : al) {
      if (op.kind != AlignKind::insert) src += op.source;
      if (op.kind != AlignKind::remove) dst += op.target;
      if (op.kind == AlignKind::match) CHECK(op.source == op.target);
      if (op.kind == AlignKind::substitute) CHECK(op.source != op.target);
    }
    CHECK(src == a);
    CHECK(dst == b);

    const auto script = extract_positioned_edits(a, b);
    CHECK(apply_edit_script(a, script) == b);
    for (size_t k = 1; k < script.size(); ++k) {
      CHECK(script[k].source_begin >= script[k - 1].source_begin + script[k - 1].edit.lhs.size());
      CHECK(script[k].target_begin >= script[k - 1].target_begin + script[k - 1].edit.rhs.size());
    }
    for (const auto& pe : script) {
      CHECK(pe.edit.valid());
      const UString& full = pe.edit.lhs.empty() ? pe.edit.rhs : pe.edit.lhs;
      if (!pe.edit.lhs.empty() && !pe.edit.rhs.empty()) continue;
      // An epsilon edit may remain only if neither free neighbor is contained
      // in its other side.
      const size_t pos = pe.source_begin;
      for (size_t nb : {pos == 0 ? a.size() : pos - 1, pos + pe.edit.lhs.size()}) {
        if (nb >= a.size()) continue;
        const bool taken = std::any_of(script.begin(), script.end(), [&](const PositionedEdit& o) {
          return nb >= o.source_begin && nb < o.source_begin + o.edit.lhs.size();
        });
        if (!taken) CHECK(full.find(a[nb]) == UString::npos);
      }
    }
    CHECK(extract_edits(a, b) == extract_edits(a, b));
  }
}

TEST_CASE("edit cache returns the extracted script") {
  EditCache cache;
  CHECK(cache.get(u("talo"), u("talu")) == extract_edits(u("talo"), u("talu")));
  cache.get(u("talo"), u("talu"));
  CHECK(cache.size() == 1);
}
