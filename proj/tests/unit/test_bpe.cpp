#include <doctest.h>

#include <random>
#include <sstream>

#include "cogmorf/bpe.hpp"
#include "cogmorf/error.hpp"
#include "support/oracles.hpp"

using namespace cogmorf;
using namespace cogmorf::bpe;

namespace {

uint64_t sum(const WordTable& t) {
  uint64_t s = 0;
  for (const auto& [w, c] : t) s += c;
  return s;
}

// Textbook application: every merge, in acquisition order, rewrites all
// of its occurrences left to right.
std::vector<std::string> reference_apply(const MergeTable& table, const std::string& word) {
  std::vector<std::string> out;
  std::vector<std::string> fragment;
  auto flush = [&](bool final) {
    if (fragment.empty()) return;
    if (final) fragment.back() += "</w>";
    for (const auto& m : table.merges) {
      std::vector<std::string> next;
      for (size_t i = 0; i < fragment.size(); ++i) {
        if (i + 1 < fragment.size() && fragment[i] == m.left && fragment[i + 1] == m.right) {
          next.push_back(m.left + m.right);
          ++i;
        } else {
          next.push_back(fragment[i]);
        }
      }
      fragment = next;
    }
    if (final) fragment.back().resize(fragment.back().size() - 4);
    out.insert(out.end(), fragment.begin(), fragment.end());
    fragment.clear();
  };
  const auto chars = oracle::u(word);
  for (char32_t c : chars) {
    if (c == U'-') {
      flush(false);
      out.push_back("-");
    } else {
      fragment.push_back(oracle::s8(UString(1, c)));
    }
  }
  flush(true);
  return out;
}

std::string random_word(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces{"a", "b", "ä", "ö", "t", "-", "aa", "tö", "ab"};
  std::string w;
  const size_t n = 1 + rng() % 8;
  for (size_t k = 0; k < n; ++k) w += pieces[rng() % pieces.size()];
  return w;
}

}  // namespace

TEST_CASE("balancing scales to the largest table") {
  const WordTable en{{"x", 150}, {"y", 50}}, et{{"x", 60}, {"z", 40}};
  const auto b = balance_counts({en, et});
  CHECK(b.tables[0] == en);
  CHECK(b.tables[1] == WordTable{{"x", 120}, {"z", 80}});
  CHECK(b.scales == std::vector<double>{1.0, 2.0});

  const auto same = balance_counts({en, en});
  CHECK(same.tables[0] == en);
  CHECK(same.tables[1] == en);
}

TEST_CASE("balancing three uneven tables") {
  const WordTable a{{"p", 100}, {"q", 200}};
  const WordTable b{{"r", 33}, {"s", 33}, {"t", 4}};
  const WordTable c{{"u", 1}, {"v", 99}};
  const auto bal = balance_counts({a, b, c});
  CHECK(bal.scales[0] == doctest::Approx(1.0));
  CHECK(bal.scales[1] == doctest::Approx(30.0 / 7.0));
  CHECK(bal.scales[2] == doctest::Approx(3.0));
  for (const auto& t : bal.tables) CHECK(sum(t) == 300);
  // every count within one of its exact scaled value
  const std::vector<const WordTable*> in{&a, &b, &c};
  for (size_t k = 0; k < 3; ++k)
    for (const auto& [w, cnt] : *in[k])
      CHECK(std::abs(static_cast<double>(bal.tables[k].at(w)) - cnt * bal.scales[k]) < 1.0);
  CHECK_THROWS_AS(balance_counts({a}), Error);
  CHECK_THROWS_AS(balance_counts({a, WordTable{}}), Error);
}

TEST_CASE("first merge on aaab") {
  const auto bal = balance_counts({WordTable{{"aaab", 10}}, WordTable{{"aaab", 10}}});
  const auto table = train(bal, alphabet_size(bal) + 1);
  REQUIRE(table.merges.size() == 1);
  CHECK(table.merges[0] == Merge{"a", "a"});
}

TEST_CASE("single-character words give no merges") {
  const auto bal = balance_counts({WordTable{{"a", 3}, {"b", 2}}, WordTable{{"c", 1}}});
  const auto table = train(bal, alphabet_size(bal) + 5);
  CHECK(table.merges.empty());
  CHECK(table.truncated);
  CHECK_THROWS_AS(train(bal, alphabet_size(bal)), Error);
}

TEST_CASE("hyphens are hard boundaries") {
  const auto bal = balance_counts({WordTable{{"ab-cd", 50}, {"töö-aeg", 20}}, WordTable{{"b-c", 40}}});
  const auto table = train(bal, 100);
  for (const auto& m : table.merges) {
    CHECK(m.left.find('-') == std::string::npos);
    CHECK(m.right.find('-') == std::string::npos);
  }
  CHECK(apply(table, "töö-aeg") == std::vector<std::string>{"töö", "-", "aeg"});
  CHECK(apply(table, "ab-cd") == std::vector<std::string>{"ab", "-", "cd"});
  CHECK(apply(table, "--") == std::vector<std::string>{"-", "-"});
  CHECK(apply(MergeTable{}, "xyz") == std::vector<std::string>{"x", "y", "z"});
}

TEST_CASE("apply agrees with the textbook reference and round-trips") {
  std::mt19937_64 rng(17);
  WordTable t1, t2;
  for (int k = 0; k < 300; ++k) t1[random_word(rng)] += 1 + rng() % 9;
  for (int k = 0; k < 200; ++k) t2[random_word(rng)] += 1 + rng() % 3;
  const auto bal = balance_counts({t1, t2});
  const auto table = train(bal, alphabet_size(bal) + 60);
  const Encoder enc(table);
  for (int k = 0; k < 2000; ++k) {
    const std::string w = random_word(rng);
    const auto parts = enc.apply(w);
    CHECK(parts == reference_apply(table, w));
    std::string joined;
    for (const auto& p : parts) {
      CHECK_FALSE(p.empty());
      if (p.find('-') != std::string::npos) CHECK(p == "-");
      joined += p;
    }
    CHECK(joined == w);
  }
  CHECK(train(bal, alphabet_size(bal) + 60).merges == table.merges);
}

TEST_CASE("merge file round trip") {
  MergeTable table;
  table.merges = {{"a", "b"}, {"ab", "c</w>"}, {"ö", "ö"}};
  std::stringstream ss;
  write_merges(ss, table);
  CHECK(read_merges(ss).merges == table.merges);
  std::istringstream bad("a\n");
  CHECK_THROWS_AS(read_merges(bad), Error);
}

TEST_CASE("word tables") {
  std::istringstream in("talo\t3\nkala\t2\ntalo\t1\n");
  CHECK(read_word_table(in) == WordTable{{"kala", 2}, {"talo", 4}});
  std::istringstream bad("talo 3\n");
  CHECK_THROWS_AS(read_word_table(bad), Error);
}
