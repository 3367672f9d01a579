#include "cogmorf/bpe.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <tuple>
#include <unordered_map>

#include "cogmorf/error.hpp"

namespace cogmorf::bpe {

BalancedCounts balance_counts(const std::vector<WordTable>& tables) {
  if (tables.size() < 2) fail(ErrorCode::invalid_argument, "need at least two count tables");
  std::vector<uint64_t> sums;
  for (const auto& t : tables) {
    uint64_t s = 0;
    for (const auto& [w, c] : t) s += c;
    if (t.empty() || s == 0) fail(ErrorCode::invalid_argument, "empty count table");
    sums.push_back(s);
  }
  const uint64_t target = *std::max_element(sums.begin(), sums.end());

  BalancedCounts out;
  for (size_t k = 0; k < tables.size(); ++k) {
    const auto& table = tables[k];
    const uint64_t sum = sums[k];
    out.scales.push_back(static_cast<double>(target) / static_cast<double>(sum));

    struct Share {
      const std::string* word;
      uint64_t whole;
      uint64_t remainder;
    };
    std::vector<Share> shares;
    uint64_t assigned = 0;
    for (const auto& [w, c] : table) {
      const unsigned __int128 scaled = static_cast<unsigned __int128>(c) * target;
      shares.push_back({&w, static_cast<uint64_t>(scaled / sum),
                        static_cast<uint64_t>(scaled % sum)});
      assigned += shares.back().whole;
    }
    // Hand out the units lost to flooring, largest remainder first.
    std::vector<size_t> order(shares.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
      return shares[x].remainder > shares[y].remainder;
    });
    for (size_t i = 0; assigned < target; ++i, ++assigned) ++shares[order[i]].whole;

    WordTable balanced;
    for (const auto& s : shares) balanced.emplace(*s.word, std::max<uint64_t>(s.whole, 1));
    out.tables.push_back(std::move(balanced));
  }
  return out;
}

namespace {

struct Fragment {
  std::u32string text;
  bool hyphen;
};

std::vector<Fragment> fragments(const std::u32string& word, const std::u32string& hyphens) {
  std::vector<Fragment> out;
  std::u32string current;
  for (char32_t c : word) {
    if (hyphens.find(c) != std::u32string::npos) {
      if (!current.empty()) out.push_back({std::move(current), false});
      current.clear();
      out.push_back({std::u32string(1, c), true});
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back({std::move(current), false});
  return out;
}

std::vector<std::string> symbols_of(const std::u32string& fragment, bool word_final) {
  std::vector<std::string> symbols;
  for (char32_t c : fragment) symbols.push_back(u32_to_utf8(std::u32string_view(&c, 1)));
  if (word_final) symbols.back() += kEndOfWord;
  return symbols;
}

// Fragment symbol sequences with their summed counts, plus hyphen symbols.
struct Vocabulary {
  std::map<std::vector<std::string>, int64_t> sequences;
  std::set<std::string> hyphens;
};

Vocabulary collect(const BalancedCounts& counts, const Options& options) {
  Vocabulary v;
  for (const auto& table : counts.tables) {
    for (const auto& [word, count] : table) {
      const auto frags = fragments(utf8_to_u32(word), options.hyphens);
      for (size_t i = 0; i < frags.size(); ++i) {
        if (frags[i].hyphen) {
          v.hyphens.insert(u32_to_utf8(frags[i].text));
          continue;
        }
        v.sequences[symbols_of(frags[i].text, i + 1 == frags.size())] +=
            static_cast<int64_t>(count);
      }
    }
  }
  return v;
}

using Pair = std::pair<std::string, std::string>;

struct PairHash {
  size_t operator()(const Pair& p) const {
    const size_t h = std::hash<std::string>()(p.first);
    return h ^ (std::hash<std::string>()(p.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

class PairStats {
 public:
  void add(const Pair& p, int64_t delta) {
    if (delta == 0) return;
    auto& c = counts_[p];
    if (c > 0) queue_.erase({-c, p.first, p.second});
    c += delta;
    if (c > 0) queue_.insert({-c, p.first, p.second});
  }

  // Highest count, then lexicographically smallest pair.
  bool best(Pair& out, int64_t& count) const {
    if (queue_.empty()) return false;
    const auto& [neg, left, right] = *queue_.begin();
    out = {left, right};
    count = -neg;
    return true;
  }

 private:
  std::unordered_map<Pair, int64_t, PairHash> counts_;
  std::set<std::tuple<int64_t, std::string, std::string>> queue_;
};

void merge_in_place(std::vector<std::string>& symbols, const Pair& pair) {
  std::vector<std::string> merged;
  merged.reserve(symbols.size());
  for (size_t i = 0; i < symbols.size(); ++i) {
    if (i + 1 < symbols.size() && symbols[i] == pair.first && symbols[i + 1] == pair.second) {
      merged.push_back(symbols[i] + symbols[i + 1]);
      ++i;
    } else {
      merged.push_back(std::move(symbols[i]));
    }
  }
  symbols = std::move(merged);
}

}  // namespace

size_t alphabet_size(const BalancedCounts& counts, const Options& options) {
  const auto vocab = collect(counts, options);
  std::set<std::string> alphabet = vocab.hyphens;
  for (const auto& [seq, c] : vocab.sequences) alphabet.insert(seq.begin(), seq.end());
  return alphabet.size();
}

MergeTable train(const BalancedCounts& counts, size_t vocab_size, const Options& options) {
  const auto vocab = collect(counts, options);
  std::set<std::string> alphabet = vocab.hyphens;
  for (const auto& [seq, c] : vocab.sequences) alphabet.insert(seq.begin(), seq.end());
  if (vocab_size <= alphabet.size())
    fail(ErrorCode::invalid_argument,
         "vocabulary size must exceed the alphabet size (" + std::to_string(alphabet.size()) + ")");

  std::vector<std::vector<std::string>> words;
  std::vector<int64_t> freqs;
  for (const auto& [seq, c] : vocab.sequences) {
    words.push_back(seq);
    freqs.push_back(c);
  }

  PairStats stats;
  std::unordered_map<Pair, std::set<size_t>, PairHash> where;
  auto account = [&](size_t w, int64_t sign) {
    const auto& s = words[w];
    for (size_t i = 0; i + 1 < s.size(); ++i) {
      const Pair p{s[i], s[i + 1]};
      stats.add(p, sign * freqs[w]);
      if (sign > 0) where[p].insert(w);
    }
  };
  for (size_t w = 0; w < words.size(); ++w) account(w, +1);

  MergeTable table;
  const size_t wanted = vocab_size - alphabet.size();
  while (table.merges.size() < wanted) {
    Pair best;
    int64_t count = 0;
    if (!stats.best(best, count)) {
      table.truncated = true;
      break;
    }
    table.merges.push_back({best.first, best.second});
    const std::set<size_t> affected = where[best];
    for (size_t w : affected) {
      account(w, -1);
      merge_in_place(words[w], best);
      account(w, +1);
    }
  }
  return table;
}

Encoder::Encoder(const MergeTable& table, Options options) : options_(std::move(options)) {
  for (size_t r = 0; r < table.merges.size(); ++r)
    ranks_.emplace(std::make_pair(table.merges[r].left, table.merges[r].right), r);
}

std::vector<std::string> Encoder::encode_fragment(std::vector<std::string> symbols) const {
  while (symbols.size() > 1) {
    size_t best_rank = SIZE_MAX;
    const std::pair<std::string, std::string>* best = nullptr;
    for (size_t i = 0; i + 1 < symbols.size(); ++i) {
      auto it = ranks_.find({symbols[i], symbols[i + 1]});
      if (it != ranks_.end() && it->second < best_rank) {
        best_rank = it->second;
        best = &it->first;
      }
    }
    if (!best) break;
    merge_in_place(symbols, *best);
  }
  return symbols;
}

std::vector<std::string> Encoder::apply(std::string_view word) const {
  std::vector<std::string> out;
  const auto frags = fragments(utf8_to_u32(word), options_.hyphens);
  for (size_t i = 0; i < frags.size(); ++i) {
    if (frags[i].hyphen) {
      out.push_back(u32_to_utf8(frags[i].text));
      continue;
    }
    const bool final = i + 1 == frags.size();
    auto parts = encode_fragment(symbols_of(frags[i].text, final));
    if (final) parts.back().resize(parts.back().size() - kEndOfWord.size());
    for (auto& p : parts) out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::string> apply(const MergeTable& table, std::string_view word,
                               const Options& options) {
  return Encoder(table, options).apply(word);
}

void write_merges(std::ostream& out, const MergeTable& table) {
  for (const auto& m : table.merges) out << m.left << ' ' << m.right << '\n';
  if (!out) fail(ErrorCode::io, "write failed");
}

MergeTable read_merges(std::istream& in) {
  MergeTable table;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (number == 1 && line.rfind("#version", 0) == 0)) continue;
    const size_t sp = line.find(' ');
    if (sp == std::string::npos || sp == 0 || sp + 1 == line.size() ||
        line.find(' ', sp + 1) != std::string::npos)
      fail(ErrorCode::format, "line " + std::to_string(number) + ": expected two symbols");
    table.merges.push_back({line.substr(0, sp), line.substr(sp + 1)});
  }
  if (in.bad()) fail(ErrorCode::io, "read failed");
  return table;
}

WordTable read_word_table(std::istream& in) {
  WordTable table;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    uint64_t count = 0;
    const char* first = tab == std::string::npos ? nullptr : line.data() + tab + 1;
    const char* last = line.data() + line.size();
    if (!first || tab == 0 || first == last)
      fail(ErrorCode::format, "line " + std::to_string(number) + ": expected word<TAB>count");
    const auto [ptr, ec] = std::from_chars(first, last, count);
    if (ec != std::errc() || ptr != last)
      fail(ErrorCode::format, "line " + std::to_string(number) + ": invalid count");
    const std::string word = line.substr(0, tab);
    try {
      utf8_to_u32(word);
    } catch (const Error& e) {
      fail(ErrorCode::format, "line " + std::to_string(number) + ": " + e.what());
    }
    if (count > 0) table[word] += count;
  }
  if (in.bad()) fail(ErrorCode::io, "read failed");
  return table;
}

}  // namespace cogmorf::bpe
