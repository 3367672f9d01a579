#include "cogmorf/lexicon.hpp"

#include <algorithm>
#include <cmath>

#include "cogmorf/error.hpp"

namespace cogmorf {

namespace {

long double xlogx(uint64_t x) {
  if (x == 0) return 0;
  const auto v = static_cast<long double>(x);
  return v * std::log(v);
}

uint64_t apply_delta(uint64_t value, int64_t delta, const char* what) {
  if (delta < 0 && static_cast<uint64_t>(-delta) > value)
    fail(ErrorCode::contract, std::string("negative count for ") + what);
  return static_cast<uint64_t>(static_cast<int64_t>(value) + delta);
}

double frequency_cost(uint64_t tokens, uint64_t types) {
  if (types == 0) return 0.0;
  // ln C(N-1, M-1)
  const double n = static_cast<double>(tokens);
  const double m = static_cast<double>(types);
  return std::lgamma(n) - std::lgamma(m) - std::lgamma(n - m + 1.0);
}

}  // namespace

void MorphLexicon::add(const UString& key, int64_t delta) {
  if (delta == 0) return;
  if (key.empty()) fail(ErrorCode::contract, "empty lexicon key");

  auto it = counts_.find(key);
  const uint64_t old_count = it == counts_.end() ? 0 : it->second;
  const uint64_t new_count = apply_delta(old_count, delta, "lexicon entry");

  sum_count_log_count_ += xlogx(new_count) - xlogx(old_count);
  tokens_ = tokens_ - old_count + new_count;

  if (old_count == 0) {
    counts_.emplace(key, new_count);
    adjust_chars(key, +1);
  } else if (new_count == 0) {
    counts_.erase(it);
    adjust_chars(key, -1);
  } else {
    it->second = new_count;
  }
}

void MorphLexicon::adjust_chars(const UString& key, int64_t sign) {
  for (char32_t c : key) {
    auto& slot = char_counts_[c];
    const uint64_t updated = apply_delta(slot, sign, "character");
    sum_char_log_char_ += xlogx(updated) - xlogx(slot);
    slot = updated;
    if (slot == 0) char_counts_.erase(c);
  }
  char_total_ = apply_delta(char_total_,
                            sign * static_cast<int64_t>(key.size() + 1),
                            "character total");
}

uint64_t MorphLexicon::count(const UString& key) const {
  auto it = counts_.find(key);
  return it == counts_.end() ? 0 : it->second;
}

double MorphLexicon::corpus_cost() const noexcept {
  if (counts_.size() <= 1) return 0.0;
  const long double cost = xlogx(tokens_) - sum_count_log_count_;
  return std::max(0.0, static_cast<double>(cost));
}

double MorphLexicon::lexicon_cost() const noexcept {
  if (counts_.empty()) return 0.0;
  const uint64_t types = counts_.size();
  const long double form =
      xlogx(char_total_) - (sum_char_log_char_ + xlogx(types));
  return frequency_cost(tokens_, types) +
         std::max(0.0, static_cast<double>(form));
}

double MorphLexicon::corpus_cost_from_scratch() const {
  if (counts_.size() <= 1) return 0.0;
  uint64_t n = 0;
  long double sum = 0;
  for (const auto& [key, c] : sorted_entries()) {
    n += c;
    sum += xlogx(c);
  }
  return std::max(0.0, static_cast<double>(xlogx(n) - sum));
}

double MorphLexicon::lexicon_cost_from_scratch() const {
  if (counts_.empty()) return 0.0;
  std::map<char32_t, uint64_t> chars;
  uint64_t n = 0;
  uint64_t total = 0;
  for (const auto& [key, c] : sorted_entries()) {
    n += c;
    for (char32_t ch : key) ++chars[ch];
    total += key.size() + 1;
  }
  const uint64_t types = counts_.size();
  long double form = 0;
  const long double t = static_cast<long double>(total);
  for (const auto& [ch, c] : chars)
    form -= static_cast<long double>(c) * std::log(c / t);
  form -= static_cast<long double>(types) * std::log(types / t);
  return frequency_cost(n, types) + static_cast<double>(form);
}

std::map<UString, uint64_t> MorphLexicon::sorted_entries() const {
  return {counts_.begin(), counts_.end()};
}

UString Edit::key() const {
  UString k;
  k.reserve(lhs.size() + rhs.size() + 1);
  k += lhs;
  k += kEditBoundary;
  k += rhs;
  return k;
}

Edit Edit::from_key(const UString& key) {
  const auto pos = key.find(kEditBoundary);
  if (pos == UString::npos || key.find(kEditBoundary, pos + 1) != UString::npos)
    fail(ErrorCode::format, "edit key must contain exactly one boundary");
  return {key.substr(0, pos), key.substr(pos + 1)};
}

bool Edit::valid() const noexcept {
  return lhs != rhs && lhs.find(kEditBoundary) == UString::npos &&
         rhs.find(kEditBoundary) == UString::npos;
}

void EditLexicon::add(const Edit& edit, int64_t delta) {
  if (!edit.valid()) fail(ErrorCode::contract, "invalid edit");
  lexicon_.add(edit.key(), delta);
}

void EditLexicon::add_all(const EditScript& script, int64_t delta) {
  for (const auto& e : script) add(e, delta);
}

std::map<Edit, uint64_t> EditLexicon::sorted_entries() const {
  std::map<Edit, uint64_t> out;
  for (const auto& [key, c] : lexicon_.entries()) out.emplace(Edit::from_key(key), c);
  return out;
}

}  // namespace cogmorf
