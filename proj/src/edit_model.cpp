#include "cogmorf/edit_model.hpp"

#include <algorithm>
#include <utility>

#include "cogmorf/error.hpp"

namespace cogmorf {

size_t levenshtein_distance(std::u32string_view a, std::u32string_view b) {
  std::vector<size_t> row(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

size_t alignment_cost(const Alignment& alignment) noexcept {
  return static_cast<size_t>(
      std::count_if(alignment.begin(), alignment.end(),
                    [](const AlignmentOp& op) { return op.kind != AlignKind::match; }));
}

namespace {

// (distance, runs) for aligning a suffix pair; compared lexicographically.
using Score = std::pair<uint32_t, uint32_t>;

class SuffixTable {
 public:
  SuffixTable(std::u32string_view a, std::u32string_view b)
      : a_(a), b_(b), cols_(b.size() + 1), cells_((a.size() + 1) * cols_ * 2) {
    for (size_t i = a.size() + 1; i-- > 0;)
      for (size_t j = b.size() + 1; j-- > 0;)
        for (int in_run = 0; in_run < 2; ++in_run)
          at(i, j, in_run) = compute(i, j, in_run != 0);
  }

  Score operator()(size_t i, size_t j, bool in_run) const {
    return cells_[(i * cols_ + j) * 2 + (in_run ? 1 : 0)];
  }

  // Score after taking a non-match op from a state with the given run flag.
  Score edit_step(size_t i, size_t j, bool in_run) const {
    Score s = (*this)(i, j, true);
    return {s.first + 1, s.second + (in_run ? 0 : 1)};
  }

 private:
  Score& at(size_t i, size_t j, int in_run) {
    return cells_[(i * cols_ + j) * 2 + in_run];
  }

  Score compute(size_t i, size_t j, bool in_run) const {
    if (i == a_.size() && j == b_.size()) return {0, 0};
    Score best{UINT32_MAX, UINT32_MAX};
    if (i < a_.size() && j < b_.size()) {
      if (a_[i] == b_[j])
        best = std::min(best, (*this)(i + 1, j + 1, false));
      else
        best = std::min(best, edit_step(i + 1, j + 1, in_run));
    }
    if (i < a_.size()) best = std::min(best, edit_step(i + 1, j, in_run));
    if (j < b_.size()) best = std::min(best, edit_step(i, j + 1, in_run));
    return best;
  }

  std::u32string_view a_, b_;
  size_t cols_;
  std::vector<Score> cells_;
};

}  // namespace

Alignment levenshtein_align(std::u32string_view a, std::u32string_view b) {
  const SuffixTable table(a, b);
  Alignment ops;
  ops.reserve(std::max(a.size(), b.size()));
  size_t i = 0, j = 0;
  bool in_run = false;
  while (i < a.size() || j < b.size()) {
    const Score target = table(i, j, in_run);
    const bool both = i < a.size() && j < b.size();
    if (both && a[i] == b[j] && table(i + 1, j + 1, false) == target) {
      ops.push_back({AlignKind::match, a[i], b[j], i, j});
      ++i, ++j;
      in_run = false;
    } else if (both && a[i] != b[j] &&
               table.edit_step(i + 1, j + 1, in_run) == target) {
      ops.push_back({AlignKind::substitute, a[i], b[j], i, j});
      ++i, ++j;
      in_run = true;
    } else if (i < a.size() && table.edit_step(i + 1, j, in_run) == target) {
      ops.push_back({AlignKind::remove, a[i], 0, i, j});
      ++i;
      in_run = true;
    } else {
      ops.push_back({AlignKind::insert, 0, b[j], i, j});
      ++j;
      in_run = true;
    }
  }
  return ops;
}

std::vector<PositionedEdit> extract_positioned_edits(std::u32string_view a,
                                                     std::u32string_view b) {
  const Alignment ops = levenshtein_align(a, b);
  std::vector<PositionedEdit> edits;
  // Index of the last unchanged character absorbed by a right extension.
  size_t absorbed = SIZE_MAX;

  size_t k = 0;
  while (k < ops.size()) {
    if (ops[k].kind == AlignKind::match) {
      ++k;
      continue;
    }
    const size_t start = k;
    PositionedEdit pe;
    pe.source_begin = ops[k].source_pos;
    pe.target_begin = ops[k].target_pos;
    for (; k < ops.size() && ops[k].kind != AlignKind::match; ++k) {
      if (ops[k].kind != AlignKind::insert) pe.edit.lhs += ops[k].source;
      if (ops[k].kind != AlignKind::remove) pe.edit.rhs += ops[k].target;
    }

    if (pe.edit.lhs.empty() != pe.edit.rhs.empty()) {
      const UString& filled = pe.edit.lhs.empty() ? pe.edit.rhs : pe.edit.lhs;
      const bool has_left = start > 0 && start - 1 != absorbed;
      const bool has_right = k < ops.size();
      if (has_left && filled.find(ops[start - 1].source) != UString::npos) {
        const char32_t c = ops[start - 1].source;
        pe.edit.lhs.insert(pe.edit.lhs.begin(), c);
        pe.edit.rhs.insert(pe.edit.rhs.begin(), c);
        --pe.source_begin;
        --pe.target_begin;
      } else if (has_right && filled.find(ops[k].source) != UString::npos) {
        pe.edit.lhs += ops[k].source;
        pe.edit.rhs += ops[k].source;
        absorbed = k;
      }
    }
    edits.push_back(std::move(pe));
  }
  return edits;
}

EditScript extract_edits(std::u32string_view a, std::u32string_view b) {
  EditScript script;
  for (auto& pe : extract_positioned_edits(a, b)) script.push_back(std::move(pe.edit));
  return script;
}

UString apply_edit_script(std::u32string_view source,
                          std::span<const PositionedEdit> script) {
  UString out;
  size_t pos = 0;
  for (const auto& pe : script) {
    const auto& lhs = pe.edit.lhs;
    if (pe.source_begin < pos || pe.source_begin + lhs.size() > source.size() ||
        source.substr(pe.source_begin, lhs.size()) != lhs)
      fail(ErrorCode::format, "edit script does not match source");
    if (out.size() + (pe.source_begin - pos) != pe.target_begin)
      fail(ErrorCode::format, "edit script target position mismatch");
    out.append(source.substr(pos, pe.source_begin - pos));
    out += pe.edit.rhs;
    pos = pe.source_begin + lhs.size();
  }
  out.append(source.substr(pos));
  return out;
}

const EditScript& EditCache::get(const UString& a, const UString& b) {
  UString key;
  key.reserve(a.size() + b.size() + 1);
  key += a;
  key += U'\0';
  key += b;
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(std::move(key), extract_edits(a, b)).first;
  return it->second;
}

}  // namespace cogmorf
