#include "cogmorf/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>

#include "cogmorf/cognates.hpp"
#include "cogmorf/error.hpp"

namespace cogmorf {

namespace {

constexpr std::string_view kMagic = "#cogmorf-model";

const char* const kSections[] = {"[LEXICON-A]", "[LEXICON-B]", "[EDITS]",
                                 "[PAIRS]",     "[ANALYSES-A]", "[ANALYSES-B]"};

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_escaped(std::string& out, char32_t c) {
  switch (c) {
    case U'\\': out += "\\\\"; break;
    case U'\t': out += "\\t"; break;
    case U'\n': out += "\\n"; break;
    case U'\r': out += "\\r"; break;
    case U' ': out += "\\s"; break;
    case U'|': out += "\\|"; break;
    default: out += u32_to_utf8(std::u32string_view(&c, 1));
  }
}

// Unescapes up to the first unescaped `stop` character (if any); returns
// the position after it, or npos when the text was consumed entirely.
size_t unescape_until(std::string_view text, char stop, UString& out) {
  const UString chars = utf8_to_u32(text);
  size_t consumed_bytes = 0;
  for (size_t i = 0; i < chars.size(); ++i) {
    const char32_t c = chars[i];
    if (c == U'\\') {
      if (i + 1 == chars.size()) fail(ErrorCode::format, "dangling escape");
      switch (chars[++i]) {
        case U'\\': out += U'\\'; break;
        case U't': out += U'\t'; break;
        case U'n': out += U'\n'; break;
        case U'r': out += U'\r'; break;
        case U's': out += U' '; break;
        case U'|': out += U'|'; break;
        default: fail(ErrorCode::format, "unknown escape sequence");
      }
    } else if (stop != 0 && c == static_cast<char32_t>(stop)) {
      consumed_bytes = u32_to_utf8(std::u32string_view(chars).substr(0, i + 1)).size();
      return consumed_bytes;
    } else {
      out += c;
    }
  }
  return std::string_view::npos;
}

uint64_t parse_count(std::string_view text) {
  uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || v == 0)
    fail(ErrorCode::format, "invalid count '" + std::string(text) + "'");
  return v;
}

double parse_double(std::string_view text) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
    fail(ErrorCode::format, "invalid number '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t pos = 0;
  while (true) {
    const size_t tab = line.find('\t', pos);
    fields.push_back(line.substr(pos, tab == std::string_view::npos ? tab : tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return fields;
}

std::string edit_field(const Edit& e) { return escape_field(e.lhs) + "|" + escape_field(e.rhs); }

Edit parse_edit_field(std::string_view text) {
  Edit e;
  const size_t after = unescape_until(text, '|', e.lhs);
  if (after == std::string_view::npos) fail(ErrorCode::format, "edit without boundary");
  if (unescape_until(text.substr(after), '|', e.rhs) != std::string_view::npos)
    fail(ErrorCode::format, "edit with more than one boundary");
  if (!e.valid()) fail(ErrorCode::format, "invalid edit");
  return e;
}

}  // namespace

std::string escape_field(const UString& text) {
  std::string out;
  for (char32_t c : text) write_escaped(out, c);
  return out;
}

UString unescape_field(std::string_view text) {
  UString out;
  unescape_until(text, 0, out);
  return out;
}

void write_model(std::ostream& out, const CognateModel& model, const ModelInfo& info) {
  const auto& w = model.weights();
  out << kMagic << '\n'
      << "version\t" << kModelFormatVersion << '\n'
      << "alpha\t" << format_double(w.alpha) << '\n'
      << "edit_weight\t" << format_double(w.edit_weight) << '\n'
      << "edit_mode\t" << edit_mode_name(w.edit_mode) << '\n'
      << "seed\t" << info.seed << '\n'
      << "dampening\t" << dampening_name(info.dampening) << '\n';

  for (Side side : kSides) {
    out << kSections[index(side)] << '\n';
    for (const auto& [morph, count] : model.lexicon(side).sorted_entries())
      out << escape_field(morph) << '\t' << count << '\n';
  }
  out << kSections[2] << '\n';
  for (const auto& [edit, count] : model.edits().sorted_entries())
    out << edit_field(edit) << '\t' << count << '\n';

  out << kSections[3] << '\n';
  std::vector<CognatePair> pairs = model.pairs();
  std::sort(pairs.begin(), pairs.end());
  for (const auto& p : pairs) out << escape_field(p.word_a) << '\t' << escape_field(p.word_b) << '\n';

  for (Side side : kSides) {
    out << kSections[4 + index(side)] << '\n';
    for (const auto& [word, a] : model.sorted_analyses(side)) {
      out << escape_field(word) << '\t' << a->count << '\t';
      for (size_t i = 0; i < a->morphs.size(); ++i)
        out << (i ? " " : "") << escape_field(a->morphs[i]);
      out << '\n';
    }
  }
  if (!out) fail(ErrorCode::io, "write failed");
}

void save_model(const std::filesystem::path& path, const CognateModel& model,
                const ModelInfo& info) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot open '" + path.string() + "' for writing");
  write_model(out, model, info);
  out.close();
  if (!out) fail(ErrorCode::io, "write failed for '" + path.string() + "'");
}

LoadedModel read_model(std::istream& in) {
  std::string line;
  size_t number = 0;
  auto error_at = [&](size_t n, const std::string& msg) {
    fail(ErrorCode::format, "line " + std::to_string(n) + ": " + msg);
  };

  if (!std::getline(in, line) || line != kMagic) error_at(1, "not a cogmorf model file");
  number = 1;

  CostWeights weights;
  ModelInfo info;
  std::map<std::string, std::string> header;
  int section = -1;
  std::array<std::map<UString, std::pair<uint64_t, size_t>>, 2> lexicon_rows;
  std::map<Edit, std::pair<uint64_t, size_t>> edit_rows;
  std::vector<std::pair<CognatePair, size_t>> pair_rows;
  std::array<std::vector<std::pair<Analysis, size_t>>, 2> analysis_rows;
  std::array<size_t, 6> section_line{};

  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    if (line.front() == '[') {
      const auto it = std::find(std::begin(kSections), std::end(kSections), line);
      if (it == std::end(kSections)) error_at(number, "unknown section " + line);
      const int next = static_cast<int>(it - std::begin(kSections));
      if (next != section + 1) error_at(number, "section out of order: " + line);
      section = next;
      section_line[section] = number;
      continue;
    }
    try {
      const auto fields = split_tabs(line);
      if (section == -1) {
        if (fields.size() != 2) fail(ErrorCode::format, "expected key<TAB>value");
        const std::string key(fields[0]);
        if (header.count(key)) fail(ErrorCode::format, "duplicate header key " + key);
        header[key] = std::string(fields[1]);
        if (key == "version" && fields[1] != std::to_string(kModelFormatVersion))
          fail(ErrorCode::format, "unsupported format version " + std::string(fields[1]));
        continue;
      }
      if (section <= 1) {
        if (fields.size() != 2) fail(ErrorCode::format, "expected morph<TAB>count");
        const UString morph = unescape_field(fields[0]);
        if (morph.empty()) fail(ErrorCode::format, "empty morph");
        if (!lexicon_rows[section].emplace(morph, std::make_pair(parse_count(fields[1]), number)).second)
          fail(ErrorCode::format, "duplicate morph");
      } else if (section == 2) {
        if (fields.size() != 2) fail(ErrorCode::format, "expected edit<TAB>count");
        if (!edit_rows.emplace(parse_edit_field(fields[0]), std::make_pair(parse_count(fields[1]), number)).second)
          fail(ErrorCode::format, "duplicate edit");
      } else if (section == 3) {
        if (fields.size() != 2) fail(ErrorCode::format, "expected word_a<TAB>word_b");
        pair_rows.push_back({{unescape_field(fields[0]), unescape_field(fields[1])}, number});
      } else {
        if (fields.size() != 3) fail(ErrorCode::format, "expected word<TAB>count<TAB>morphs");
        Analysis a;
        a.word = unescape_field(fields[0]);
        a.count = parse_count(fields[1]);
        for (const auto& m : split_tokens(fields[2])) a.morphs.push_back(unescape_field(m));
        if (!a.valid()) fail(ErrorCode::format, "morphs do not concatenate to the word");
        analysis_rows[section - 4].push_back({std::move(a), number});
      }
    } catch (const Error& e) {
      error_at(number, e.what());
    }
  }
  if (in.bad()) fail(ErrorCode::io, "read failed");
  if (section != 5) error_at(number, "missing sections");

  auto header_value = [&](const char* key) -> const std::string& {
    auto it = header.find(key);
    if (it == header.end()) error_at(section_line[0], std::string("missing header ") + key);
    return it->second;
  };
  try {
    if (header_value("version") != std::to_string(kModelFormatVersion))
      fail(ErrorCode::format, "unsupported format version");
    weights.alpha = parse_double(header_value("alpha"));
    weights.edit_weight = parse_double(header_value("edit_weight"));
    weights.edit_mode = parse_edit_mode(header_value("edit_mode"));
    const auto& seed = header_value("seed");
    const auto [ptr, ec] = std::from_chars(seed.data(), seed.data() + seed.size(), info.seed);
    if (ec != std::errc() || ptr != seed.data() + seed.size())
      fail(ErrorCode::format, "invalid seed");
    info.dampening = parse_dampening(header_value("dampening"));
    if (!(weights.alpha > 0) || !(weights.edit_weight > 0))
      fail(ErrorCode::format, "weights must be positive");
  } catch (const Error& e) {
    error_at(section_line[0], std::string("header: ") + e.what());
  }

  LoadedModel loaded{CognateModel(weights), info};
  auto& model = loaded.model;
  for (const auto& [pair, n] : pair_rows) {
    try {
      model.add_pair(pair);
    } catch (const Error& e) {
      error_at(n, e.what());
    }
  }
  for (Side side : kSides) {
    for (const auto& [a, n] : analysis_rows[index(side)]) {
      try {
        model.add_analysis(side, a);
      } catch (const Error& e) {
        error_at(n, e.what());
      }
    }
  }
  for (const auto& p : model.pairs()) {
    const auto n = section_line[3];
    if (!model.analysis(Side::a, p.word_a) || !model.analysis(Side::b, p.word_b))
      error_at(n, "cognate pair without analyses: " + u32_to_utf8(p.word_a));
  }

  // Cached sections must agree with what the analyses imply.
  for (Side side : kSides) {
    const auto rebuilt = model.lexicon(side).sorted_entries();
    const auto& rows = lexicon_rows[index(side)];
    for (const auto& [morph, row] : rows) {
      auto it = rebuilt.find(morph);
      if (it == rebuilt.end() || it->second != row.first)
        error_at(row.second, "lexicon count disagrees with analyses");
    }
    if (rows.size() != rebuilt.size())
      error_at(section_line[index(side)], "lexicon is missing morphs used by analyses");
  }
  const auto rebuilt_edits = model.edits().sorted_entries();
  for (const auto& [edit, row] : edit_rows) {
    auto it = rebuilt_edits.find(edit);
    if (it == rebuilt_edits.end() || it->second != row.first)
      error_at(row.second, "edit count disagrees with cognate analyses");
  }
  if (edit_rows.size() != rebuilt_edits.size())
    error_at(section_line[2], "edit section is missing edits used by cognate pairs");
  return loaded;
}

LoadedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open '" + path.string() + "'");
  try {
    return read_model(in);
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<std::pair<Edit, uint64_t>> report_edits(const CognateModel& model, size_t top_k,
                                                    EditDirection direction) {
  std::vector<std::pair<Edit, uint64_t>> rows;
  for (const auto& [edit, count] : model.edits().sorted_entries())
    rows.emplace_back(direction == EditDirection::ab ? edit : edit.reversed(), count);
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second > y.second;
    return x.first < y.first;
  });
  if (rows.size() > top_k) rows.resize(top_k);
  return rows;
}

void write_edit_report(std::ostream& out, const std::vector<std::pair<Edit, uint64_t>>& rows) {
  auto side = [](const UString& s) { return s.empty() ? std::string("ε") : u32_to_utf8(s); };
  for (const auto& [edit, count] : rows)
    out << side(edit.lhs) << '\t' << side(edit.rhs) << '\t' << count << '\n';
  if (!out) fail(ErrorCode::io, "write failed");
}

void validate_training_token(const UString& token) {
  if (token.find(kEditBoundary) != UString::npos)
    fail(ErrorCode::invalid_argument,
         "token contains the reserved character '|': " + u32_to_utf8(token));
  if (token.find(U"@@") != UString::npos)
    fail(ErrorCode::invalid_argument,
         "token contains the reserved joiner '@@': " + u32_to_utf8(token));
  for (char32_t c : token)
    if (is_space(c))
      fail(ErrorCode::invalid_argument, "token contains whitespace: " + u32_to_utf8(token));
}

WordCounts count_corpus_words(std::istream& in) {
  WordCounts counts;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    try {
      for (const auto& token : split_tokens(line)) {
        UString word = utf8_to_u32(token);
        validate_training_token(word);
        ++counts[std::move(word)];
      }
    } catch (const Error& e) {
      fail(e.code(), "line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (in.bad()) fail(ErrorCode::io, "read failed");
  return counts;
}

WordCounts read_word_counts(std::istream& in) {
  WordCounts counts;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      const auto fields = split_tabs(line);
      if (fields.size() != 2 || fields[0].empty())
        fail(ErrorCode::format, "expected word<TAB>count");
      UString word = utf8_to_u32(fields[0]);
      validate_training_token(word);
      counts[std::move(word)] += parse_count(fields[1]);
    } catch (const Error& e) {
      fail(e.code(), "line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (in.bad()) fail(ErrorCode::io, "read failed");
  return counts;
}

std::vector<CognatePair> read_cognate_pairs(std::istream& in) {
  std::vector<CognatePair> pairs;
  for (const auto& p : read_aligned_pairs(in)) pairs.push_back({p.word_a, p.word_b});
  return pairs;
}

}  // namespace cogmorf
