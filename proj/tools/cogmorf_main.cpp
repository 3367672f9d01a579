// cogmorf command-line tool. Everything goes through the C API in
// libcogmorf; this file only parses flags and streams lines.

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cogmorf/cogmorf.h"

namespace {

struct Failure {
  cmorf_status status;
  std::string message;
};

void check(cmorf_status status, const std::string& context = {}) {
  if (status == CMORF_OK) return;
  std::string msg = cmorf_last_error();
  if (!context.empty()) msg = context + ": " + msg;
  throw Failure{status, msg};
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { cmorf_string_free(p); }
};

using ModelPtr = std::unique_ptr<cmorf_model, decltype(&cmorf_model_free)>;

ModelPtr load(const std::string& path) {
  cmorf_model* m = nullptr;
  check(cmorf_model_load(path.c_str(), &m));
  return ModelPtr(m, cmorf_model_free);
}

// Feeds stdin to `fn` line by line; errors name the line.
template <typename F>
void stream_lines(F&& fn) {
  std::ios::sync_with_stdio(false);
  std::string line;
  size_t number = 0;
  while (std::getline(std::cin, line)) {
    ++number;
    OwnedString out;
    check(fn(line.c_str(), &out.p), "line " + std::to_string(number));
    std::cout << out.p << '\n';
  }
  if (std::cin.bad()) throw Failure{CMORF_ERR_IO, "failed reading standard input"};
  std::cout.flush();
  if (!std::cout) throw Failure{CMORF_ERR_IO, "failed writing standard output"};
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  for (char c : s) {
    if (c == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  if (!item.empty()) out.push_back(item);
  return out;
}

struct TrainOptions {
  std::string corpus_a, corpus_b, cognates, out, report;
  std::string edit_mode = "full";
  std::string dampening = "none";
  std::string corpus_format = "text";
  bool skip_missing = false;
  cmorf_train_params params{};
};

void add_training_flags(CLI::App* cmd, TrainOptions& o) {
  cmd->add_option("--alpha", o.params.alpha, "Corpus cost weight")->capture_default_str();
  cmd->add_option("--seed", o.params.seed, "Random seed")->capture_default_str();
  cmd->add_option("--max-epochs", o.params.max_epochs, "Epoch limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--convergence", o.params.convergence,
                  "Stop when the relative cost improvement of an epoch is below this")
      ->capture_default_str();
  cmd->add_option("--dampening", o.dampening, "Word count dampening")
      ->check(CLI::IsMember({"none", "log"}))
      ->capture_default_str();
  cmd->add_option("--corpus-format", o.corpus_format,
                  "text: tokenized sentences; counts: word<TAB>count")
      ->check(CLI::IsMember({"text", "counts"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Output model file")->required();
  cmd->add_option("--report", o.report, "Write the JSON training report here");
}

void run_training(TrainOptions& o, bool bilingual) {
  o.params.dampening = o.dampening == "log" ? CMORF_DAMPEN_LOG : CMORF_DAMPEN_NONE;
  o.params.edit_mode = o.edit_mode == "count-only" ? CMORF_EDIT_COUNT_ONLY : CMORF_EDIT_FULL;
  o.params.corpus_format = o.corpus_format == "counts" ? CMORF_CORPUS_COUNTS : CMORF_CORPUS_TEXT;
  o.params.skip_missing_pairs = o.skip_missing ? 1 : 0;

  cmorf_model* raw = nullptr;
  check(cmorf_model_train(o.corpus_a.c_str(),
                          bilingual ? o.corpus_b.c_str() : nullptr,
                          bilingual && !o.cognates.empty() ? o.cognates.c_str() : nullptr,
                          &o.params, &raw));
  ModelPtr model(raw, cmorf_model_free);
  check(cmorf_model_save(model.get(), o.out.c_str()));

  OwnedString report;
  check(cmorf_model_report_json(model.get(), &report.p));
  const auto j = nlohmann::json::parse(report.p);
  for (const auto& e : j["epochs"])
    std::cerr << "epoch " << e["epoch"] << "\tcost " << e["costs"]["total"].get<double>()
              << "\tmorphs " << e["types_a"] << "/" << e["types_b"] << "\tedits "
              << e["types_edits"] << '\n';
  if (!o.report.empty()) {
    std::FILE* f = std::fopen(o.report.c_str(), "wb");
    if (!f) throw Failure{CMORF_ERR_IO, "cannot open '" + o.report + "'"};
    const std::string text = j.dump(2) + "\n";
    const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
    if (std::fclose(f) != 0 || !ok) throw Failure{CMORF_ERR_IO, "failed writing report"};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bilingual cognate-aware morphological segmentation"};
  app.set_config("--config", "", "Read flags from a TOML/INI file (command line wins)");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cmorf_version()));

  // extract-cognates
  std::string pairs_in, cognates_out;
  uint64_t min_count = 2;
  size_t short_len = 4;
  auto* extract = app.add_subcommand("extract-cognates",
                                     "Filter aligned word pairs into a one-to-one cognate list");
  extract->add_option("--pairs", pairs_in, "TSV: word_a, word_b, count")->required();
  extract->add_option("--out", cognates_out, "Output TSV")->required();
  extract->add_option("--min-count", min_count, "Minimum alignment count")->capture_default_str();
  extract->add_option("--short-len", short_len, "Words up to this length must match exactly")
      ->capture_default_str();

  // train
  TrainOptions joint;
  cmorf_train_params_default(&joint.params);
  auto* train = app.add_subcommand("train", "Train a bilingual cognate model");
  train->add_option("--corpus-a", joint.corpus_a, "Language a corpus")->required();
  train->add_option("--corpus-b", joint.corpus_b, "Language b corpus")->required();
  train->add_option("--cognates", joint.cognates, "Cognate TSV from extract-cognates");
  train->add_option("--edit-weight", joint.params.edit_weight, "Weight of the edit costs")
      ->capture_default_str();
  train->add_option("--edit-mode", joint.edit_mode, "full | count-only")
      ->check(CLI::IsMember({"full", "count-only"}))
      ->capture_default_str();
  train->add_flag("--skip-missing-pairs", joint.skip_missing,
                  "Drop cognate pairs whose words do not occur in the corpora");
  add_training_flags(train, joint);

  // train-mono
  TrainOptions mono;
  cmorf_train_params_default(&mono.params);
  auto* train_mono = app.add_subcommand("train-mono", "Train a monolingual baseline model");
  train_mono->add_option("--corpus", mono.corpus_a, "Corpus")->required();
  add_training_flags(train_mono, mono);

  // segment
  std::string model_path, lang = "a", joiner = "@@";
  auto* segment = app.add_subcommand("segment", "Segment stdin with a trained model");
  segment->add_option("--model", model_path, "Model file")->required();
  segment->add_option("--lang", lang, "a | b")->check(CLI::IsMember({"a", "b"}))->capture_default_str();
  segment->add_option("--joiner", joiner, "Marker on non-final subwords")->capture_default_str();

  // segment-source
  std::string source_model, cognate_model;
  auto* segment_source = app.add_subcommand(
      "segment-source", "Segment source text, reusing cognate-model analyses of shared words");
  segment_source->add_option("--source-model", source_model, "Source model file")->required();
  segment_source->add_option("--cognate-model", cognate_model, "Cognate model file")->required();
  segment_source->add_option("--joiner", joiner, "Marker on non-final subwords")
      ->capture_default_str();

  // unjoin
  auto* unjoin = app.add_subcommand("unjoin", "Undo segmentation by removing joiners");
  unjoin->add_option("--joiner", joiner, "Marker on non-final subwords")->capture_default_str();

  // prep-tag
  std::string tag_lang, targets = "fi,et";
  auto* prep_tag = app.add_subcommand("prep-tag", "Prefix each line with a target-language tag");
  prep_tag->add_option("--lang", tag_lang, "Target language id")->required();
  prep_tag->add_option("--targets", targets, "Accepted language ids")->capture_default_str();

  // bpe-train / bpe-apply
  std::string counts_list, merges_path;
  size_t vocab = 0;
  auto* bpe_train = app.add_subcommand("bpe-train", "Train balanced BPE on per-language counts");
  bpe_train->add_option("--counts", counts_list, "Comma-separated word<TAB>count tables")
      ->required();
  bpe_train->add_option("--vocab", vocab, "Target vocabulary size")->required();
  bpe_train->add_option("--out", merges_path, "Output merge table")->required();

  auto* bpe_apply = app.add_subcommand("bpe-apply", "Apply a BPE merge table to stdin");
  bpe_apply->add_option("--merges", merges_path, "Merge table")->required();
  bpe_apply->add_option("--joiner", joiner, "Marker on non-final subwords")->capture_default_str();

  // report-edits
  size_t top = 30;
  std::string direction = "ab";
  auto* report = app.add_subcommand("report-edits", "List the most used edits of a model");
  report->add_option("--model", model_path, "Model file")->required();
  report->add_option("--top", top, "Number of edits")->capture_default_str();
  report->add_option("--direction", direction, "ab | ba")
      ->check(CLI::IsMember({"ab", "ba"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*extract) {
      size_t kept = 0;
      check(cmorf_extract_cognates(pairs_in.c_str(), cognates_out.c_str(), min_count, short_len,
                                   &kept));
      std::cerr << kept << " cognate pairs\n";
    } else if (*train) {
      run_training(joint, true);
    } else if (*train_mono) {
      run_training(mono, false);
    } else if (*segment) {
      auto model = load(model_path);
      const cmorf_lang l = lang == "b" ? CMORF_LANG_B : CMORF_LANG_A;
      stream_lines([&](const char* line, char** out) {
        return cmorf_segment_line(model.get(), l, joiner.c_str(), line, out);
      });
    } else if (*segment_source) {
      auto src = load(source_model);
      auto cog = load(cognate_model);
      stream_lines([&](const char* line, char** out) {
        return cmorf_segment_source_line(src.get(), cog.get(), joiner.c_str(), line, out);
      });
    } else if (*unjoin) {
      stream_lines([&](const char* line, char** out) {
        return cmorf_unjoin_line(joiner.c_str(), line, out);
      });
    } else if (*prep_tag) {
      stream_lines([&](const char* line, char** out) {
        return cmorf_prefix_tag(tag_lang.c_str(), targets.c_str(), line, out);
      });
    } else if (*bpe_train) {
      const auto paths = split_commas(counts_list);
      std::vector<const char*> cpaths;
      for (const auto& p : paths) cpaths.push_back(p.c_str());
      size_t merges = 0;
      int truncated = 0;
      check(cmorf_bpe_train(cpaths.data(), cpaths.size(), vocab, merges_path.c_str(), &merges,
                            &truncated));
      std::cerr << merges << " merges";
      if (truncated) std::cerr << " (warning: ran out of pairs before reaching the vocabulary size)";
      std::cerr << '\n';
    } else if (*bpe_apply) {
      cmorf_bpe* raw = nullptr;
      check(cmorf_bpe_load(merges_path.c_str(), &raw));
      std::unique_ptr<cmorf_bpe, decltype(&cmorf_bpe_free)> encoder(raw, cmorf_bpe_free);
      stream_lines([&](const char* line, char** out) {
        return cmorf_bpe_apply_line(encoder.get(), joiner.c_str(), line, out);
      });
    } else if (*report) {
      auto model = load(model_path);
      OwnedString text;
      check(cmorf_report_edits(model.get(), top, direction == "ba" ? 1 : 0, &text.p));
      std::cout << text.p;
    }
  } catch (const Failure& f) {
    const nlohmann::json err = {{"error", cmorf_status_name(f.status)}, {"message", f.message}};
    std::cerr << err.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    return static_cast<int>(f.status);
  }
  return 0;
}
