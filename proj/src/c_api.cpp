#include "cogmorf/cogmorf.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "cogmorf/bpe.hpp"
#include "cogmorf/cognates.hpp"
#include "cogmorf/error.hpp"
#include "cogmorf/model_io.hpp"
#include "cogmorf/segmenter.hpp"
#include "cogmorf/trainer.hpp"

using namespace cogmorf;

struct cmorf_model {
  CognateModel model;
  ModelInfo info;
  std::optional<TrainingReport> report;
};

struct cmorf_bpe {
  bpe::Encoder encoder;
};

namespace {

thread_local std::string last_error;

cmorf_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return CMORF_ERR_INVALID_ARGUMENT;
    case ErrorCode::io: return CMORF_ERR_IO;
    case ErrorCode::format: return CMORF_ERR_FORMAT;
    case ErrorCode::contract: return CMORF_ERR_CONTRACT;
    case ErrorCode::bookkeeping: return CMORF_ERR_BOOKKEEPING;
  }
  return CMORF_ERR_INTERNAL;
}

template <typename F>
cmorf_status guarded(F&& body) {
  try {
    body();
    return CMORF_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return CMORF_ERR_INTERNAL;
}

void require(const void* p, const char* name) {
  if (!p) fail(ErrorCode::invalid_argument, std::string(name) + " must not be null");
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::ifstream open_input(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, std::string("cannot open '") + path + "'");
  return in;
}

template <typename F>
auto read_file(const char* path, F&& reader) {
  auto in = open_input(path);
  try {
    return reader(in);
  } catch (const Error& e) {
    fail(e.code(), std::string(path) + ": " + e.what());
  }
}

WordCounts read_corpus(const char* path, cmorf_corpus_format format) {
  return read_file(path, [format](std::istream& in) {
    return format == CMORF_CORPUS_COUNTS ? read_word_counts(in) : count_corpus_words(in);
  });
}

nlohmann::json costs_json(const CostBreakdown& c) {
  return {{"total", c.total},         {"lexicon_a", c.lexicon_a}, {"corpus_a", c.corpus_a},
          {"lexicon_b", c.lexicon_b}, {"corpus_b", c.corpus_b},   {"lexicon_edits", c.lexicon_e},
          {"corpus_edits", c.corpus_e}};
}

}  // namespace

extern "C" {

const char* cmorf_version(void) { return "1.0.0"; }

const char* cmorf_last_error(void) { return last_error.c_str(); }

const char* cmorf_status_name(cmorf_status status) {
  switch (status) {
    case CMORF_OK: return "ok";
    case CMORF_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case CMORF_ERR_IO: return "io";
    case CMORF_ERR_FORMAT: return "format";
    case CMORF_ERR_CONTRACT: return "contract";
    case CMORF_ERR_BOOKKEEPING: return "bookkeeping";
    case CMORF_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void cmorf_string_free(char* s) { std::free(s); }

void cmorf_train_params_default(cmorf_train_params* params) {
  if (!params) return;
  const TrainingParams defaults;
  params->alpha = defaults.alpha;
  params->edit_weight = defaults.edit_weight;
  params->max_epochs = defaults.max_epochs;
  params->convergence = defaults.convergence_threshold;
  params->seed = defaults.seed;
  params->dampening = CMORF_DAMPEN_NONE;
  params->edit_mode = CMORF_EDIT_FULL;
  params->corpus_format = CMORF_CORPUS_TEXT;
  params->skip_missing_pairs = 0;
}

cmorf_status cmorf_model_train(const char* corpus_a, const char* corpus_b,
                               const char* cognates, const cmorf_train_params* params,
                               cmorf_model** out) {
  return guarded([&] {
    require(corpus_a, "corpus_a");
    require(params, "params");
    require(out, "out");
    *out = nullptr;
    if (cognates && !corpus_b)
      fail(ErrorCode::invalid_argument, "cognate pairs need a second corpus");
    if (!(params->alpha > 0) || !(params->edit_weight > 0))
      fail(ErrorCode::invalid_argument, "alpha and edit weight must be positive");
    if (!(params->convergence >= 0))
      fail(ErrorCode::invalid_argument, "convergence threshold must be non-negative");

    TrainingParams tp;
    tp.alpha = params->alpha;
    tp.edit_weight = params->edit_weight;
    tp.max_epochs = params->max_epochs;
    tp.convergence_threshold = params->convergence;
    tp.seed = params->seed;
    tp.dampening = params->dampening == CMORF_DAMPEN_LOG ? Dampening::log : Dampening::none;
    tp.edit_mode = params->edit_mode == CMORF_EDIT_COUNT_ONLY ? EditMode::count_only
                                                              : EditMode::full;

    const WordCounts a = read_corpus(corpus_a, params->corpus_format);
    const WordCounts b = corpus_b ? read_corpus(corpus_b, params->corpus_format) : WordCounts{};
    std::vector<CognatePair> pairs;
    if (cognates) {
      pairs = read_file(cognates, [](std::istream& in) { return read_cognate_pairs(in); });
      if (params->skip_missing_pairs)
        std::erase_if(pairs, [&](const CognatePair& p) {
          return !a.count(p.word_a) || !b.count(p.word_b);
        });
    }

    auto handle = std::make_unique<cmorf_model>(
        cmorf_model{initialize(a, b, pairs, tp), ModelInfo{tp.seed, tp.dampening}, std::nullopt});
    handle->report = train(handle->model, tp);
    *out = handle.release();
  });
}

cmorf_status cmorf_model_load(const char* path, cmorf_model** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    auto loaded = load_model(path);
    *out = new cmorf_model{std::move(loaded.model), loaded.info, std::nullopt};
  });
}

cmorf_status cmorf_model_save(const cmorf_model* model, const char* path) {
  return guarded([&] {
    require(model, "model");
    require(path, "path");
    save_model(path, model->model, model->info);
  });
}

void cmorf_model_free(cmorf_model* model) { delete model; }

cmorf_status cmorf_model_total_cost(const cmorf_model* model, double* cost) {
  return guarded([&] {
    require(model, "model");
    require(cost, "cost");
    *cost = model->model.total_cost();
  });
}

cmorf_status cmorf_model_verify(const cmorf_model* model, double* cost) {
  return guarded([&] {
    require(model, "model");
    const double c = model->model.recompute_from_scratch();
    if (cost) *cost = c;
  });
}

cmorf_status cmorf_model_report_json(const cmorf_model* model, char** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    nlohmann::json j = nlohmann::json::object();
    if (model->report) {
      const auto& r = *model->report;
      j["epochs_run"] = r.epochs_run;
      j["converged"] = r.converged;
      auto& epochs = j["epochs"] = nlohmann::json::array();
      for (const auto& e : r.epochs)
        epochs.push_back({{"epoch", e.epoch},
                          {"costs", costs_json(e.costs)},
                          {"types_a", e.types_a},
                          {"types_b", e.types_b},
                          {"types_edits", e.types_edits}});
    }
    *out = copy_out(j.dump());
  });
}

cmorf_status cmorf_segment_line(const cmorf_model* model, cmorf_lang lang, const char* joiner,
                                const char* line, char** out) {
  return guarded([&] {
    require(model, "model");
    require(line, "line");
    require(out, "out");
    SegmenterConfig config;
    if (joiner) config.joiner = joiner;
    const Side side = lang == CMORF_LANG_B ? Side::b : Side::a;
    *out = copy_out(
        segment_line(line, config.joiner, model_segmenter(model->model, side, config)));
  });
}

cmorf_status cmorf_segment_source_line(const cmorf_model* source_model,
                                       const cmorf_model* cognate_model, const char* joiner,
                                       const char* line, char** out) {
  return guarded([&] {
    require(source_model, "source_model");
    require(cognate_model, "cognate_model");
    require(line, "line");
    require(out, "out");
    SegmenterConfig config;
    if (joiner) config.joiner = joiner;
    *out = copy_out(segment_line(
        line, config.joiner, source_segmenter(source_model->model, cognate_model->model, config)));
  });
}

cmorf_status cmorf_unjoin_line(const char* joiner, const char* line, char** out) {
  return guarded([&] {
    require(joiner, "joiner");
    require(line, "line");
    require(out, "out");
    *out = copy_out(unjoin_line(line, joiner));
  });
}

cmorf_status cmorf_prefix_tag(const char* lang, const char* targets, const char* line,
                              char** out) {
  return guarded([&] {
    require(lang, "lang");
    require(targets, "targets");
    require(line, "line");
    require(out, "out");
    std::vector<std::string> accepted;
    std::stringstream ss(targets);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) accepted.push_back(item);
    *out = copy_out(prefix_target_tag(line, lang, accepted));
  });
}

cmorf_status cmorf_report_edits(const cmorf_model* model, size_t top_k, int direction,
                                char** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    std::ostringstream os;
    write_edit_report(os, report_edits(model->model, top_k,
                                       direction ? EditDirection::ba : EditDirection::ab));
    *out = copy_out(os.str());
  });
}

cmorf_status cmorf_extract_cognates(const char* pairs_path, const char* out_path,
                                    uint64_t min_count, size_t short_length, size_t* kept) {
  return guarded([&] {
    require(pairs_path, "pairs_path");
    require(out_path, "out_path");
    const auto pairs =
        read_file(pairs_path, [](std::istream& in) { return read_aligned_pairs(in); });
    CognateFilter filter;
    filter.min_count = min_count;
    filter.short_length = short_length;
    const auto list = extract(pairs, filter);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(ErrorCode::io, std::string("cannot open '") + out_path + "' for writing");
    write_cognates(out, list);
    if (kept) *kept = list.size();
  });
}

cmorf_status cmorf_bpe_train(const char* const* count_paths, size_t n, size_t vocab_size,
                             const char* out_path, size_t* merges, int* truncated) {
  return guarded([&] {
    require(count_paths, "count_paths");
    require(out_path, "out_path");
    std::vector<bpe::WordTable> tables;
    for (size_t i = 0; i < n; ++i) {
      require(count_paths[i], "count path");
      tables.push_back(
          read_file(count_paths[i], [](std::istream& in) { return bpe::read_word_table(in); }));
    }
    const auto table = bpe::train(bpe::balance_counts(tables), vocab_size);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail(ErrorCode::io, std::string("cannot open '") + out_path + "' for writing");
    bpe::write_merges(out, table);
    if (merges) *merges = table.merges.size();
    if (truncated) *truncated = table.truncated ? 1 : 0;
  });
}

cmorf_status cmorf_bpe_load(const char* merges_path, cmorf_bpe** out) {
  return guarded([&] {
    require(merges_path, "merges_path");
    require(out, "out");
    *out = nullptr;
    const auto table =
        read_file(merges_path, [](std::istream& in) { return bpe::read_merges(in); });
    *out = new cmorf_bpe{bpe::Encoder(table)};
  });
}

void cmorf_bpe_free(cmorf_bpe* bpe) { delete bpe; }

cmorf_status cmorf_bpe_apply_line(const cmorf_bpe* handle, const char* joiner, const char* line,
                                  char** out) {
  return guarded([&] {
    require(handle, "bpe");
    require(line, "line");
    require(out, "out");
    const std::string j = joiner ? joiner : "@@";
    *out = copy_out(segment_line(line, j, [handle](std::string_view token) {
      return handle->encoder.apply(token);
    }));
  });
}

}  // extern "C"
