/*
 * cogmorf C API
 *
 * Opaque handles and status codes over the C++ library. Every function
 * returns a cmorf_status; on failure a message for the calling thread is
 * available from cmorf_last_error() until the next failing call. Strings
 * returned through char** out-parameters are owned by the caller and must
 * be released with cmorf_string_free().
 */
#ifndef COGMORF_H
#define COGMORF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define CMORF_API __declspec(dllexport)
#else
#  define CMORF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cmorf_status {
  CMORF_OK = 0,
  CMORF_ERR_INVALID_ARGUMENT = 1,
  CMORF_ERR_IO = 2,
  CMORF_ERR_FORMAT = 3,
  CMORF_ERR_CONTRACT = 4,
  CMORF_ERR_BOOKKEEPING = 5,
  CMORF_ERR_INTERNAL = 6
} cmorf_status;

typedef enum cmorf_edit_mode { CMORF_EDIT_FULL = 0, CMORF_EDIT_COUNT_ONLY = 1 } cmorf_edit_mode;
typedef enum cmorf_dampening { CMORF_DAMPEN_NONE = 0, CMORF_DAMPEN_LOG = 1 } cmorf_dampening;
typedef enum cmorf_corpus_format { CMORF_CORPUS_TEXT = 0, CMORF_CORPUS_COUNTS = 1 } cmorf_corpus_format;
typedef enum cmorf_lang { CMORF_LANG_A = 0, CMORF_LANG_B = 1 } cmorf_lang;

typedef struct cmorf_model cmorf_model;
typedef struct cmorf_bpe cmorf_bpe;

typedef struct cmorf_train_params {
  double alpha;
  double edit_weight;
  int max_epochs;
  double convergence;
  uint64_t seed;
  cmorf_dampening dampening;
  cmorf_edit_mode edit_mode;
  cmorf_corpus_format corpus_format;
  int skip_missing_pairs; /* drop cognate pairs whose words are not in the corpora */
} cmorf_train_params;

CMORF_API const char* cmorf_version(void);
CMORF_API const char* cmorf_last_error(void);
CMORF_API const char* cmorf_status_name(cmorf_status status);
CMORF_API void cmorf_string_free(char* s);

CMORF_API void cmorf_train_params_default(cmorf_train_params* params);

/* corpus_b and cognates may be NULL (monolingual training). */
CMORF_API cmorf_status cmorf_model_train(const char* corpus_a, const char* corpus_b,
                                         const char* cognates,
                                         const cmorf_train_params* params,
                                         cmorf_model** out);
CMORF_API cmorf_status cmorf_model_load(const char* path, cmorf_model** out);
CMORF_API cmorf_status cmorf_model_save(const cmorf_model* model, const char* path);
CMORF_API void cmorf_model_free(cmorf_model* model);

CMORF_API cmorf_status cmorf_model_total_cost(const cmorf_model* model, double* cost);
/* Recomputes the cost from the analyses; fails if cached state disagrees. */
CMORF_API cmorf_status cmorf_model_verify(const cmorf_model* model, double* cost);
/* JSON training report (empty object for loaded models). */
CMORF_API cmorf_status cmorf_model_report_json(const cmorf_model* model, char** out);

/* Segments one whitespace-tokenized line; subwords joined by joiner + ' '. */
CMORF_API cmorf_status cmorf_segment_line(const cmorf_model* model, cmorf_lang lang,
                                          const char* joiner, const char* line, char** out);
/* Source-side segmentation: stored cognate-model analyses win over the
   source model. */
CMORF_API cmorf_status cmorf_segment_source_line(const cmorf_model* source_model,
                                                 const cmorf_model* cognate_model,
                                                 const char* joiner, const char* line,
                                                 char** out);
CMORF_API cmorf_status cmorf_unjoin_line(const char* joiner, const char* line, char** out);

/* targets: comma-separated list of accepted language ids. */
CMORF_API cmorf_status cmorf_prefix_tag(const char* lang, const char* targets, const char* line,
                                        char** out);

/* direction: 0 = a->b, 1 = b->a. Output: lhs<TAB>rhs<TAB>count lines. */
CMORF_API cmorf_status cmorf_report_edits(const cmorf_model* model, size_t top_k, int direction,
                                          char** out);

CMORF_API cmorf_status cmorf_extract_cognates(const char* pairs_path, const char* out_path,
                                              uint64_t min_count, size_t short_length,
                                              size_t* kept);

/* count_paths: n word<TAB>count tables, one per language. */
CMORF_API cmorf_status cmorf_bpe_train(const char* const* count_paths, size_t n,
                                       size_t vocab_size, const char* out_path,
                                       size_t* merges, int* truncated);
CMORF_API cmorf_status cmorf_bpe_load(const char* merges_path, cmorf_bpe** out);
CMORF_API void cmorf_bpe_free(cmorf_bpe* bpe);
CMORF_API cmorf_status cmorf_bpe_apply_line(const cmorf_bpe* bpe, const char* joiner,
                                            const char* line, char** out);

#ifdef __cplusplus
}
#endif

#endif /* COGMORF_H */
