#ifndef YF_LATTICE_H
#define YF_LATTICE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum YfStatus {
  YF_STATUS_OK = 0,
  YF_STATUS_NULL_POINTER = 1,
  YF_STATUS_INVALID_UTF8 = 2,
  YF_STATUS_INVALID_ARGUMENT = 3,
  YF_STATUS_OUT_OF_RANGE = 4,
  YF_STATUS_PANIC = 5,
} YfStatus;

// Masses of a central measure over one level.
typedef struct YfDistribution YfDistribution;

// A magic table with exact entries.
typedef struct YfMagicTable YfMagicTable;

// A finite word over {1, 2}.
typedef struct YfWord YfWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code. Never free the result.
const char *yf_status_message(enum YfStatus status);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a pointer obtained from this library and not yet freed.
void yf_string_free(char *s);

// Parses a word such as `"21221"`; `"eps"` or `""` is the empty word.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum YfStatus yf_word_parse(const char *text, struct YfWord **out);

// # Safety
// `word` must be null or a handle from [`yf_word_parse`] not yet freed.
void yf_word_free(struct YfWord *word);

// Digit sum of the word; 0 for a null handle.
//
// # Safety
// `word` must be null or a live handle.
size_t yf_word_rank(const struct YfWord *word);

// Number of digits; 0 for a null handle.
//
// # Safety
// `word` must be null or a live handle.
size_t yf_word_len(const struct YfWord *word);

// Number of 2s; 0 for a null handle.
//
// # Safety
// `word` must be null or a live handle.
size_t yf_word_twos(const struct YfWord *word);

// `f(x, y, z)` as a rational string.
//
// # Safety
// `x` must be a live handle; `out` must be writable.
enum YfStatus yf_f(const struct YfWord *x, size_t y, size_t z, char **out);

// Number of descending paths from `y` down to `x`, as a decimal string.
// `use_dp` selects level-by-level counting instead of the closed formula.
//
// # Safety
// `x` and `y` must be live handles; `out` must be writable.
enum YfStatus yf_dcount(const struct YfWord *x, const struct YfWord *y, bool use_dp, char **out);

// `μ_{w,β}(v)` for `w = 1^∞ · core`.
//
// # Safety
// `core` and `beta` must be NUL-terminated; `v` a live handle; `out` writable.
enum YfStatus yf_mu(const char *core, const char *beta, const struct YfWord *v, char **out);

// Exact masses of `μ_{w,β}` over level `n`.
//
// # Safety
// `core` and `beta` must be NUL-terminated; `out` writable.
enum YfStatus yf_distribution_new(const char *core,
                                  const char *beta,
                                  size_t n,
                                  struct YfDistribution **out);

// Number of words in the distribution; 0 for a null handle.
//
// # Safety
// `dist` must be null or a live handle.
size_t yf_distribution_len(const struct YfDistribution *dist);

// Word and mass at position `index` (level order). Either out-pointer may
// be null to skip it.
//
// # Safety
// `dist` must be a live handle; non-null out-pointers must be writable.
enum YfStatus yf_distribution_get(const struct YfDistribution *dist,
                                  size_t index,
                                  char **word_out,
                                  char **mass_out);

// # Safety
// `dist` must be null or a handle not yet freed.
void yf_distribution_free(struct YfDistribution *dist);

// The table `T_{w,β,n}`, rows in level order and columns `y = 0..=n`.
//
// # Safety
// `core` and `beta` must be NUL-terminated; `out` writable.
enum YfStatus yf_magic_new(const char *core, const char *beta, size_t n, struct YfMagicTable **out);

// Number of rows; 0 for a null handle.
//
// # Safety
// `table` must be null or a live handle.
size_t yf_magic_rows(const struct YfMagicTable *table);

// Entry at (`row`, `y`) as a rational string.
//
// # Safety
// `table` must be a live handle; `out` writable.
enum YfStatus yf_magic_entry(const struct YfMagicTable *table, size_t row, size_t y, char **out);

// # Safety
// `table` must be null or a handle not yet freed.
void yf_magic_free(struct YfMagicTable *table);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* YF_LATTICE_H */
