#ifndef PBWTIDX_H
#define PBWTIDX_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum PbwtStatus {
  PBWT_STATUS_OK = 0,
  PBWT_STATUS_NULL_POINTER = 1,
  PBWT_STATUS_INVALID_ARGUMENT = 2,
  PBWT_STATUS_UNKNOWN_CHARACTER = 3,
  PBWT_STATUS_INVALID_ALPHABET = 4,
  PBWT_STATUS_RAGGED_COLLECTION = 5,
  PBWT_STATUS_EMPTY_INPUT = 6,
  PBWT_STATUS_INDEX_OUT_OF_RANGE = 7,
  PBWT_STATUS_PERMUTATION_NOT_STORED = 8,
  PBWT_STATUS_PATTERN_OVERRUN = 9,
  PBWT_STATUS_INVALID_STRIDE = 10,
  PBWT_STATUS_MODE_MISMATCH = 11,
  PBWT_STATUS_FORMAT = 12,
  PBWT_STATUS_IO = 13,
  PBWT_STATUS_BUFFER_TOO_SMALL = 14,
  PBWT_STATUS_PANIC = 15,
} PbwtStatus;

// Which permutation columns a positional index keeps.
typedef enum PbwtPolicy {
  PBWT_POLICY_FULL = 0,
  // Every `stride`-th column; a stride of 0 picks ceil(lg n).
  PBWT_POLICY_SAMPLED = 1,
  PBWT_POLICY_NONE = 2,
} PbwtPolicy;

typedef enum PbwtStrategy {
  PBWT_STRATEGY_BINARY = 0,
  PBWT_STRATEGY_BACKWARD = 1,
  PBWT_STRATEGY_REBUILD = 2,
} PbwtStrategy;

// Opaque FM-index over a single text.
typedef struct PbwtFmIndex PbwtFmIndex;

// Opaque positional index.
typedef struct PbwtPositionalIndex PbwtPositionalIndex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null after a success.
// The pointer stays valid until the next call into this library on the same thread.
const char *pbwt_last_error_message(void);

// Builds a positional index from newline-separated strings of equal length.
// `alphabet` is a NUL-terminated ordered symbol string, or null for "ACGT".
//
// # Safety
// `data` must be valid for `len` reads; `out` must be writable.
enum PbwtStatus pbwt_positional_build(const uint8_t *data,
                                      size_t len,
                                      const char *alphabet,
                                      enum PbwtPolicy policy,
                                      size_t stride,
                                      struct PbwtPositionalIndex **out);

// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum PbwtStatus pbwt_positional_load(const char *path, struct PbwtPositionalIndex **out);

// Writes the index file; the byte count goes to `written` when it is not null.
//
// # Safety
// `index` must come from this library; `path` must be NUL-terminated.
enum PbwtStatus pbwt_positional_save(const struct PbwtPositionalIndex *index,
                                     const char *path,
                                     size_t *written);

// # Safety
// `index` must come from this library and not be used afterwards. Null is ignored.
void pbwt_positional_free(struct PbwtPositionalIndex *index);

// # Safety
// `index` must come from this library; the out-pointers must be writable.
enum PbwtStatus pbwt_positional_shape(const struct PbwtPositionalIndex *index,
                                      size_t *n_strings,
                                      size_t *string_len);

// Number of strings containing `pattern` at position `k`.
//
// # Safety
// `pattern` must be valid for `pattern_len` reads; `count` must be writable.
enum PbwtStatus pbwt_positional_count(const struct PbwtPositionalIndex *index,
                                      const uint8_t *pattern,
                                      size_t pattern_len,
                                      size_t k,
                                      enum PbwtStrategy strategy,
                                      size_t *count);

// Indexes of the strings containing `pattern` at position `k`, in sorted-suffix order.
//
// # Safety
// `pattern` must be valid for `pattern_len` reads, `buf` for `cap` writes, and
// `count` must be writable.
enum PbwtStatus pbwt_positional_query(const struct PbwtPositionalIndex *index,
                                      const uint8_t *pattern,
                                      size_t pattern_len,
                                      size_t k,
                                      enum PbwtStrategy strategy,
                                      size_t *buf,
                                      size_t cap,
                                      size_t *count);

// Builds an FM-index over `text`, sampling text positions that are multiples
// of `sa_stride` (0 picks ceil(lg(len + 1))).
//
// # Safety
// `text` must be valid for `len` reads; `out` must be writable.
enum PbwtStatus pbwt_fm_build(const uint8_t *text,
                              size_t len,
                              const char *alphabet,
                              size_t sa_stride,
                              struct PbwtFmIndex **out);

// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum PbwtStatus pbwt_fm_load(const char *path, struct PbwtFmIndex **out);

// # Safety
// `index` must come from this library; `path` must be NUL-terminated.
enum PbwtStatus pbwt_fm_save(const struct PbwtFmIndex *index, const char *path, size_t *written);

// # Safety
// `index` must come from this library and not be used afterwards. Null is ignored.
void pbwt_fm_free(struct PbwtFmIndex *index);

// Number of occurrences of `pattern` in the text.
//
// # Safety
// `pattern` must be valid for `pattern_len` reads; `count` must be writable.
enum PbwtStatus pbwt_fm_count(const struct PbwtFmIndex *index,
                              const uint8_t *pattern,
                              size_t pattern_len,
                              size_t *count);

// Start positions of `pattern` in the text, ascending.
//
// # Safety
// `pattern` must be valid for `pattern_len` reads, `buf` for `cap` writes, and
// `count` must be writable.
enum PbwtStatus pbwt_fm_locate(const struct PbwtFmIndex *index,
                               const uint8_t *pattern,
                               size_t pattern_len,
                               size_t *buf,
                               size_t cap,
                               size_t *count);

// Copies the BWT (text length + 1 bytes, including the sentinel) into `buf`.
//
// # Safety
// `buf` must be valid for `cap` writes and `len` must be writable.
enum PbwtStatus pbwt_fm_bwt(const struct PbwtFmIndex *index, uint8_t *buf, size_t cap, size_t *len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PBWTIDX_H */
