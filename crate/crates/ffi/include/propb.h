#ifndef PROPB_H
#define PROPB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum PropbStatus {
  PROPB_STATUS_OK = 0,
  PROPB_STATUS_NULL_POINTER = 1,
  PROPB_STATUS_INVALID_ARGUMENT = 2,
  PROPB_STATUS_PARSE_ERROR = 3,
  PROPB_STATUS_LIMIT_EXCEEDED = 4,
  PROPB_STATUS_CHECK_FAILED = 5,
  PROPB_STATUS_PANIC = 6,
} PropbStatus;

/**
 * Opaque hypergraph handle.
 */
typedef struct PropbHypergraph PropbHypergraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null.
 */
const char *propb_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void propb_string_free(char *s);

/**
 * # Safety
 * `h` must be null or a handle returned by this library, not yet freed.
 */
void propb_hypergraph_free(struct PropbHypergraph *h);

/**
 * Builds a hypergraph on `v` vertices from `edge_count` edges laid out back
 * to back in `members`; edge `i` has `edge_sizes[i]` entries. Duplicate
 * edges collapse.
 *
 * # Safety
 * `members` must point to `Σ edge_sizes[i]` readable values and `edge_sizes`
 * to `edge_count` (either may be null when `edge_count` is 0); `out` must be writable.
 */
enum PropbStatus propb_hypergraph_new(size_t v,
                                      const uint32_t *members,
                                      const size_t *edge_sizes,
                                      size_t edge_count,
                                      struct PropbHypergraph **out);

/**
 * Named construction: `triangle`, `fano`, `seymour-toft`, `h4`, `h8`, `paper-example`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum PropbStatus propb_hypergraph_construct(const char *name, struct PropbHypergraph **out);

/**
 * Parses the `p <v> <m>` text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum PropbStatus propb_hypergraph_parse(const char *text, struct PropbHypergraph **out);

/**
 * Canonical text serialization; free the result with [`propb_string_free`].
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum PropbStatus propb_hypergraph_serialize(const struct PropbHypergraph *h, char **out);

/**
 * # Safety
 * `h` must be a live handle; `vertices` and `edges` must be writable or null.
 */
enum PropbStatus propb_hypergraph_shape(const struct PropbHypergraph *h,
                                        size_t *vertices,
                                        size_t *edges);

/**
 * `q(H) = Σ 2^-|e|` as exact text `numerator/2^exponent` plus an f64 approximation.
 *
 * # Safety
 * `h` must be a live handle; `exact` and `approx` must be writable or null.
 */
enum PropbStatus propb_hypergraph_q(const struct PropbHypergraph *h, char **exact, double *approx);

/**
 * Edge-set union of two hypergraphs on the same vertex count.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum PropbStatus propb_hypergraph_union(const struct PropbHypergraph *a,
                                        const struct PropbHypergraph *b,
                                        struct PropbHypergraph **out);

/**
 * Decides 2-colourability. When colourable and `witness` is non-null, writes
 * one byte per vertex (1 red, 0 blue); `witness_len` must be at least the
 * vertex count.
 *
 * # Safety
 * `h` must be a live handle; `colourable` must be writable; `witness` must be
 * null or point to `witness_len` writable bytes.
 */
enum PropbStatus propb_is_two_colourable(const struct PropbHypergraph *h,
                                         bool *colourable,
                                         uint8_t *witness,
                                         size_t witness_len);

/**
 * Exact number of proper colourings as decimal text. Fails with
 * `PROPB_STATUS_LIMIT_EXCEEDED` above the exhaustive vertex limit.
 *
 * # Safety
 * `h` must be a live handle; `count` must be writable.
 */
enum PropbStatus propb_count_proper(const struct PropbHypergraph *h, char **count);

/**
 * Red classes of one member per opposite pair of proper colourings, as edges.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum PropbStatus propb_derive_h8(const struct PropbHypergraph *h, struct PropbHypergraph **out);

/**
 * Runs the sampling-and-repair construction. `report` (optional) receives
 * the text report. A strict run that exhausts its retries returns
 * `PROPB_STATUS_CHECK_FAILED`.
 *
 * # Safety
 * `out` must be writable; `report` must be writable or null.
 */
enum PropbStatus propb_run_alteration(uint64_t n,
                                      uint64_t seed,
                                      uint32_t max_retries,
                                      bool strict,
                                      struct PropbHypergraph **out,
                                      char **report);

/**
 * Runs the ten checks on the 16-vertex example.
 *
 * # Safety
 * `all_passed` must be writable; `report` must be writable or null.
 */
enum PropbStatus propb_verify_paper(bool *all_passed, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PROPB_H */
