#ifndef LEXMATCH_H
#define LEXMATCH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum LmStatus {
  LM_STATUS_OK = 0,
  LM_STATUS_NULL_POINTER = 1,
  LM_STATUS_INVALID_ARGUMENT = 2,
  LM_STATUS_OVERFLOW = 3,
  LM_STATUS_BUDGET_EXCEEDED = 4,
  LM_STATUS_COUNTEREXAMPLE = 5,
  LM_STATUS_BUFFER_TOO_SMALL = 6,
  LM_STATUS_PANIC = 7,
} LmStatus;

typedef struct LmDiagram LmDiagram;

typedef struct LmGraph LmGraph;

typedef struct LmMatchingVector LmMatchingVector;

/**
 * Copies the calling thread's last error message into `buf`.
 *
 * Returns `LM_STATUS_BUFFER_TOO_SMALL` (with `*needed` set) when `buf` is
 * too short, and writes an empty string when there is no error.
 *
 * # Safety
 * `buf` must be writable for `len` bytes; `needed` may be null.
 */
enum LmStatus lm_last_error(char *buf, size_t len, size_t *needed);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void lm_string_free(char *s);

/**
 * Lex graph on `n` vertices with the first `e` pairs.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LmStatus lm_graph_lex(size_t n, size_t e, struct LmGraph **out);

/**
 * Colex graph on `n` vertices with the first `e` pairs.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum LmStatus lm_graph_colex(size_t n, size_t e, struct LmGraph **out);

/**
 * Graph on `[n]` from `count` edges stored as `endpoints[2i], endpoints[2i+1]`.
 *
 * # Safety
 * `endpoints` must hold `2 * count` values (may be null when `count` is 0);
 * `out` must be a valid pointer.
 */
enum LmStatus lm_graph_from_edges(size_t n,
                                  const size_t *endpoints,
                                  size_t count,
                                  struct LmGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library, not yet freed.
 */
void lm_graph_free(struct LmGraph *g);

/**
 * # Safety
 * `g` must be a live handle.
 */
size_t lm_graph_vertex_count(const struct LmGraph *g);

/**
 * # Safety
 * `g` must be a live handle.
 */
size_t lm_graph_edge_count(const struct LmGraph *g);

/**
 * Writes the degree of vertex `v` (1-based) to `out`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum LmStatus lm_graph_degree(const struct LmGraph *g, size_t v, size_t *out);

/**
 * Matching vector `(m_0, m_1, ...)` of `g`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum LmStatus lm_matching_vector(const struct LmGraph *g, struct LmMatchingVector **out);

/**
 * # Safety
 * `mv` must be null or a live handle.
 */
void lm_matching_vector_free(struct LmMatchingVector *mv);

/**
 * Number of coefficients.
 *
 * # Safety
 * `mv` must be a live handle.
 */
size_t lm_matching_vector_len(const struct LmMatchingVector *mv);

/**
 * `m_k` as a `uint64_t`; `LM_STATUS_OVERFLOW` if it does not fit.
 *
 * # Safety
 * `mv` must be a live handle and `out` a valid pointer.
 */
enum LmStatus lm_matching_vector_get_u64(const struct LmMatchingVector *mv,
                                         size_t k,
                                         uint64_t *out);

/**
 * `m_k` as a decimal string copied into `buf`.
 *
 * # Safety
 * `mv` must be a live handle; `buf` writable for `len` bytes; `needed` may be null.
 */
enum LmStatus lm_matching_vector_get_decimal(const struct LmMatchingVector *mv,
                                             size_t k,
                                             char *buf,
                                             size_t len,
                                             size_t *needed);

/**
 * Total number of matchings as a decimal string copied into `buf`.
 *
 * # Safety
 * As for [`lm_matching_vector_get_decimal`].
 */
enum LmStatus lm_matching_vector_total_decimal(const struct LmMatchingVector *mv,
                                               char *buf,
                                               size_t len,
                                               size_t *needed);

/**
 * Parses `"l r : a,b,c"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LmStatus lm_diagram_parse(const char *text, struct LmDiagram **out);

/**
 * # Safety
 * `d` must be null or a live handle.
 */
void lm_diagram_free(struct LmDiagram *d);

/**
 * Text form of `d`, released with [`lm_string_free`].
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum LmStatus lm_diagram_to_string(const struct LmDiagram *d, char **out);

/**
 * Rook numbers of `d`.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum LmStatus lm_rook_vector(const struct LmDiagram *d, struct LmMatchingVector **out);

/**
 * Drives `d` to the lex diagram. `end` receives the final diagram and
 * `trace_json` (if non-null) the move list as JSON.
 *
 * # Safety
 * `d` must be a live handle, `end` a valid pointer, `trace_json` null or valid.
 */
enum LmStatus lm_diagram_minimize(const struct LmDiagram *d,
                                  struct LmDiagram **end,
                                  char **trace_json);

/**
 * Exhaustive sweep of all graphs on `[n]` with `e` edges. The JSON report
 * goes to `report_json`; the status is `LM_STATUS_COUNTEREXAMPLE` if some
 * graph beats both lex and colex. `max_instances == 0` uses the default cap,
 * `jobs == 0` all cores.
 *
 * # Safety
 * `report_json` must be a valid pointer.
 */
enum LmStatus lm_verify_general(size_t n,
                                size_t e,
                                uint64_t max_instances,
                                size_t jobs,
                                char **report_json);

#endif  /* LEXMATCH_H */
