/* C interface for the dsr graph-spectra library. */

#ifndef DSR_H
#define DSR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum DsrStatus {
  DSR_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  DSR_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  DSR_STATUS_INVALID_UTF8 = 2,
  /**
   * The input was not a valid graph6 line.
   */
  DSR_STATUS_BAD_GRAPH6 = 3,
  /**
   * The operation requires a connected graph.
   */
  DSR_STATUS_DISCONNECTED = 4,
  /**
   * A numeric parameter is outside its domain.
   */
  DSR_STATUS_INVALID_PARAMETER = 5,
  /**
   * The graph order exceeds the cap of the requested operation.
   */
  DSR_STATUS_CAP_EXCEEDED = 6,
  /**
   * The eigensolver did not converge.
   */
  DSR_STATUS_NO_CONVERGENCE = 7,
  /**
   * The output buffer is too small.
   */
  DSR_STATUS_BUFFER_TOO_SMALL = 8,
  /**
   * An internal invariant failed.
   */
  DSR_STATUS_INTERNAL_ERROR = 99,
} DsrStatus;

/**
 * Opaque handle to an immutable graph.
 */
typedef struct DsrGraph DsrGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse one graph6 line into a fresh handle. The caller owns the handle
 * and must release it with `dsr_graph_free`.
 *
 * # Safety
 * `line` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum DsrStatus dsr_graph_parse_graph6(const char *line, struct DsrGraph **out);

/**
 * Build the complete graph on `k` vertices.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum DsrStatus dsr_graph_clique(uint32_t k, struct DsrGraph **out);

/**
 * Release a handle returned by this library. Null is a no-op.
 *
 * # Safety
 * `graph` must be null or a pointer obtained from this library that has
 * not been freed yet.
 */
void dsr_graph_free(struct DsrGraph *graph);

/**
 * # Safety
 * `graph` and `out` must be valid pointers.
 */
enum DsrStatus dsr_graph_order(const struct DsrGraph *graph, uint32_t *out);

/**
 * # Safety
 * `graph` and `out` must be valid pointers.
 */
enum DsrStatus dsr_graph_edge_count(const struct DsrGraph *graph, uint32_t *out);

/**
 * # Safety
 * `graph` and `out` must be valid pointers.
 */
enum DsrStatus dsr_graph_min_degree(const struct DsrGraph *graph, uint32_t *out);

/**
 * graph6 encoding of the handle's labeling. `written` receives the length
 * including the NUL terminator, also on `BufferTooSmall`.
 *
 * # Safety
 * Pointer arguments must be valid; `buffer` must have `capacity` bytes.
 */
enum DsrStatus dsr_graph_graph6(const struct DsrGraph *graph,
                                char *buffer,
                                size_t capacity,
                                size_t *written);

/**
 * Distance spectral radius via power iteration at residual tolerance
 * `tol` (pass 0 for the default 1e-12).
 *
 * # Safety
 * `graph` and `out` must be valid pointers.
 */
enum DsrStatus dsr_lambda1(const struct DsrGraph *graph, double tol, double *out);

/**
 * All distance eigenvalues, descending, written into `out`; `written`
 * receives the eigenvalue count (the graph order).
 *
 * # Safety
 * Pointer arguments must be valid; `out` must have room for `capacity`
 * doubles.
 */
enum DsrStatus dsr_full_spectrum(const struct DsrGraph *graph,
                                 double *out,
                                 size_t capacity,
                                 size_t *written);

/**
 * h-extra r-component connectivity. `out_value` receives the minimum cut
 * size, or -1 when no valid cut exists; `out_witness` (optional) receives
 * the witness cut as a vertex bitmask, 0 when undefined.
 *
 * # Safety
 * `graph` and `out_value` must be valid pointers.
 */
enum DsrStatus dsr_ckappa(const struct DsrGraph *graph,
                          uint32_t r,
                          uint32_t h,
                          int64_t *out_value,
                          uint64_t *out_witness);

/**
 * Classic vertex connectivity (complete graphs use the n-1 convention).
 *
 * # Safety
 * `graph` and `out` must be valid pointers.
 */
enum DsrStatus dsr_kappa(const struct DsrGraph *graph, uint32_t *out);

/**
 * Build the extremal family graph for the given parameters; the case
 * branch (1, 2 or 3) is derived from them and written to `out_case` when
 * non-null.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum DsrStatus dsr_family_graph(uint32_t n,
                                uint32_t r,
                                uint32_t h,
                                uint32_t delta,
                                uint32_t ckappa,
                                uint32_t *out_case,
                                struct DsrGraph **out);

/**
 * Canonical-form isomorphism test (orders up to 10).
 *
 * # Safety
 * All pointers must be valid.
 */
enum DsrStatus dsr_is_isomorphic(const struct DsrGraph *a, const struct DsrGraph *b, bool *out);

/**
 * graph6 line of the canonical representative of the handle's isomorphism
 * class (orders up to 10).
 *
 * # Safety
 * Pointer arguments must be valid; `buffer` must have `capacity` bytes.
 */
enum DsrStatus dsr_canonical_graph6(const struct DsrGraph *graph,
                                    char *buffer,
                                    size_t capacity,
                                    size_t *written);

/**
 * Static description of a status code.
 */
const char *dsr_status_message(enum DsrStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DSR_H */
