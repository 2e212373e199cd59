#ifndef TRIGSPLINE_H
#define TRIGSPLINE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Factor family codes accepted by `ts_spline_build`.
 */
#define TS_KIND_V1 1

#define TS_KIND_V2 2

#define TS_KIND_V3 3

/**
 * Result code of every fallible call.
 */
typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_POINTER = 1,
  TS_STATUS_INVALID_ARGUMENT = 2,
  TS_STATUS_DIMENSION = 3,
  TS_STATUS_DOMAIN = 4,
  TS_STATUS_DEGENERATE_NORMALIZER = 5,
  TS_STATUS_DERIVATIVE_ORDER = 6,
  TS_STATUS_NUMERIC = 7,
  TS_STATUS_PARSE = 8,
  TS_STATUS_SCHEMA = 9,
  TS_STATUS_INVARIANT = 10,
  TS_STATUS_IO = 11,
  TS_STATUS_PANIC = 12,
} TsStatus;

/**
 * Opaque spline handle. Release with `ts_spline_free`.
 */
typedef struct TsSpline TsSpline;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread, or null if none.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *ts_last_error_message(void);

/**
 * Builds a spline from `len` samples on the grid with `len` nodes and indicator 0 or 1.
 *
 * `kind` is one of `TS_KIND_V*`. `blocks == 0` picks the truncation
 * automatically; otherwise it is the number of alias blocks M.
 */
enum TsStatus ts_spline_build(const double *values,
                              size_t len,
                              uint8_t indicator,
                              uint32_t kind,
                              uint32_t order,
                              uint64_t blocks,
                              struct TsSpline **out);

/**
 * Releases a handle. Null is ignored.
 */
void ts_spline_free(struct TsSpline *spline);

enum TsStatus ts_spline_eval(const struct TsSpline *spline, double t, double *out);

/**
 * Derivative of order `deriv`, which must be below the smoothness order.
 */
enum TsStatus ts_spline_eval_derivative(const struct TsSpline *spline,
                                        double t,
                                        uint32_t deriv,
                                        double *out);

/**
 * Evaluates at `len` points, writing `len` values to `out`.
 */
enum TsStatus ts_spline_eval_many(const struct TsSpline *spline,
                                  const double *ts,
                                  size_t len,
                                  uint32_t deriv,
                                  double *out);

/**
 * Number of alias blocks M in use; 0 for a null handle.
 */
uint64_t ts_spline_blocks(const struct TsSpline *spline);

/**
 * Bound on the discarded part of the series; NaN for a null handle.
 */
double ts_spline_tail_bound(const struct TsSpline *spline);

/**
 * Number of grid nodes; 0 for a null handle.
 */
size_t ts_spline_nodes(const struct TsSpline *spline);

/**
 * Writes the `nodes` grid points for the given indicator to `out`.
 */
enum TsStatus ts_grid_nodes(size_t nodes, uint8_t indicator, double *out);

/**
 * Serializes to a JSON descriptor. Free the string with `ts_string_free`.
 */
enum TsStatus ts_spline_to_json(const struct TsSpline *spline, char **out);

/**
 * Loads a descriptor written by `ts_spline_to_json`, re-deriving and checking it.
 */
enum TsStatus ts_spline_from_json(const char *json, struct TsSpline **out);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void ts_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TRIGSPLINE_H */
