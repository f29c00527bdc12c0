#ifndef MILNOR_H
#define MILNOR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum MilnorStatus {
  MILNOR_STATUS_OK = 0,
  MILNOR_STATUS_NULL_POINTER = 1,
  MILNOR_STATUS_INVALID_UTF8 = 2,
  MILNOR_STATUS_PARSE_ERROR = 3,
  /**
   * Not reduced, not homogeneous, or degree too low.
   */
  MILNOR_STATUS_INVALID_CURVE = 4,
  MILNOR_STATUS_UNKNOWN_CATALOG = 5,
  /**
   * The Alexander polynomial is only bounded for this curve.
   */
  MILNOR_STATUS_NOT_CERTIFIED = 6,
  MILNOR_STATUS_INVALID_ARGUMENT = 7,
  /**
   * A Rust panic was caught at the boundary.
   */
  MILNOR_STATUS_INTERNAL = 8,
} MilnorStatus;

/**
 * Opaque curve handle.
 */
typedef struct MilnorCurve MilnorCurve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Valid until the next
 * failing call on the same thread; never null.
 */
const char *milnor_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *milnor_version(void);

/**
 * Parses and validates a curve equation such as `"x^3+y^3+z^3"`.
 * `components` is the number of irreducible components, or 0 if unknown.
 *
 * # Safety
 * `expr` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum MilnorStatus milnor_curve_from_expression(const char *expr,
                                               uint32_t components,
                                               struct MilnorCurve **out);

/**
 * Builds a catalog curve. `param` is m or d for parametrized families and
 * must be 0 otherwise.
 *
 * # Safety
 * `id` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum MilnorStatus milnor_curve_from_catalog(const char *id,
                                            uint32_t param,
                                            struct MilnorCurve **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `curve` must come from this library and not be used afterwards.
 */
void milnor_curve_free(struct MilnorCurve *curve);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void milnor_string_free(char *s);

/**
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
enum MilnorStatus milnor_curve_degree(const struct MilnorCurve *curve, uint32_t *out);

/**
 * Total Tjurina number.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
enum MilnorStatus milnor_curve_tjurina(const struct MilnorCurve *curve, size_t *out);

/**
 * `ε_q`, the excess of closed-up syzygies over Koszul relations in degree `q >= 1`.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
enum MilnorStatus milnor_curve_epsilon(const struct MilnorCurve *curve, uint32_t q, size_t *out);

/**
 * First Alexander polynomial, e.g. `"(t^2-t+1)^3"`. Returns `NotCertified`
 * when only bounds are available; the message then holds the interval form.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
enum MilnorStatus milnor_curve_delta1(const struct MilnorCurve *curve, char **out);

/**
 * Full analysis as JSON, in the same schema as `milnor analyze --format json`.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
enum MilnorStatus milnor_curve_analyze_json(const struct MilnorCurve *curve,
                                            bool with_witnesses,
                                            char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MILNOR_H */
