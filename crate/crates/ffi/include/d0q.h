#ifndef D0Q_H
#define D0Q_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum D0qStatus {
  D0Q_STATUS_OK = 0,
  D0Q_STATUS_INVALID_ARGUMENT = 1,
  D0Q_STATUS_NULL_POINTER = 2,
  D0Q_STATUS_DOMAIN = 3,
  D0Q_STATUS_SINGULAR_CURVE = 4,
  D0Q_STATUS_INADMISSIBLE_PARAMETER = 5,
  D0Q_STATUS_NUMERICAL_FAILURE = 6,
  // Recognition found no rational, or a verification did not match.
  D0Q_STATUS_NOT_FOUND = 7,
  D0Q_STATUS_PANIC = 8,
} D0qStatus;

typedef enum D0qSeries {
  D0Q_SERIES_GK = 0,
  D0Q_SERIES_HK = 1,
  D0Q_SERIES_ALPHA = 2,
  D0Q_SERIES_CUSP0_PLAIN = 3,
  D0Q_SERIES_CUSP0_HALF = 4,
} D0qSeries;

// Opaque handle.
typedef struct D0qContext D0qContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// New context working at `prec_bits` (0 selects the default of 384).
// Returns null if `prec_bits` is below the minimum.
struct D0qContext *d0q_context_new(uint32_t prec_bits);

// # Safety
// `ctx` must come from `d0q_context_new` and not be used afterwards.
void d0q_context_free(struct D0qContext *ctx);

// # Safety
// See the crate-level safety section.
uint32_t d0q_context_precision(const struct D0qContext *ctx);

// Message for the last failed call, or "" if it succeeded. Owned by the
// context.
// # Safety
// See the crate-level safety section.
const char *d0q_last_error(const struct D0qContext *ctx);

// # Safety
// `s` must come from this library (or be null) and not be used afterwards.
void d0q_string_free(char *s);

// Real period `Ω⁺` of `y² + a1xy + a3y = x³ + a2x² + a4x + a6`.
// `coeffs` holds five rational strings `a1, a2, a3, a4, a6`; the result is
// a decimal string.
// # Safety
// See the crate-level safety section.
enum D0qStatus d0q_real_period(struct D0qContext *ctx, const char *const *coeffs, char **out);

// Verifies table row `(n, k)` at parameter `t` (rational string) and
// writes the report as a JSON object. Returns `NOT_FOUND` when the report
// is not a match; the JSON is written either way.
// # Safety
// See the crate-level safety section.
enum D0qStatus d0q_verify_instance_json(struct D0qContext *ctx,
                                        uint32_t n,
                                        uint32_t k,
                                        const char *t,
                                        char **out);

// Runs every table row with `samples` parameters each and writes a JSON
// array of reports. `OK` iff all match.
// # Safety
// See the crate-level safety section.
enum D0qStatus d0q_verify_all_json(struct D0qContext *ctx, uint32_t samples, char **out);

// Recognizes the decimal `value` as `p/q` with height at most
// `max_height` within `tol`. `NOT_FOUND` if there is none.
// # Safety
// See the crate-level safety section.
enum D0qStatus d0q_recognize(struct D0qContext *ctx,
                             const char *value,
                             uint64_t max_height,
                             const char *tol,
                             char **out);

// Exact coefficients `n = 0..terms-1` as `n/d<TAB>polynomial in z` lines.
// `k` is used by `GK`, `HK` and as `ℓ` by the cusp-0 series; `a`, `b` by
// `ALPHA`.
// # Safety
// See the crate-level safety section.
enum D0qStatus d0q_expand(struct D0qContext *ctx,
                          enum D0qSeries series,
                          uint32_t n,
                          int64_t k,
                          int64_t a,
                          int64_t b,
                          uint32_t terms,
                          char **out);

// Library version, static storage.
const char *d0q_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* D0Q_H */
