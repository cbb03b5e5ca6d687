#ifndef HARMONIC_LOCUS_H
#define HARMONIC_LOCUS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum HlStatus {
  HL_STATUS_OK = 0,
  // A required pointer argument was null.
  HL_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  HL_STATUS_INVALID_UTF8 = 2,
  // Malformed or unsupported input (bad partition, bad config, multiple roots).
  HL_STATUS_INPUT_ERROR = 3,
  // A checked identity or spectrum comparison failed.
  HL_STATUS_VERIFICATION_FAILED = 4,
  // An iterative numerical method did not converge.
  HL_STATUS_NO_CONVERGENCE = 5,
  // An internal panic was caught at the boundary.
  HL_STATUS_PANIC = 6,
} HlStatus;

// Opaque integer partition.
typedef struct HlPartition HlPartition;

// Mirror of the library's numerical tolerances.
typedef struct HlNumericsConfig {
  double root_tol;
  double newton_tol;
  size_t max_iter;
  double cluster_tol;
  double integer_tol;
  uint32_t digits;
} HlNumericsConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *hl_version(void);

// Default tolerances.
struct HlNumericsConfig hl_numerics_default(void);

// Message for the last failed call on this thread, or null. Valid until the
// next call into this library on the same thread.
const char *hl_last_error_message(void);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a pointer obtained from this library and not yet freed.
void hl_string_free(char *s);

// Parses text such as `"4,3,1"` (or `"0"` for the empty partition).
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` a valid pointer.
enum HlStatus hl_partition_parse(const char *text, struct HlPartition **out);

// Builds a partition from `len` parts in nonincreasing order.
//
// # Safety
// `parts` must point to `len` readable values (or be null when `len == 0`).
enum HlStatus hl_partition_from_parts(const size_t *parts, size_t len, struct HlPartition **out);

// Releases a partition handle. Null is ignored.
//
// # Safety
// `p` must be null or a live handle from this library.
void hl_partition_free(struct HlPartition *p);

// Number of boxes, or 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t hl_partition_size(const struct HlPartition *p);

// Text form, e.g. `"4,3,1"`.
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum HlStatus hl_partition_to_string(const struct HlPartition *p, char **out);

// Exact Wronskian as JSON: `{"degree", "coefficients": ["num/den", ...]}`,
// lowest degree first.
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum HlStatus hl_wronskian_json(const struct HlPartition *p, bool monic, char **out);

// Distinct roots with multiplicities and the locus residual, as JSON.
//
// # Safety
// `p` must be a live handle, `cfg` valid or null, `out` a valid pointer.
enum HlStatus hl_roots_json(const struct HlPartition *p,
                            const struct HlNumericsConfig *cfg,
                            char **out);

// Writes the roots of the Wronskian, repeated by multiplicity, into
// `re`/`im` (capacity `cap`). `out_len` receives the degree; if it exceeds
// `cap` nothing is written and `InputError` is returned.
//
// # Safety
// `re` and `im` must have room for `cap` values; `out_len` must be valid.
enum HlStatus hl_roots(const struct HlPartition *p,
                       const struct HlNumericsConfig *cfg,
                       double *re,
                       double *im,
                       size_t cap,
                       size_t *out_len);

// Recovers a partition from `n` simple roots given as separate real and
// imaginary parts.
//
// # Safety
// `re` and `im` must point to `n` readable values; `out` must be valid.
enum HlStatus hl_invert_roots(const double *re,
                              const double *im,
                              size_t n,
                              const struct HlNumericsConfig *cfg,
                              struct HlPartition **out);

// Character in all three forms as JSON (exponent -> coefficient maps).
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum HlStatus hl_character_json(const struct HlPartition *p, char **out);

// Spectra of Moser's matrix and of the Hessian, each checked against its
// combinatorial prediction, as JSON.
//
// # Safety
// `p` must be a live handle, `cfg` valid or null, `out` a valid pointer.
enum HlStatus hl_spectrum_json(const struct HlPartition *p,
                               const struct HlNumericsConfig *cfg,
                               char **out);

// Checks the exact fixed-point relations and the characteristic polynomial
// identity; `VerificationFailed` if any fails.
//
// # Safety
// `p` must be a live handle.
enum HlStatus hl_wilson_verify(const struct HlPartition *p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HARMONIC_LOCUS_H */
