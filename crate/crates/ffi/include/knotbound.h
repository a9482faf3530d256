#ifndef KNOTBOUND_H
#define KNOTBOUND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KbStatus {
  KB_STATUS_OK = 0,
  KB_STATUS_NULL_POINTER = 1,
  KB_STATUS_INVALID_UTF8 = 2,
  KB_STATUS_PARSE_ERROR = 3,
  KB_STATUS_NOT_SEIFERT = 4,
  KB_STATUS_INVALID_ARGUMENT = 5,
  KB_STATUS_COMPUTATION_FAILED = 6,
  KB_STATUS_CERTIFICATE_REJECTED = 7,
  KB_STATUS_PANIC = 8,
} KbStatus;

/**
 * Opaque handle to a validated Seifert matrix.
 */
typedef struct KbKnot KbKnot;

/**
 * Result of a successful certificate check.
 */
typedef struct KbCertifiedBound {
  size_t n;
  size_t n_plus;
  size_t n_minus;
} KbCertifiedBound;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a knot from `size * size` row-major Seifert matrix entries.
 * `size` may be 0 for the unknot, in which case `entries` may be NULL.
 *
 * # Safety
 * `entries` must point to `size * size` readable values and `out` must be
 * a valid pointer. The handle written to `out` is released with
 * [`kb_knot_free`].
 */
enum KbStatus kb_knot_from_entries(const int64_t *entries, size_t size, struct KbKnot **out);

/**
 * Parses a Seifert matrix written as rows separated by `;` and entries by
 * `,`, e.g. `"-1, 1; 0, -1"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum KbStatus kb_knot_parse(const char *text, struct KbKnot **out);

/**
 * # Safety
 * `knot` must be NULL or a handle from this library not yet freed.
 */
void kb_knot_free(struct KbKnot *knot);

/**
 * Genus of the Seifert surface, half the matrix size. Returns 0 for NULL.
 *
 * # Safety
 * `knot` must be NULL or a live handle.
 */
size_t kb_knot_genus(const struct KbKnot *knot);

/**
 * Normalized Alexander polynomial, e.g. `"t - 1 + t^-1"`.
 *
 * # Safety
 * `knot` must be a live handle and `out` a valid pointer; the string
 * written there is released with [`kb_string_free`].
 */
enum KbStatus kb_alexander(const struct KbKnot *knot, char **out);

/**
 * Signature of `V + V^T`.
 *
 * # Safety
 * `knot` must be a live handle and `out` a valid pointer.
 */
enum KbStatus kb_signature(const struct KbKnot *knot, int64_t *out);

/**
 * Levine-Tristram signature at `exp(2 pi i num/den)`, for `0 < num/den < 1`.
 *
 * # Safety
 * `knot` must be a live handle and `out` a valid pointer.
 */
enum KbStatus kb_levine_tristram(const struct KbKnot *knot, int64_t num, int64_t den, int64_t *out);

/**
 * Largest minimal generator count of the Alexander module mod `p` over
 * the given primes.
 *
 * # Safety
 * `knot` must be a live handle, `primes` must point to `count` values (or
 * be NULL with `count == 0`) and `out` must be a valid pointer.
 */
enum KbStatus kb_nakanishi(const struct KbKnot *knot,
                           const uint64_t *primes,
                           size_t count,
                           size_t *out);

/**
 * Verifies a certificate given in its text form against the knot. A
 * rejected certificate returns `KB_STATUS_CERTIFICATE_REJECTED` with the
 * failing check in [`kb_last_error`].
 *
 * # Safety
 * `knot` must be a live handle, `certificate` a NUL-terminated string and
 * `out` a valid pointer.
 */
enum KbStatus kb_certificate_verify(const struct KbKnot *knot,
                                    const char *certificate,
                                    struct KbCertifiedBound *out);

/**
 * Bounds report for one knot as a JSON document. `certificates` holds
 * `count` certificate texts tried before any search; `search` enables the
 * built-in search with default limits.
 *
 * # Safety
 * `knot` must be a live handle, `name` a NUL-terminated string,
 * `certificates` an array of `count` NUL-terminated strings (or NULL with
 * `count == 0`) and `out` a valid pointer. The string written to `out` is
 * released with [`kb_string_free`].
 */
enum KbStatus kb_bounds_json(const struct KbKnot *knot,
                             const char *name,
                             const char *const *certificates,
                             size_t count,
                             bool search,
                             char **out);

/**
 * Message for the last failure on this thread, or NULL. The pointer stays
 * valid until the next library call on the same thread.
 */
const char *kb_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void kb_string_free(char *s);

/**
 * Library version as a static NUL-terminated string.
 */
const char *kb_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KNOTBOUND_H */
