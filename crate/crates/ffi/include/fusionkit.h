#ifndef FUSIONKIT_H
#define FUSIONKIT_H

/* Generated by cbindgen from crates/ffi/src; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FkStatus {
  FK_STATUS_OK = 0,
  FK_STATUS_NULL_POINTER = 1,
  FK_STATUS_INVALID_UTF8 = 2,
  FK_STATUS_SYNTAX = 3,
  FK_STATUS_INVALID = 4,
  FK_STATUS_DEGENERATE = 5,
  FK_STATUS_CAP_EXCEEDED = 6,
  FK_STATUS_NUMERIC = 7,
  FK_STATUS_BUFFER_TOO_SMALL = 8,
  FK_STATUS_PANIC = 9,
} FkStatus;

/**
 * Opaque metric group.
 */
typedef struct FkMetricGroup FkMetricGroup;

/**
 * Opaque fusion ring.
 */
typedef struct FkRing FkRing;

/**
 * A verdict with its witness `p^a q^b c`. Absent primes are 0.
 */
typedef struct FkVerdict {
  int32_t kind;
  bool has_witness;
  uint64_t prime;
  uint64_t p;
  uint32_t a;
  uint64_t q;
  uint32_t b;
  uint64_t c;
} FkVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or the empty string.
 * The pointer stays valid until the next call into this library.
 */
const char *fk_last_error(void);

/**
 * Parses and validates a fusion ring.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FkStatus fk_ring_parse(const char *text, struct FkRing **out);

/**
 * # Safety
 * `ring` must come from [`fk_ring_parse`] and not be freed twice.
 */
void fk_ring_free(struct FkRing *ring);

/**
 * # Safety
 * `ring` must be a live handle or null.
 */
size_t fk_ring_rank(const struct FkRing *ring);

/**
 * Writes the FP dimension of each simple into `dims` (length `len`, at
 * least the rank) and the exact total into `total_exact`, or 0 when the
 * total is not an integer.
 *
 * # Safety
 * Pointers must be valid; `dims` must hold `len` doubles.
 */
enum FkStatus fk_ring_fp_dims(const struct FkRing *ring,
                              double tolerance,
                              double *dims,
                              size_t len,
                              uint64_t *total_exact);

/**
 * # Safety
 * Pointers must be valid.
 */
enum FkStatus fk_ring_verdict(const struct FkRing *ring, double tolerance, struct FkVerdict *out);

/**
 * # Safety
 * `out` must be valid.
 */
enum FkStatus fk_classify_dimension(uint64_t n, struct FkVerdict *out);

/**
 * Writes up to `len` exceptions below `limit` into `buf` and their total
 * number into `count`. Call with `len = 0` to size the buffer.
 *
 * # Safety
 * `buf` must hold `len` values (may be null when `len` is 0); `count`
 * must be valid.
 */
enum FkStatus fk_scan_exceptions(uint64_t limit,
                                 bool odd_only,
                                 uint64_t *buf,
                                 size_t len,
                                 size_t *count);

/**
 * Parses and validates a metric group.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FkStatus fk_metric_parse(const char *text, struct FkMetricGroup **out);

/**
 * # Safety
 * `mg` must come from [`fk_metric_parse`] and not be freed twice.
 */
void fk_metric_free(struct FkMetricGroup *mg);

/**
 * # Safety
 * `mg` must be a live handle or null.
 */
uint64_t fk_metric_order(const struct FkMetricGroup *mg);

/**
 * # Safety
 * `mg` must be a live handle or null.
 */
bool fk_metric_is_nondegenerate(const struct FkMetricGroup *mg);

/**
 * `|G|²` and `k` with `arg G = 2πk/8`. Requires a nondegenerate form.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FkStatus fk_metric_gauss(const struct FkMetricGroup *mg,
                              uint64_t *magnitude_sq,
                              uint8_t *eighth);

/**
 * Order of the pointed Witt class, searched up to `order_cap`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FkStatus fk_metric_witt_order(const struct FkMetricGroup *mg,
                                   uint32_t order_cap,
                                   uint32_t *out);

/**
 * Human-readable description; release with [`fk_string_free`].
 *
 * # Safety
 * `mg` must be a live handle or null.
 */
char *fk_metric_describe(const struct FkMetricGroup *mg);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void fk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FUSIONKIT_H */
