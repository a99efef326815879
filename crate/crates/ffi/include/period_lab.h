#ifndef PERIOD_LAB_H
#define PERIOD_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PlStatus {
  PL_STATUS_OK = 0,
  PL_STATUS_NULL_POINTER = 1,
  PL_STATUS_INVALID_UTF8 = 2,
  PL_STATUS_PARSE = 3,
  PL_STATUS_INVALID_FIELD = 4,
  PL_STATUS_INVALID_ARGUMENT = 5,
  PL_STATUS_ZERO_POLYNOMIAL = 6,
  PL_STATUS_BUDGET_EXCEEDED = 7,
  PL_STATUS_OVERFLOW = 8,
  PL_STATUS_OUT_OF_RANGE = 9,
  PL_STATUS_BUFFER_TOO_SMALL = 10,
  PL_STATUS_PANIC = 11,
} PlStatus;

// A finite field `F_q`.
typedef struct PlField PlField;

// A sorted set of periods.
typedef struct PlPeriodSet PlPeriodSet;

// A polynomial over a [`PlField`]. It keeps its own copy of the field.
typedef struct PlPoly PlPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL after a success.
// The pointer stays valid until the next call into this library on the same
// thread.
const char *pl_last_error(void);

// Library version as a static NUL-terminated string.
const char *pl_version(void);

// Builds a field from `p`, `q`, `p^e` or `p^e/<modulus>`.
//
// # Safety
// `spec` must be a NUL-terminated string and the out-pointer valid.
enum PlStatus pl_field_new(const char *spec, struct PlField **out_field);

// # Safety
// `field` must be NULL or a handle from [`pl_field_new`] not yet freed.
void pl_field_free(struct PlField *field);

// Field order `q`, or 0 if `field` is NULL.
//
// # Safety
// `field` must be NULL or a live handle.
uint64_t pl_field_q(const struct PlField *field);

// Characteristic `p`, or 0 if `field` is NULL.
//
// # Safety
// `field` must be NULL or a live handle.
uint64_t pl_field_p(const struct PlField *field);

// Extension degree `e`, or 0 if `field` is NULL.
//
// # Safety
// `field` must be NULL or a live handle.
uint32_t pl_field_e(const struct PlField *field);

// Parses a polynomial such as `x^5+x^4+1` or `x^2+[0,1]*x+1`.
//
// # Safety
// `field` must be a live handle, `src` a NUL-terminated string and the out-pointer valid.
enum PlStatus pl_poly_parse(const struct PlField *field, const char *src, struct PlPoly **out_poly);

// # Safety
// `poly` must be NULL or a handle from [`pl_poly_parse`] not yet freed.
void pl_poly_free(struct PlPoly *poly);

// Degree of `poly`, or -1 for the zero polynomial and for NULL.
//
// # Safety
// `poly` must be NULL or a live handle.
int64_t pl_poly_degree(const struct PlPoly *poly);

// Writes the canonical text form into `buf`, NUL-terminated.
//
// `needed` receives the buffer size required including the terminator. If
// `cap` is too small nothing is written and `BufferTooSmall` is returned, so
// a first call with `buf = NULL, cap = 0` queries the size.
//
// # Safety
// `poly` must be a live handle, `buf` must hold `cap` bytes (or be NULL when
// `cap` is 0) and `needed` must be valid.
enum PlStatus pl_poly_format(const struct PlPoly *poly, char *buf, size_t cap, size_t *needed);

// `ord(f)` by factorization.
//
// # Safety
// `poly` must be a live handle and `order` valid.
enum PlStatus pl_poly_order(const struct PlPoly *poly, uint64_t *order);

// `ord(f)` by powering `x` modulo `f`, giving up after `limit` steps
// (0 means the default bound `q^deg - 1`).
//
// # Safety
// `poly` must be a live handle and `order` valid.
enum PlStatus pl_poly_order_bruteforce(const struct PlPoly *poly, uint64_t limit, uint64_t *order);

// Least period of the sequence `a_{n+k} = sum c_i a_{n+i}` from the given
// initial terms. Both lists are comma separated field elements, `c_0` first.
//
// # Safety
// `field` must be a live handle, the strings NUL-terminated, `period` valid.
enum PlStatus pl_sequence_period(const struct PlField *field,
                                 const char *coeffs,
                                 const char *init,
                                 uint64_t *period);

// Closed-form period set `P(k, F_q)` for `k` in 1..=4.
//
// # Safety
// The out-pointer must be valid.
enum PlStatus pl_period_set_closed_form(uint32_t k, uint64_t q, struct PlPeriodSet **out_set);

// Guaranteed subset of `P(k, F_q)` valid for every `k`.
//
// # Safety
// The out-pointer must be valid.
enum PlStatus pl_period_set_lower_bound(uint32_t k, uint64_t q, struct PlPeriodSet **out_set);

// `P(k, F_q)` by enumerating every degree `k` polynomial with nonzero
// constant term. Fails with `BudgetExceeded` past `budget` polynomials.
//
// # Safety
// `field` must be a live handle and the out-pointer valid.
enum PlStatus pl_period_set_bruteforce(const struct PlField *field,
                                       uint32_t k,
                                       uint64_t budget,
                                       struct PlPeriodSet **out_set);

// `P(k, R)` for `R = F_{q_1} ⊕ ... ⊕ F_{q_r}` given as comma separated field
// specs, e.g. `"2,3,5"`.
//
// # Safety
// `components` must be NUL-terminated and the out-pointer valid.
enum PlStatus pl_ring_period_set(const char *components,
                                 uint32_t k,
                                 uint64_t budget,
                                 struct PlPeriodSet **out_set);

// Number of elements, or 0 for NULL.
//
// # Safety
// `set` must be NULL or a live handle.
size_t pl_period_set_len(const struct PlPeriodSet *set);

// The `index`-th smallest element (0-based).
//
// # Safety
// `set` must be a live handle and `value` valid.
enum PlStatus pl_period_set_get(const struct PlPeriodSet *set, size_t index, uint64_t *value);

// # Safety
// `set` must be NULL or a handle not yet freed.
void pl_period_set_free(struct PlPeriodSet *set);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERIOD_LAB_H */
