#ifndef PLREAL_H
#define PLREAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum PlrealStatus {
  PLREAL_STATUS_OK = 0,
  PLREAL_STATUS_NULL_ARGUMENT = 1,
  PLREAL_STATUS_INVALID_UTF8 = 2,
  PLREAL_STATUS_PARSE = 3,
  PLREAL_STATUS_DOMAIN = 4,
  PLREAL_STATUS_PARAMETER = 5,
  PLREAL_STATUS_PRECONDITION = 6,
  PLREAL_STATUS_RESOURCE = 7,
  PLREAL_STATUS_SELF_CHECK = 8,
  PLREAL_STATUS_PANIC = 9,
} PlrealStatus;

/**
 * Opaque handle to a piecewise-linear function with rational knots.
 */
typedef struct PlrealFunction PlrealFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never free the result.
 */
const char *plreal_status_message(enum PlrealStatus status);

/**
 * Parses `PL v1` text into a new handle.
 *
 * # Safety
 * `pl_text` must be a valid NUL-terminated string and `out` a writable pointer.
 */
enum PlrealStatus plreal_function_parse(const char *pl_text, struct PlrealFunction **out);

/**
 * A seed by name: `ornstein-g` or `fixed-h`.
 *
 * # Safety
 * `name` must be a valid NUL-terminated string and `out` a writable pointer.
 */
enum PlrealStatus plreal_function_seed(const char *name, struct PlrealFunction **out);

/**
 * # Safety
 * `f` must be null or a handle from this library that has not been freed.
 */
void plreal_function_free(struct PlrealFunction *f);

/**
 * # Safety
 * `s` must be null or a string returned by this library that has not been freed.
 */
void plreal_string_free(char *s);

/**
 * Number of knots of `f`, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t plreal_function_knot_count(const struct PlrealFunction *f);

/**
 * Serializes `f` as `PL v1` text.
 *
 * # Safety
 * `f` must be a live handle and `out` a writable pointer.
 */
enum PlrealStatus plreal_function_to_text(const struct PlrealFunction *f, char **out);

/**
 * `f(x)` as an exact rational string.
 *
 * # Safety
 * `f` must be a live handle, `x` a NUL-terminated string, `out` writable.
 */
enum PlrealStatus plreal_function_eval(const struct PlrealFunction *f, const char *x, char **out);

/**
 * `λ({x ∈ [lo, hi] : f(x) > y})`.
 *
 * # Safety
 * `f` must be a live handle, the rationals NUL-terminated strings, `out` writable.
 */
enum PlrealStatus plreal_superlevel_measure(const struct PlrealFunction *f,
                                            const char *y,
                                            const char *lo,
                                            const char *hi,
                                            char **out);

/**
 * Density in `[lo, hi]` of the points where the difference quotient at `x0` is nonnegative.
 *
 * # Safety
 * `f` must be a live handle, the rationals NUL-terminated strings, `out` writable.
 */
enum PlrealStatus plreal_diffquot_density(const struct PlrealFunction *f,
                                          const char *x0,
                                          const char *lo,
                                          const char *hi,
                                          char **out);

/**
 * Level `n` of the self-insertion of a named seed, at `x`.
 *
 * # Safety
 * `seed` and `x` must be NUL-terminated strings and `out` writable.
 */
enum PlrealStatus plreal_lazy_eval(const char *seed, uint32_t n, const char *x, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLREAL_H */
