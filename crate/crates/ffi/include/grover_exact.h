#ifndef GROVER_EXACT_H
#define GROVER_EXACT_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GeStatus {
  GE_STATUS_OK = 0,
  GE_STATUS_NULL_POINTER = 1,
  GE_STATUS_INVALID_ARGUMENT = 2,
  GE_STATUS_INDISTINGUISHABLE = 3,
  GE_STATUS_RESOURCE_CAP = 4,
  GE_STATUS_PARSE = 5,
  GE_STATUS_INVALID_SCHEME = 6,
  GE_STATUS_AMBIGUOUS = 7,
  GE_STATUS_INVALID_UTF8 = 8,
  GE_STATUS_PANIC = 9,
} GeStatus;

/*
 An owned scheme.
 */
typedef struct GeScheme GeScheme;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or null if none.

 The pointer stays valid until the next failing call on the same thread.
 */
const char *ge_last_error_message(void);

/*
 Frees a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void ge_string_free(char *s);

/*
 Frees a scheme. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void ge_scheme_free(struct GeScheme *s);

/*
 The grouping construction for `n` elements.

 # Safety
 `out` must be valid for writing a pointer.
 */
enum GeStatus ge_scheme_construct(uintptr_t n, struct GeScheme **out);

/*
 One of the named schemes `n4-single`, `n5-product`, `n6-entangled`.

 # Safety
 `name` must be a NUL-terminated string; `out` must be valid for writing.
 */
enum GeStatus ge_scheme_builtin(const char *name, struct GeScheme **out);

/*
 Parses a scheme document.

 # Safety
 `json` must be a NUL-terminated string; `out` must be valid for writing.
 */
enum GeStatus ge_scheme_from_json(const char *json, struct GeScheme **out);

/*
 Serializes a scheme; release the result with [`ge_string_free`].

 # Safety
 `s` must be a live scheme; `out` must be valid for writing.
 */
enum GeStatus ge_scheme_to_json(const struct GeScheme *s, char **out);

/*
 Dimension of the scheme, or 0 for null.

 # Safety
 `s` must be null or a live scheme.
 */
uintptr_t ge_scheme_n(const struct GeScheme *s);

/*
 Number of copies (oracle queries) the scheme uses, or 0 for null.

 # Safety
 `s` must be null or a live scheme.
 */
uintptr_t ge_scheme_copies(const struct GeScheme *s);

/*
 Writes whether the scheme separates every pair and how many pairs fail.

 # Safety
 `s` must be a live scheme; `valid` must be writable; `failing` may be null.
 */
enum GeStatus ge_scheme_verify(const struct GeScheme *s, bool *valid, uintptr_t *failing);

/*
 Runs the scheme against the oracle hiding `hidden` (1-based).

 # Safety
 `s` must be a live scheme; `identified` and `queries` must be writable.
 */
enum GeStatus ge_scheme_identify(const struct GeScheme *s,
                                 uintptr_t hidden,
                                 uintptr_t *identified,
                                 uintptr_t *queries);

/*
 Smallest `t` allowed by the general lower bound.
 */
uint64_t ge_general_lower_bound(uint64_t n);

/*
 Copies used by the grouping construction.

 # Safety
 `out` must be writable.
 */
enum GeStatus ge_construction_size(uintptr_t n, uintptr_t *out);

/*
 Exact minimum number of canonical blocks for `n` (default cap applies).

 # Safety
 `out` must be writable.
 */
enum GeStatus ge_min_product_cover(uintptr_t n, uintptr_t *out);

/*
 Whether some `t`-copy input separates all `n` oracles. On success with
 `feasible` and a non-null `witness`, a verified weight profile is
 written there.

 # Safety
 `feasible` must be writable; `witness` may be null.
 */
enum GeStatus ge_entangled_feasible(uintptr_t n,
                                    uintptr_t t,
                                    bool *feasible,
                                    struct GeScheme **witness);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GROVER_EXACT_H */
