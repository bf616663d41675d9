#ifndef HYPERMOD_H
#define HYPERMOD_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every fallible call.
 */
typedef enum HmStatus {
  HM_STATUS_OK = 0,
  HM_STATUS_NULL_POINTER = 1,
  HM_STATUS_INVALID_UTF8 = 2,
  HM_STATUS_PARSE_ERROR = 3,
  HM_STATUS_INVALID_STRUCTURE = 4,
  HM_STATUS_NO_MODULE = 5,
  HM_STATUS_UNKNOWN_THEOREM = 6,
  HM_STATUS_CAPACITY = 7,
  HM_STATUS_INTERNAL = 8,
  HM_STATUS_PANIC = 9,
} HmStatus;

/**
 * A parsed ring, optionally with a module over it.
 */
typedef struct HmStructure HmStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *hm_version(void);

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *hm_last_error(void);

/**
 * Parse structure text into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HmStatus hm_structure_parse(const char *text, struct HmStructure **out);

/**
 * Release a handle; null is ignored.
 *
 * # Safety
 * `s` must come from [`hm_structure_parse`] and not be used afterwards.
 */
void hm_structure_free(struct HmStructure *s);

/**
 * Release a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void hm_string_free(char *s);

/**
 * Carrier sizes of the ring and module; `*module_size` is 0 without a module.
 *
 * # Safety
 * All pointers must be valid.
 */
enum HmStatus hm_structure_sizes(const struct HmStructure *s,
                                 size_t *ring_size,
                                 size_t *module_size);

/**
 * Whether every ring and module axiom holds.
 *
 * # Safety
 * All pointers must be valid.
 */
enum HmStatus hm_structure_is_valid(const struct HmStructure *s, bool *out);

/**
 * Canonical text of the structure, released with [`hm_string_free`].
 *
 * # Safety
 * All pointers must be valid.
 */
enum HmStatus hm_structure_emit(const struct HmStructure *s, char **out);

/**
 * Decide the multiplication property of the module.
 *
 * # Safety
 * All pointers must be valid.
 */
enum HmStatus hm_is_multiplication(const struct HmStructure *s, bool *out);

/**
 * Run the theorems named by `selector` (an id, `T3.8` or `all`) and hand
 * out the verdicts as a JSON report with `"schema": 1`.
 *
 * # Safety
 * All pointers must be valid and `selector` NUL-terminated.
 */
enum HmStatus hm_verify_json(const struct HmStructure *s, const char *selector, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERMOD_H */
