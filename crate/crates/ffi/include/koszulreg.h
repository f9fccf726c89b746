#ifndef KOSZULREG_H
#define KOSZULREG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero values below 10 match the exit codes of the command-line tool.
 */
typedef enum KrStatus {
  KR_STATUS_OK = 0,
  KR_STATUS_PARSE = 2,
  KR_STATUS_SEMANTIC = 3,
  KR_STATUS_PRECONDITION = 4,
  KR_STATUS_VIOLATION = 5,
  KR_STATUS_GENERATION = 6,
  KR_STATUS_NULL_POINTER = 10,
  KR_STATUS_INVALID_UTF8 = 11,
  KR_STATUS_PANIC = 12,
} KrStatus;

/**
 * A parsed case: ring, ideal generators, optional module and theorem.
 */
typedef struct KrCase KrCase;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a JSON case. Returns null on failure; see `kr_last_error`.
 *
 * # Safety
 * `json` must be null or a valid NUL-terminated string.
 */
struct KrCase *kr_case_from_json(const char *json);

/**
 * Releases a case. Null is ignored.
 *
 * # Safety
 * `handle` must be null or a handle from `kr_case_from_json` not yet freed.
 */
void kr_case_free(struct KrCase *handle);

/**
 * Checks one theorem and writes the bound report to `*out`.
 *
 * `theorem` may be null to use the theorem of the case file; `dmax < 0` picks the default
 * oracle window. Returns `KR_STATUS_OK`, `KR_STATUS_PRECONDITION` or `KR_STATUS_VIOLATION`
 * with a report, or an error status with `*out` set to null.
 *
 * # Safety
 * `handle` must be a live handle, `theorem` null or a NUL-terminated string, `out` writable.
 */
enum KrStatus kr_case_check(const struct KrCase *handle,
                            const char *theorem,
                            int64_t dmax,
                            char **out);

/**
 * Computes `resolve`, `reg`, `koszul` or `hilbert` and writes the JSON result to `*out`.
 *
 * # Safety
 * `handle` must be a live handle, `what` a NUL-terminated string, `out` writable.
 */
enum KrStatus kr_case_compute(const struct KrCase *handle,
                              const char *what,
                              int64_t dmax,
                              char **out);

/**
 * Generates and checks `count` cases of a family; writes the fuzz summary to `*out`.
 *
 * # Safety
 * `family` must be a NUL-terminated string and `out` writable.
 */
enum KrStatus kr_fuzz(const char *family,
                      uint64_t seed,
                      size_t count,
                      size_t max_vars,
                      uint32_t max_deg,
                      char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void kr_string_free(char *s);

/**
 * Message of the last failure on this thread, or null. Valid until the next call on the thread.
 */
const char *kr_last_error(void);

/**
 * Library version as a static string.
 */
const char *kr_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KOSZULREG_H */
