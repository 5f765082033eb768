#ifndef SYZCHAIN_H
#define SYZCHAIN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call. Values 10 and up mirror the library's
 * error codes.
 */
typedef enum SyzStatus {
  SYZ_STATUS_OK = 0,
  SYZ_STATUS_SUITE_FAILED = 1,
  SYZ_STATUS_NULL_ARGUMENT = 2,
  SYZ_STATUS_INVALID_UTF8 = 3,
  SYZ_STATUS_PANIC = 4,
  SYZ_STATUS_VARIANT_MISMATCH = 10,
  SYZ_STATUS_UNSUPPORTED_FIELD = 11,
  SYZ_STATUS_NOT_PRIME = 12,
  SYZ_STATUS_RING_MISMATCH = 13,
  SYZ_STATUS_DEGREE_TOO_HIGH = 14,
  SYZ_STATUS_ZERO_POINT = 15,
  SYZ_STATUS_PARSE = 16,
  SYZ_STATUS_CODIMENSION = 17,
  SYZ_STATUS_THRESHOLD = 18,
  SYZ_STATUS_GENERICITY = 19,
  SYZ_STATUS_SPECIALITY = 20,
  SYZ_STATUS_GEOMETRIC_POSITION = 21,
  SYZ_STATUS_HYPOTHESIS = 22,
  SYZ_STATUS_DEGENERATE_KERNEL = 23,
  SYZ_STATUS_COPRIMALITY = 24,
  SYZ_STATUS_NON_MINIMAL = 25,
  SYZ_STATUS_BUDGET = 26,
  SYZ_STATUS_INPUT = 27,
  SYZ_STATUS_UNSUPPORTED = 28,
  SYZ_STATUS_IO = 29,
} SyzStatus;

/**
 * Opaque per-caller state: coefficient prime, seed, and the buffers behind
 * the strings returned by [`syz_session_output`] and
 * [`syz_session_last_error`].
 */
typedef struct SyzSession SyzSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * New session. `prime == 0` selects the default prime 32003.
 */
struct SyzSession *syz_session_new(uint64_t prime, uint64_t seed);

/**
 * Releases a session. Null is ignored.
 *
 * # Safety
 * `session` must come from [`syz_session_new`] and not be used afterwards.
 */
void syz_session_free(struct SyzSession *session);

/**
 * JSON report of the last successful call, or null.
 *
 * # Safety
 * `session` must be a live session or null.
 */
const char *syz_session_output(const struct SyzSession *session);

/**
 * JSON error document of the last failed call, or null.
 *
 * # Safety
 * `session` must be a live session or null.
 */
const char *syz_session_last_error(const struct SyzSession *session);

/**
 * Butler kernel invariants for genus `g`, rank `r`, degree `deg`.
 *
 * # Safety
 * `session` must be a live session.
 */
enum SyzStatus syz_butler(struct SyzSession *session, int64_t g, int64_t r, int64_t deg);

/**
 * Integral combination of the classes `m^2 - 1` giving `H^2`.
 *
 * # Safety
 * `session` must be a live session.
 */
enum SyzStatus syz_bezout(struct SyzSession *session, int64_t m1, int64_t m2);

/**
 * Invariants of the surface kernels over `points` random points of P^2.
 *
 * # Safety
 * `session` must be a live session.
 */
enum SyzStatus syz_uniformity(struct SyzSession *session, uint32_t d, uint32_t m, size_t points);

/**
 * Resolves a builtin instance with polarization `d`. `m < 0` picks the
 * smallest admissible twist.
 *
 * # Safety
 * `session` must be a live session and `name` a NUL-terminated string.
 */
enum SyzStatus syz_resolve_builtin(struct SyzSession *session,
                                   const char *name,
                                   uint32_t d,
                                   int32_t m,
                                   bool module_mode);

/**
 * Resolves the subscheme described by an input file. `d == 0` takes the
 * polarization from the file; `m < 0` picks the smallest admissible twist.
 *
 * # Safety
 * `session` must be a live session and `path` a NUL-terminated string.
 */
enum SyzStatus syz_resolve_file(struct SyzSession *session,
                                const char *path,
                                uint32_t d,
                                int32_t m,
                                bool module_mode);

/**
 * Static name of a status code, e.g. `"THRESHOLD"`.
 */
const char *syz_status_name(enum SyzStatus status);

/**
 * Library version as a static string.
 */
const char *syz_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYZCHAIN_H */
