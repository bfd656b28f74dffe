#ifndef RESLIE_H
#define RESLIE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum ReslieStatus {
  RESLIE_STATUS_OK = 0,
  RESLIE_STATUS_NULL_POINTER = 1,
  RESLIE_STATUS_INVALID_UTF8 = 2,
  RESLIE_STATUS_PARSE = 3,
  RESLIE_STATUS_VALIDATION = 4,
  RESLIE_STATUS_SIZE_LIMIT = 5,
  RESLIE_STATUS_FIELD_MISMATCH = 6,
  RESLIE_STATUS_UNSUPPORTED = 7,
  RESLIE_STATUS_PANIC = 8,
} ReslieStatus;

// A parsed, validated restricted Lie algebra.
typedef struct ReslieAlgebra ReslieAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parse and validate an algebra from NUL-terminated text.
//
// # Safety
// `text` must be a valid NUL-terminated string and `out` a valid pointer.
enum ReslieStatus reslie_parse(const char *text, struct ReslieAlgebra **out);

// Release a handle. Null is ignored.
//
// # Safety
// `a` must come from [`reslie_parse`] and not be used afterwards.
void reslie_free(struct ReslieAlgebra *a);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void reslie_string_free(char *s);

// Message for the last failed call on this thread, empty after a success.
// Valid until the next call on the same thread.
const char *reslie_last_error(void);

// Library version, a static string.
const char *reslie_version(void);

// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum ReslieStatus reslie_dim(const struct ReslieAlgebra *a, size_t *out);

// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum ReslieStatus reslie_is_p_nilpotent(const struct ReslieAlgebra *a, bool *out);

// Nilpotence class; fails with `Unsupported` for non-nilpotent algebras.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum ReslieStatus reslie_nilpotence_class(const struct ReslieAlgebra *a, size_t *out);

// Canonical text form of the algebra.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum ReslieStatus reslie_serialize(const struct ReslieAlgebra *a, char **out);

// Invariants as JSON. `max_omega_power` of 0 means no limit.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum ReslieStatus reslie_invariants_json(const struct ReslieAlgebra *a,
                                         size_t max_omega_power,
                                         char **out);

// Fingerprint of `u(L)` as JSON; requires a p-nilpotent algebra.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum ReslieStatus reslie_fingerprint_json(const struct ReslieAlgebra *a, char **out);

// Cyclic decomposition and its checks as JSON; requires an abelian algebra.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum ReslieStatus reslie_decompose_json(const struct ReslieAlgebra *a, char **out);

// Comparison of two algebras over the same field as JSON. `iso_budget` of
// 0 selects the default node budget.
//
// # Safety
// `a` and `b` must be live handles and `out` a valid pointer.
enum ReslieStatus reslie_compare_json(const struct ReslieAlgebra *a,
                                      const struct ReslieAlgebra *b,
                                      uint64_t iso_budget,
                                      char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RESLIE_H */
