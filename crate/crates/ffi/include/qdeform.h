/* C interface to the qdeform exact deformation-verification engine. */

#ifndef QDEFORM_H
#define QDEFORM_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Identity families checkable on an engine handle.
typedef enum QdfCheck {
  // Two-cocycle identity and normalization.
  QDF_CHECK_COCYCLE = 0,
  // Cocycle symmetry (coboundary test for abelian groups).
  QDF_CHECK_COCYCLE_SYMMETRIC = 1,
  // Generator relations plus the module-algebra law for every factor.
  QDF_CHECK_MODULE_ALGEBRA = 2,
  // The two skew-derivation rules for every factor.
  QDF_CHECK_SKEW_DERIVATIONS = 3,
  // Pairwise factor compatibility (commuting or inverse-pair).
  QDF_CHECK_FACTOR_COMPATIBILITY = 4,
  // Star-product associativity over all group parts.
  QDF_CHECK_ASSOCIATIVITY = 5,
  // Invariance of each factor's degree-two class.
  QDF_CHECK_CLASS_INVARIANCE = 6,
  // Each factor's class agrees with its operator cocycle.
  QDF_CHECK_CLASS_MATCHES_OPERATOR = 7,
} QdfCheck;

// Status codes shared by every entry point.
typedef enum QdfStatus {
  QDF_STATUS_OK = 0,
  // A verification sweep found a counterexample (see `qdf_last_error`).
  QDF_STATUS_CHECK_FAILED = 1,
  // Configuration or input text failed to parse or validate.
  QDF_STATUS_INVALID_INPUT = 2,
  // A required pointer argument was null.
  QDF_STATUS_NULL_POINTER = 3,
  // Input text was not valid UTF-8.
  QDF_STATUS_INVALID_UTF8 = 4,
  // An internal invariant failed.
  QDF_STATUS_INTERNAL = 5,
} QdfStatus;

// Opaque verification context: algebra, cocycle, and deformation factors.
typedef struct QdfEngine QdfEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message into `buf` (NUL-terminated, truncated to
// `cap` bytes) and returns the full message length in bytes.
//
// # Safety
// `buf` must point to `cap` writable bytes, or be null (then only the
// length is returned).
uintptr_t qdf_last_error(char *buf, uintptr_t cap);

// Builds an engine from configuration text.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be a valid pointer.
enum QdfStatus qdf_engine_from_config_text(const char *text, struct QdfEngine **out);

// Releases an engine handle. Null is ignored.
//
// # Safety
// `engine` must have come from `qdf_engine_from_config_text` and not be
// freed twice.
void qdf_engine_free(struct QdfEngine *engine);

// Runs one identity family at the given sweep degree. On `Ok` the check
// passed; on `CheckFailed` the counterexample is in `qdf_last_error`.
//
// # Safety
// `engine` must be a live handle.
enum QdfStatus qdf_engine_check(const struct QdfEngine *engine,
                                enum QdfCheck check,
                                uint32_t max_degree);

// Star product of two elements in the literal grammar; writes the
// t-polynomial rendered in the same grammar.
//
// # Safety
// `engine` must be live; `a`, `b` NUL-terminated; `out` valid.
enum QdfStatus qdf_engine_star(const struct QdfEngine *engine,
                               const char *a,
                               const char *b,
                               uint32_t guard_degree,
                               char **out);

// Writes the Hecke-type relations, one per line.
//
// # Safety
// `engine` must be live; `out` valid.
enum QdfStatus qdf_engine_hecke(const struct QdfEngine *engine, uint32_t guard_degree, char **out);

// Universal-deformation-formula identities for the Hopf algebra at the
// given root order; `ell = 0` means generic q truncated at `trunc`.
enum QdfStatus qdf_udf_check(uint64_t ell, uint32_t trunc);

// Radical and center dimensions of the quiver-algebra deformation at the
// scalar `t0` (a rational literal such as "1", "-1", "1/2").
//
// # Safety
// `t0` must be NUL-terminated; the output pointers must be valid.
enum QdfStatus qdf_taft_dimensions(const char *t0, uint32_t *radical_out, uint32_t *center_out);

// Runs the command-line interface against an argv-style argument vector;
// returns the process exit status (0 pass, 1 verification failure, 2
// usage/config error). The program name must be included as argv[0].
//
// # Safety
// `argv` must point to `argc` NUL-terminated strings.
int32_t qdf_run_cli(uintptr_t argc, const char *const *argv);

// Frees a string produced by this library. Null is ignored.
//
// # Safety
// `s` must have come from this library and not be freed twice.
void qdf_string_free(char *s);

// Static library version string; do not free.
const char *qdf_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* QDEFORM_H */
