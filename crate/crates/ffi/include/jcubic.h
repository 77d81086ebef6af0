#ifndef JCUBIC_H
#define JCUBIC_H

/* Generated by cbindgen from the jcubic-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum JcStatus {
  JcStatus_Ok = 0,
  JcStatus_NullPointer = 1,
  JcStatus_InvalidUtf8 = 2,
  JcStatus_ParseError = 3,
  JcStatus_DomainError = 4,
  JcStatus_BudgetExceeded = 5,
  JcStatus_PrecisionExhausted = 6,
  JcStatus_VerdictFailure = 7,
} JcStatus;

/**
 * Opaque cubic Jordan algebra handle.
 */
typedef struct JcAlgebra JcAlgebra;

/**
 * Opaque field handle.
 */
typedef struct JcField JcField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *jc_version(void);

/**
 * Release a string produced by this library.
 *
 * # Safety
 * `s` must have been returned by a jcubic function and not freed before.
 */
void jc_string_free(char *s);

/**
 * Parse a field descriptor (`Q`, `Fp:7`, `Fq:2:3:x^3+x+1`,
 * `Laurent:Fp:5:t:prec=16`, ...) into a handle.
 *
 * # Safety
 * `descriptor` must be a valid NUL-terminated string; `out` must be a
 * valid pointer.
 */
enum JcStatus jc_field_new(const char *descriptor, struct JcField **out);

/**
 * # Safety
 * `f` must be a handle from [`jc_field_new`], freed at most once.
 */
void jc_field_free(struct JcField *f);

/**
 * Characteristic of the field (0 for the rationals).
 *
 * # Safety
 * `f` must be a live handle; `out` a valid pointer.
 */
enum JcStatus jc_field_characteristic(const struct JcField *f, uint64_t *out);

/**
 * Canonical descriptor of the field, as an owned string.
 *
 * # Safety
 * `f` must be a live handle; `out` a valid pointer.
 */
enum JcStatus jc_field_descriptor(const struct JcField *f, char **out);

/**
 * Build a cubic Jordan algebra from a construction literal, e.g.
 * `her3(cd(F,1,1),gamma=1,1,1)` or `tits1(etale3(minpoly:x^3+x+1),mu=t)`.
 *
 * # Safety
 * `f` must be a live field handle, `literal` a valid string, `out` a valid
 * pointer.
 */
enum JcStatus jc_algebra_new(const struct JcField *f, const char *literal, struct JcAlgebra **out);

/**
 * # Safety
 * `a` must be a handle from [`jc_algebra_new`], freed at most once.
 */
void jc_algebra_free(struct JcAlgebra *a);

/**
 * Dimension of the algebra over its field.
 *
 * # Safety
 * `a` must be a live handle; `out` a valid pointer.
 */
enum JcStatus jc_algebra_dim(const struct JcAlgebra *a, uintptr_t *out);

/**
 * Norm and adjoint/trace data of one element (a comma-separated coordinate
 * vector) as a JSON object with keys "norm", "sharp", "lin_trace",
 * "quad_trace", "charpoly".
 *
 * # Safety
 * `a` must be a live handle, `vector` a valid string, `out_json` a valid
 * pointer.
 */
enum JcStatus jc_algebra_cubic_data(const struct JcAlgebra *a, const char *vector, char **out_json);

/**
 * Run the axiom suite on the algebra with the given sample count.
 *
 * # Safety
 * `a` must be a live handle.
 */
enum JcStatus jc_algebra_verify(const struct JcAlgebra *a, uintptr_t samples);

/**
 * Run one workbench command (`build`, `verify`, `invariants`,
 * `homogeneity`, `valuation`, `cascade`) against a field descriptor and
 * construction literal, returning the JSON report. The process exit-code
 * convention (0 ok, 1 verdict failure, 2 input error, 3 budget/precision)
 * is reported through `out_exit`.
 *
 * # Safety
 * All pointer arguments must be valid; string arguments NUL-terminated.
 * `construction` may be NULL for field-level commands such as `cascade`.
 */
enum JcStatus jc_run(const char *field_descriptor,
                     const char *construction,
                     const char *command,
                     uint64_t seed,
                     char **out_json,
                     int32_t *out_exit);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JCUBIC_H */
