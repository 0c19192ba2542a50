#ifndef QFORMS_H
#define QFORMS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `QF_STATUS_OK` is zero; every other value is an error.
 */
typedef enum QfStatus {
  QF_STATUS_OK = 0,
  QF_STATUS_NULL_POINTER = 1,
  QF_STATUS_INVALID_UTF8 = 2,
  QF_STATUS_PARSE = 3,
  QF_STATUS_INVALID_DIMENSION = 4,
  QF_STATUS_DIMENSION_MISMATCH = 5,
  QF_STATUS_DEGREE = 6,
  QF_STATUS_OUT_OF_THEOREM_RANGE = 7,
  QF_STATUS_LATTICE_VIOLATION = 8,
  QF_STATUS_GROUP = 9,
  QF_STATUS_NUMERIC = 10,
  QF_STATUS_INDEX_OUT_OF_RANGE = 11,
  QF_STATUS_PANIC = 12,
} QfStatus;

/**
 * Effective decomposition of a form.
 */
typedef struct QfDecomposition QfDecomposition;

/**
 * Homogeneous exterior form with exact rational coefficients.
 */
typedef struct QfForm QfForm;

/**
 * Kraines data and Lefschetz operators for a fixed quaternionic dimension.
 */
typedef struct QfKraines QfKraines;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *qf_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string obtained from this library, freed once.
 */
void qf_string_free(char *s);

/**
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum QfStatus qf_kraines_new(size_t n, struct QfKraines **out);

/**
 * # Safety
 * `k` must be null or a handle from `qf_kraines_new`, freed once.
 */
void qf_kraines_free(struct QfKraines *k);

/**
 * Quaternionic dimension, or 0 for a null handle.
 *
 * # Safety
 * `k` must be null or a live handle.
 */
size_t qf_kraines_n(const struct QfKraines *k);

/**
 * Copy of the fundamental 4-form.
 *
 * # Safety
 * `k` must be a live handle and `out` writable.
 */
enum QfStatus qf_kraines_omega(const struct QfKraines *k, struct QfForm **out);

/**
 * `L a = Ω ∧ a`.
 *
 * # Safety
 * `k`, `a` must be live handles and `out` writable.
 */
enum QfStatus qf_kraines_l(const struct QfKraines *k, const struct QfForm *a, struct QfForm **out);

/**
 * Adjoint `Λ` of `L`; the form must have degree at least 4.
 *
 * # Safety
 * `k`, `a` must be live handles and `out` writable.
 */
enum QfStatus qf_kraines_lambda(const struct QfKraines *k,
                                const struct QfForm *a,
                                struct QfForm **out);

/**
 * Writes `is_effective` as 0 or 1.
 *
 * # Safety
 * `k`, `a` must be live handles and `is_effective` writable.
 */
enum QfStatus qf_kraines_is_effective(const struct QfKraines *k,
                                      const struct QfForm *a,
                                      bool *is_effective);

/**
 * Decomposes `a` into effective components. Degrees above `n + 1` need
 * `force`.
 *
 * # Safety
 * `k`, `a` must be live handles and `out` writable.
 */
enum QfStatus qf_kraines_decompose(const struct QfKraines *k,
                                   const struct QfForm *a,
                                   bool force,
                                   struct QfDecomposition **out);

/**
 * Rank table of `L` for degrees `0..=max_degree` as CSV.
 *
 * # Safety
 * `out` must be writable; free the result with `qf_string_free`.
 */
enum QfStatus qf_rank_table_csv(size_t n, size_t max_degree, char **out);

/**
 * Parses a form from its JSON file representation.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum QfStatus qf_form_from_json(const char *json, struct QfForm **out);

/**
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum QfStatus qf_form_to_json(const struct QfForm *f, char **out);

/**
 * Degree of the form, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t qf_form_degree(const struct QfForm *f);

/**
 * True for the zero form and for a null handle.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
bool qf_form_is_zero(const struct QfForm *f);

/**
 * # Safety
 * `f` must be null or a live handle, freed once.
 */
void qf_form_free(struct QfForm *f);

/**
 * Number of components, or 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t qf_decomposition_len(const struct QfDecomposition *d);

/**
 * Copy of component `i` (the one multiplied by `L^i`).
 *
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
enum QfStatus qf_decomposition_component(const struct QfDecomposition *d,
                                         size_t i,
                                         struct QfForm **out);

/**
 * # Safety
 * `d` must be a live handle and `out` writable.
 */
enum QfStatus qf_decomposition_residual(const struct QfDecomposition *d, struct QfForm **out);

/**
 * True when no normal-equation step was singular.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
bool qf_decomposition_is_unique(const struct QfDecomposition *d);

/**
 * # Safety
 * `d` must be null or a live handle, freed once.
 */
void qf_decomposition_free(struct QfDecomposition *d);

/**
 * Cohomology report JSON for the torus quotient by the group described in
 * `group_json` (group file format).
 *
 * # Safety
 * `group_json` must be a NUL-terminated string and `out` writable.
 */
enum QfStatus qf_orbifold_betti_json(const char *group_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QFORMS_H */
