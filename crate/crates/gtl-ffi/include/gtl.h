#ifndef GTL_H
#define GTL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call.
 */
typedef enum GtlStatus {
  GTL_STATUS_OK = 0,
  /**
   * A well-formed input with a negative answer: not certified, proof rejected.
   */
  GTL_STATUS_REJECTED = 1,
  GTL_STATUS_NULL_ARGUMENT = 2,
  GTL_STATUS_INVALID_UTF8 = 3,
  GTL_STATUS_SYNTAX = 4,
  /**
   * The formula is outside the fragment the call accepts.
   */
  GTL_STATUS_NOT_CLASSICAL = 5,
  /**
   * Malformed model, system, witness or proof JSON.
   */
  GTL_STATUS_BAD_INPUT = 6,
  GTL_STATUS_EXHAUSTED = 7,
  GTL_STATUS_PANIC = 8,
} GtlStatus;

/**
 * Outcome of [`gtl_decide`].
 */
typedef enum GtlVerdict {
  GTL_VERDICT_VALID = 0,
  GTL_VERDICT_FALSIFIABLE = 1,
  GTL_VERDICT_EXHAUSTED = 3,
} GtlVerdict;

/**
 * A parsed formula.
 */
typedef struct GtlFormula GtlFormula;

/**
 * A falsifiability witness.
 */
typedef struct GtlWitness GtlWitness;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *gtl_version(void);

/**
 * Message for the last failed call on this thread, or the reason behind an
 * exhausted verdict; empty otherwise.
 * The pointer stays valid until the next call on the same thread.
 */
const char *gtl_last_error(void);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void gtl_string_free(char *s);

/**
 * # Safety
 * `src` must be a nul-terminated string; `out` must be writable.
 */
enum GtlStatus gtl_formula_parse(const char *src, struct GtlFormula **out);

/**
 * # Safety
 * `f` must come from this library, or be null.
 */
void gtl_formula_free(struct GtlFormula *f);

/**
 * Prints `f` in ASCII, or with logical glyphs when `unicode` is nonzero.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum GtlStatus gtl_formula_print(const struct GtlFormula *f, int32_t unicode, char **out);

/**
 * Negative translation of a classical formula.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum GtlStatus gtl_translate(const struct GtlFormula *f, struct GtlFormula **out);

/**
 * Decides validity. `max_states` of zero means no cap beyond
 * `GTL_MAX_STATES`. A witness is stored in `witness` when the formula is
 * falsifiable and `witness` is not null; otherwise it is set to null.
 *
 * # Safety
 * `f` must be a live handle; `verdict` must be writable; `witness` may be null.
 */
enum GtlStatus gtl_decide(const struct GtlFormula *f,
                          size_t max_states,
                          enum GtlVerdict *verdict,
                          struct GtlWitness **witness);

/**
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum GtlStatus gtl_witness_from_json(const char *json, struct GtlWitness **out);

/**
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum GtlStatus gtl_witness_to_json(const struct GtlWitness *w, char **out);

/**
 * `GTL_STATUS_OK` when every clause holds, `GTL_STATUS_REJECTED` with the
 * first failing clause in [`gtl_last_error`] otherwise.
 *
 * # Safety
 * `w` must be a live handle.
 */
enum GtlStatus gtl_witness_certify(const struct GtlWitness *w);

/**
 * # Safety
 * `w` must come from this library, or be null.
 */
void gtl_witness_free(struct GtlWitness *w);

/**
 * Evaluates `f` on a model given as JSON. Real-valued models yield a
 * rational such as `"1/2"`; bi-relational ones yield `"true"` or `"false"`
 * at `world` (ignored for real models).
 *
 * # Safety
 * `model_json` must be a nul-terminated string; `f` a live handle; `out` writable.
 */
enum GtlStatus gtl_eval(const char *model_json,
                        const struct GtlFormula *f,
                        size_t time,
                        size_t world,
                        char **out);

/**
 * `GTL_STATUS_OK` for a correct proof, `GTL_STATUS_REJECTED` with the
 * offending step in [`gtl_last_error`] otherwise.
 *
 * # Safety
 * `proof_json` must be a nul-terminated string.
 */
enum GtlStatus gtl_check_proof(const char *proof_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GTL_H */
