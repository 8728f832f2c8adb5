#ifndef KRESCH_H
#define KRESCH_H

/* Generated from the kresch-ffi crate by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of any fallible call. Matches the CLI exit-code contract.
 */
typedef enum KreschStatus {
  /**
   * The call succeeded; outputs are valid.
   */
  KRESCH_STATUS_OK = 0,
  /**
   * The computation ran but a verification or conjecture check failed;
   * the report output is still valid.
   */
  KRESCH_STATUS_CHECK_FAILED = 1,
  /**
   * Mathematically rejected input (non-terminating series, parameter
   * outside its box, pole, empty range).
   */
  KRESCH_STATUS_DOMAIN = 2,
  /**
   * Malformed input: NULL or non-UTF-8 pointer, unparsable rational or
   * sequence text, unknown suite name.
   */
  KRESCH_STATUS_USAGE = 64,
} KreschStatus;

/**
 * Opaque handle to an exact rational sequence.
 */
typedef struct KreschSequence KreschSequence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the message of the most recent failure on this thread, or NULL
 * if the last call succeeded. Free with [`kresch_string_free`].
 */
char *kresch_last_error_message(void);

/**
 * Frees any string returned by this library. NULL is a no-op.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library that has not
 * already been freed.
 */
void kresch_string_free(char *s);

/**
 * Parses a rational from text (any `p/q` or `p`) and writes its canonical
 * form: lowest terms, positive denominator.
 *
 * # Safety
 * `text` must be NULL or point to a NUL-terminated string, and `out`
 * must be NULL or valid for writing one pointer (NULLs fail with
 * `USAGE`, they are not undefined behavior).
 */
enum KreschStatus kresch_rational_normalize(const char *text, char **out);

/**
 * Rising factorial `(a)_n` of a rational `a` given in text form.
 *
 * # Safety
 * `a` must be NULL or point to a NUL-terminated string, and `out` must
 * be NULL or valid for writing one pointer.
 */
enum KreschStatus kresch_rising_factorial(const char *a, uint64_t n, char **out);

/**
 * Binomial coefficient `C(n, k)`; 0 when `k > n`.
 *
 * # Safety
 * `out` must be NULL or valid for writing one pointer.
 */
enum KreschStatus kresch_binomial(uint64_t n, uint64_t k, char **out);

/**
 * Evaluates a terminating hypergeometric series exactly. Numerator and
 * denominator parameters are comma-separated rationals (empty string for
 * none); the argument is a rational. Fails with `DOMAIN` if no numerator
 * parameter is a non-positive integer or a denominator parameter hits a
 * pole within the truncation range.
 *
 * # Safety
 * Each of the three string arguments must be NULL or point to a
 * NUL-terminated string, and `out` must be NULL or valid for writing
 * one pointer.
 */
enum KreschStatus kresch_hyp_evaluate(const char *numerator_params,
                                      const char *denominator_params,
                                      const char *argument,
                                      char **out);

/**
 * `2F1(-n, a; b; 1)` by the closed form `(b-a)_n / (b)_n`.
 *
 * # Safety
 * `a` and `b` must be NULL or point to NUL-terminated strings, and
 * `out` must be NULL or valid for writing one pointer.
 */
enum KreschStatus kresch_chu_vandermonde(uint64_t n, const char *a, const char *b, char **out);

/**
 * Specialized Racah polynomial `R_n(s, T)`; requires
 * `T >= 1`, `0 <= n, s <= T-1`.
 *
 * # Safety
 * `out` must be NULL or valid for writing one pointer.
 */
enum KreschStatus kresch_racah(uint64_t n, uint64_t s, uint64_t t, char **out);

/**
 * Partial inverse transform of the Racah row at `(s, T)` up to index `m`.
 *
 * # Safety
 * `out` must be NULL or valid for writing one pointer.
 */
enum KreschStatus kresch_corollary320_lhs(uint64_t s, uint64_t t, uint64_t m, char **out);

/**
 * Closed form `(-s)_m (s+1)_m / ((1-T)_m (1+T)_m)`.
 *
 * # Safety
 * `out` must be NULL or valid for writing one pointer.
 */
enum KreschStatus kresch_corollary320_rhs(uint64_t s, uint64_t t, uint64_t m, char **out);

/**
 * Parses a sequence from text: one rational per line, `#` comments and
 * blank lines ignored. Returns NULL on parse failure (see
 * [`kresch_last_error_message`]).
 *
 * # Safety
 * `text` must be NULL or point to a NUL-terminated string. A returned
 * non-NULL handle must be released with [`kresch_sequence_free`].
 */
struct KreschSequence *kresch_sequence_parse(const char *text);

/**
 * Frees a sequence handle. NULL is a no-op.
 *
 * # Safety
 * `seq` must be NULL or a handle returned by this library that has not
 * already been freed.
 */
void kresch_sequence_free(struct KreschSequence *seq);

/**
 * Number of entries; 0 for NULL.
 *
 * # Safety
 * `seq` must be NULL or a live handle returned by this library.
 */
uint64_t kresch_sequence_len(const struct KreschSequence *seq);

/**
 * Writes entry `index` in canonical text form.
 *
 * # Safety
 * `seq` must be NULL or a live handle returned by this library, and
 * `out` must be NULL or valid for writing one pointer.
 */
enum KreschStatus kresch_sequence_entry(const struct KreschSequence *seq,
                                        uint64_t index,
                                        char **out);

/**
 * Renders a sequence to its text form (one canonical rational per line,
 * trailing newline). Free with [`kresch_string_free`].
 *
 * # Safety
 * `seq` must be NULL or a live handle returned by this library.
 */
char *kresch_sequence_render(const struct KreschSequence *seq);

/**
 * Applies the tilde transform, returning a new handle (NULL only for a
 * NULL input).
 *
 * # Safety
 * `seq` must be NULL or a live handle returned by this library; the
 * returned handle must be released with [`kresch_sequence_free`].
 */
struct KreschSequence *kresch_sequence_tilde(const struct KreschSequence *seq);

/**
 * Applies the inverse tilde transform, returning a new handle.
 *
 * # Safety
 * `seq` must be NULL or a live handle returned by this library; the
 * returned handle must be released with [`kresch_sequence_free`].
 */
struct KreschSequence *kresch_sequence_tilde_inverse(const struct KreschSequence *seq);

/**
 * Sweeps the boundedness conjecture `|R_n(s,T)| <= 1` over
 * `t_min <= T <= t_max` with `workers` threads and writes the report as
 * JSON. Returns `CHECK_FAILED` (report still written) if any violation
 * was found.
 *
 * # Safety
 * `out` must be NULL or valid for writing one pointer.
 */
enum KreschStatus kresch_sweep_json(uint64_t t_min, uint64_t t_max, size_t workers, char **out);

/**
 * Runs a verification suite (`lemma340`, `c310a`, `c310b`, `kernel`,
 * `c320`, or `all`) and writes the reports as a JSON array. `limit`
 * overrides the suite's default range; pass 0 to keep defaults (`all`
 * always uses defaults). Returns `CHECK_FAILED` (reports still written)
 * if any suite did not pass.
 *
 * # Safety
 * `suite` must be NULL or point to a NUL-terminated string, and `out`
 * must be NULL or valid for writing one pointer.
 */
enum KreschStatus kresch_verify_json(const char *suite, uint64_t limit, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* KRESCH_H */
