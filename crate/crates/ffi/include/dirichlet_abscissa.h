#ifndef DIRICHLET_ABSCISSA_H
#define DIRICHLET_ABSCISSA_H

/* Generated by cbindgen from the dirichlet-abscissa-ffi crate. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Sample scales at every power of two from 16 up to the truncation
 * length.  The right default.
 */
#define DA_GRID_DYADIC 0

/**
 * The dyadic scales interleaved with scales near powers of three.  Use
 * for sequences supported on powers of 3, where doubling the cut often
 * crosses no new support point.
 */
#define DA_GRID_DYADIC_THREE_ADIC 1

/**
 * Status code returned by every fallible function.
 *
 * `DA_STATUS_OK` is zero, so `if (da_...(...))` reads as "if it failed".
 */
typedef enum {
  /**
   * Success.  Output parameters have been written.
   */
  DA_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  DA_STATUS_NULL_ARGUMENT = 1,
  /**
   * An argument was malformed: a zero length, an unknown grid kind,
   * an out-of-range index, a non-UTF-8 path.
   */
  DA_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A numeric parameter lies outside its admissible range.
   */
  DA_STATUS_DOMAIN_ERROR = 3,
  /**
   * An operation needing multiplicative structure was given data
   * that fails the check, or a construction failed a postcondition.
   */
  DA_STATUS_STRUCTURE_ERROR = 4,
  /**
   * The input carries no signal (for example, an identically zero
   * sequence), so the requested statistic does not exist.
   */
  DA_STATUS_DEGENERATE_INPUT = 5,
  /**
   * Too few usable sample points to fit the growth rate.
   */
  DA_STATUS_INSUFFICIENT_DATA = 6,
  /**
   * An underlying file operation failed.
   */
  DA_STATUS_IO_ERROR = 7,
  /**
   * A file was read but its contents did not parse.
   */
  DA_STATUS_PARSE_ERROR = 8,
  /**
   * A panic was caught at the boundary; this is a bug in the library.
   */
  DA_STATUS_INTERNAL_ERROR = 9,
} DaStatus;

/**
 * Opaque handle to a finite truncation `a_1, ..., a_N` of a coefficient
 * sequence.  Create with a `da_series_*` constructor, release with
 * [`da_series_free`].
 */
typedef struct DaSeries DaSeries;

/**
 * Abscissa estimate and its diagnostics, mirroring the library's result
 * struct field for field.
 */
typedef struct {
  /**
   * The abscissa estimate: the tail ratio clamped at zero.
   */
  double estimate;
  /**
   * Raw limsup surrogate before clamping, `max y / log x` over the
   * tail of the sample trail.
   */
  double tail_ratio;
  /**
   * Least-squares slope of the running maximum against `log x` on
   * the same tail; a consistency diagnostic, not the estimate.
   */
  double envelope_slope;
  /**
   * Number of `(x, log statistic)` samples that entered the fit.
   */
  uintptr_t sample_count;
  /**
   * True when the raw tail ratio was negative and the estimate was
   * clamped to zero (the series converges at the origin, so the
   * abscissa is not observable from growth).
   */
  bool clamped;
} DaEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the library as a static NUL-terminated string.  Never NULL;
 * do not free.
 */
const char *da_version(void);

/**
 * Description of the most recent failure on the calling thread, as a
 * NUL-terminated string.  Empty (not NULL) if the last call succeeded.
 * The pointer is invalidated by the next library call on this thread;
 * copy the string if it must outlive that.
 */
const char *da_last_error_message(void);

/**
 * The sequence `a_n = 1` for all `n`, truncated at `n`.
 *
 * # Safety
 *
 * `out` must be valid for writing one pointer.
 */
DaStatus da_series_ones(uintptr_t n, DaSeries **out);

/**
 * The non-principal character mod 3: `+1, -1, 0` repeating.
 *
 * # Safety
 *
 * `out` must be valid for writing one pointer.
 */
DaStatus da_series_character_mod3(uintptr_t n, DaSeries **out);

/**
 * The lacunary sequence supported on powers of three with
 * `a_{3^k} = 3^{(1 - alpha) k}`.  Requires `alpha` in `[0, 1]`.
 *
 * # Safety
 *
 * `out` must be valid for writing one pointer.
 */
DaStatus da_series_lacunary3(double alpha, uintptr_t n, DaSeries **out);

/**
 * The gap family: the lacunary sequence of [`da_series_lacunary3`]
 * convolved with the character mod 3, a completely multiplicative
 * sequence whose simple and absolute abscissas differ by `alpha`.
 * Requires `alpha` in `[0, 1]`.
 *
 * # Safety
 *
 * `out` must be valid for writing one pointer.
 */
DaStatus da_series_gap_family(double alpha, uintptr_t n, DaSeries **out);

/**
 * The random Euler product `prod_p (1 + eps_p p^{-s})`: squarefree
 * support, `a_n = prod_{p | n} eps_p`, with each sign `eps_p` uniform
 * on `{+1, -1}` and derived deterministically from `seed`.
 *
 * # Safety
 *
 * `out` must be valid for writing one pointer.
 */
DaStatus da_series_random_signs(uint64_t seed, uintptr_t n, DaSeries **out);

/**
 * The all-minus instance of the random-sign model: `eps_p = -1` at
 * every prime, which reproduces the Möbius function exactly (the model
 * is supported on squarefree `n` with `a_n = prod_{p | n} eps_p`).
 *
 * # Safety
 *
 * `out` must be valid for writing one pointer.
 */
DaStatus da_series_all_minus_signs(uintptr_t n, DaSeries **out);

/**
 * The Möbius function `mu(n)`.
 *
 * # Safety
 *
 * `out` must be valid for writing one pointer.
 */
DaStatus da_series_mobius(uintptr_t n, DaSeries **out);

/**
 * Read a series from a CSV file with header `n,re,im` and rows for
 * consecutive `n` starting at 1 (the format written by
 * [`da_series_write_csv`] and by the CLI's `gen` subcommand).
 *
 * # Safety
 *
 * `path` must be a valid NUL-terminated string and `out` valid for
 * writing one pointer.
 */
DaStatus da_series_from_csv(const char *path, DaSeries **out);

/**
 * Write a series to a CSV file in the `n,re,im` format, with full
 * round-trip precision.
 *
 * # Safety
 *
 * `series` must be a live handle and `path` a valid NUL-terminated
 * string.
 */
DaStatus da_series_write_csv(const DaSeries *series, const char *path);

/**
 * Number of coefficients in the truncation.  Returns 0 for a NULL
 * handle.
 *
 * # Safety
 *
 * `series` must be NULL or a live handle.
 */
uintptr_t da_series_len(const DaSeries *series);

/**
 * Fetch the coefficient `a_n` (1-based, so `n = 1` is the first).
 *
 * # Safety
 *
 * `series` must be a live handle; `re` and `im` must be valid for
 * writing one `double` each.
 */
DaStatus da_series_get(const DaSeries *series, uintptr_t n, double *re, double *im);

/**
 * New handle with coefficients `a_n / n^delta`: the vertical shift that
 * moves every abscissa down by `delta`.  Requires finite `delta`.
 *
 * # Safety
 *
 * `series` must be a live handle and `out` valid for writing one
 * pointer.
 */
DaStatus da_series_shifted(const DaSeries *series, double delta, DaSeries **out);

/**
 * Release a handle.  NULL is a no-op.  Do not use the handle afterward.
 *
 * # Safety
 *
 * `series` must be NULL or a handle not previously freed.
 */
void da_series_free(DaSeries *series);

/**
 * Estimate the abscissa of convergence from the growth of partial sums
 * along the chosen grid (`DA_GRID_*`).
 *
 * # Safety
 *
 * `series` must be a live handle and `out` valid for writing one
 * `DaEstimate`.
 */
DaStatus da_sigma_simple(const DaSeries *series, uint32_t grid_kind, DaEstimate *out);

/**
 * Estimate the abscissa of absolute convergence from the growth of
 * absolute partial sums along the chosen grid.
 *
 * # Safety
 *
 * `series` must be a live handle and `out` valid for writing one
 * `DaEstimate`.
 */
DaStatus da_sigma_absolute(const DaSeries *series, uint32_t grid_kind, DaEstimate *out);

/**
 * Estimate the abscissa of uniform convergence: each truncation is
 * lifted to a polynomial on the polytorus and its sup-norm found by
 * multistart coordinate ascent.  Pass `restarts = 0` or `sweeps = 0`
 * to use the built-in defaults (32 restarts, 200 sweeps); `seed`
 * determinizes the restart points.  This is by far the most expensive
 * of the three estimators.
 *
 * # Safety
 *
 * `series` must be a live handle and `out` valid for writing one
 * `DaEstimate`.
 */
DaStatus da_sigma_uniform(const DaSeries *series,
                          uint32_t grid_kind,
                          uintptr_t restarts,
                          uintptr_t sweeps,
                          uint64_t seed,
                          DaEstimate *out);

/**
 * The sharp constant `C(r)` relating a power series' coefficient sum at
 * radius `r` to its sup-norm on the unit circle: `1` for `r <= 1/3`,
 * `1/sqrt(1 - r^2)` for `1/3 < r < 1`.  Requires `r` in `[0, 1)`.
 *
 * # Safety
 *
 * `out` must be valid for writing one `double`.
 */
DaStatus da_bohr_constant(double r, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIRICHLET_ABSCISSA_H */
