#ifndef TRISECT_H
#define TRISECT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum TrisectStatus {
  TRISECT_STATUS_OK = 0,
  TRISECT_STATUS_NULL_POINTER = 1,
  TRISECT_STATUS_INVALID_ARGUMENT = 2,
  TRISECT_STATUS_VALIDATION_FAILED = 3,
  TRISECT_STATUS_SOLVER_FAILED = 4,
  TRISECT_STATUS_IO_FAILED = 5,
  TRISECT_STATUS_BUFFER_TOO_SMALL = 6,
  TRISECT_STATUS_PANIC = 7,
} TrisectStatus;

/**
 * Scattering data on the three sample lines plus bound states.
 */
typedef struct TrisectData TrisectData;

/**
 * Sampled potential on a uniform grid.
 */
typedef struct TrisectPotential TrisectPotential;

/**
 * Recovered `P(x)` and `q(x)`.
 */
typedef struct TrisectRecovered TrisectRecovered;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL
 * terminated, truncated to `len`). Returns the full message length.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t trisect_last_error(char *buf, size_t len);

/**
 * `s_p(z)` for `p ∈ {0, 1, 2}`, written to `out[2]`.
 *
 * # Safety
 * `out` must point to two writable doubles.
 */
enum TrisectStatus trisect_special_s(uint32_t p, double re, double im, double *out);

/**
 * The first `count` nonnegative zeros of family `p`, written to `out`.
 *
 * # Safety
 * `out` must point to `count` writable doubles.
 */
enum TrisectStatus trisect_zeros(uint32_t p, size_t count, double *out);

/**
 * Builds a potential from `len` samples `(x[i], q[i])` with ascending `x`,
 * resampled onto `intervals + 1` uniform nodes. `compact` selects compact
 * support; otherwise the tail beyond the last sample is truncated and
 * `decay` bounds the admissible `|λ| < decay/3`.
 *
 * # Safety
 * `x` and `q` must point to `len` doubles; `out` to a writable handle slot.
 */
enum TrisectStatus trisect_potential_new(const double *x,
                                         const double *q,
                                         size_t len,
                                         size_t intervals,
                                         double decay,
                                         bool compact,
                                         struct TrisectPotential **out);

/**
 * Number of grid nodes of a potential, or 0 for a null handle.
 *
 * # Safety
 * `pot` must be null or a live handle.
 */
size_t trisect_potential_len(const struct TrisectPotential *pot);

/**
 * # Safety
 * `pot` must be null or a handle from [`trisect_potential_new`] not yet freed.
 */
void trisect_potential_free(struct TrisectPotential *pot);

/**
 * `(s₂, s₃, c₁)` at `λ`, written to `out[6]` as three (re, im) pairs.
 *
 * # Safety
 * `pot` must be a live handle; `out` must point to six writable doubles.
 */
enum TrisectStatus trisect_scattering_coefficients(const struct TrisectPotential *pot,
                                                   double re,
                                                   double im,
                                                   double alpha,
                                                   double beta,
                                                   double theta_arg,
                                                   double *out);

/**
 * Forward map: bound states within `radius`, then `m` samples per
 * half-line on the three sample lines up to `t_max`.
 *
 * # Safety
 * `pot` must be a live handle; `out` a writable handle slot.
 */
enum TrisectStatus trisect_forward(const struct TrisectPotential *pot,
                                   double alpha,
                                   double beta,
                                   double theta_arg,
                                   double t_max,
                                   size_t m,
                                   double radius,
                                   struct TrisectData **out);

/**
 * Parses scattering data from NUL-terminated JSON.
 *
 * # Safety
 * `json` must be a valid C string; `out` a writable handle slot.
 */
enum TrisectStatus trisect_data_from_json(const char *json, struct TrisectData **out);

/**
 * Serialises scattering data as JSON into `buf` (NUL terminated).
 * `*written` receives the JSON length; when it does not fit, nothing is
 * copied and `BUFFER_TOO_SMALL` is returned.
 *
 * # Safety
 * `data` must be a live handle; `buf` must point to `len` writable bytes.
 */
enum TrisectStatus trisect_data_to_json(const struct TrisectData *data,
                                        char *buf,
                                        size_t len,
                                        size_t *written);

/**
 * Number of bound states, or 0 for a null handle.
 *
 * # Safety
 * `data` must be null or a live handle.
 */
size_t trisect_data_bound_states(const struct TrisectData *data);

/**
 * Checks the admissibility conditions; the message names the violated one.
 *
 * # Safety
 * `data` must be a live handle.
 */
enum TrisectStatus trisect_data_validate(const struct TrisectData *data);

/**
 * # Safety
 * `data` must be null or a handle not yet freed.
 */
void trisect_data_free(struct TrisectData *data);

/**
 * Inverse map on `n + 1` uniform nodes of `[0, x_max]` with the default
 * recovery settings.
 *
 * # Safety
 * `data` must be a live handle; `out` a writable handle slot.
 */
enum TrisectStatus trisect_inverse(const struct TrisectData *data,
                                   double x_max,
                                   size_t n,
                                   struct TrisectRecovered **out);

/**
 * Number of nodes of a recovered potential, or 0 for a null handle.
 *
 * # Safety
 * `rec` must be null or a live handle.
 */
size_t trisect_recovered_len(const struct TrisectRecovered *rec);

/**
 * Copies `x`, `q` and `Re P` into arrays of length `len`, which must equal
 * [`trisect_recovered_len`]. Any output pointer may be null to skip it.
 *
 * # Safety
 * `rec` must be a live handle; non-null outputs must hold `len` doubles.
 */
enum TrisectStatus trisect_recovered_values(const struct TrisectRecovered *rec,
                                            double *x,
                                            double *q,
                                            double *p,
                                            size_t len);

/**
 * # Safety
 * `rec` must be null or a handle not yet freed.
 */
void trisect_recovered_free(struct TrisectRecovered *rec);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRISECT_H */
