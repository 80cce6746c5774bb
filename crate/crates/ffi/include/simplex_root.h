#ifndef SIMPLEX_ROOT_H
#define SIMPLEX_ROOT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SrStatus {
  SR_STATUS_OK = 0,
  SR_STATUS_NULL_POINTER = 1,
  SR_STATUS_INVALID_ARGUMENT = 2,
  SR_STATUS_DEGENERATE = 3,
  SR_STATUS_OVERFLOW = 4,
  SR_STATUS_UNSUPPORTED_DIMENSION = 5,
  SR_STATUS_OUT_OF_RANGE = 6,
  SR_STATUS_BUFFER_TOO_SMALL = 7,
  SR_STATUS_NOT_CONVERGED = 8,
  SR_STATUS_PANIC = 99,
} SrStatus;

typedef enum SrStopReason {
  SR_STOP_REASON_MAX_STEPS = 0,
  SR_STOP_REASON_OVERFLOW = 1,
  SR_STOP_REASON_RESOLUTION_LIMIT = 2,
} SrStopReason;

// Opaque simplex handle.
typedef struct SrSimplex SrSimplex;

// Opaque trajectory handle, computed in double-double precision.
typedef struct SrTrajectory SrTrajectory;

// Relative residuals of the root's properties for one simplex.
typedef struct SrVerifyReport {
  double circumsphere_residual;
  double gram_residual;
  double min_margin;
  double mc_fraction;
  double container_slack;
  double ratio_slack;
  bool passed;
} SrVerifyReport;

// Scalars of one iterate.
typedef struct SrStep {
  size_t k;
  double inradius;
  double circumradius;
  double ratio;
} SrStep;

// Scalar part of the convergence report.
typedef struct SrReport {
  size_t steps_used;
  bool even_converged;
  bool odd_converged;
  double gap;
  double rho_estimate;
  double center_identity_residual;
} SrReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next `sr_*` call on this thread.
const char *sr_last_error(void);

// Library version as a static NUL-terminated string.
const char *sr_version(void);

// Build a simplex from `(dimension + 1) * dimension` row-major coordinates.
//
// # Safety
// `coords` must point to `len` readable doubles and `out` must be writable.
enum SrStatus sr_simplex_new(size_t dimension,
                             const double *coords,
                             size_t len,
                             struct SrSimplex **out);

// Parse a simplex document (`{"dimension", "vertices", "name"}` JSON).
//
// # Safety
// `json` must be a NUL-terminated string and `out` must be writable.
enum SrStatus sr_simplex_from_json(const char *json, struct SrSimplex **out);

// Seeded random simplex with vertices in `[-1, 1]^dimension` and `r/R >= quality_floor`.
//
// # Safety
// `out` must be writable.
enum SrStatus sr_simplex_random(size_t dimension,
                                uint64_t seed,
                                double quality_floor,
                                struct SrSimplex **out);

// # Safety
// `s` must come from this library and not be freed already; null is ignored.
void sr_simplex_free(struct SrSimplex *s);

// Dimension of the simplex, 0 for a null handle.
//
// # Safety
// `s` must be null or a live handle.
size_t sr_simplex_dimension(const struct SrSimplex *s);

// Copy the vertices, row-major, into `out`.
//
// # Safety
// `s` must be a live handle and `out` must hold `len` doubles.
enum SrStatus sr_simplex_vertices(const struct SrSimplex *s, double *out, size_t len);

// Inscribed sphere: center into `center` (`len >= dimension`), radius into `radius`.
//
// # Safety
// `s` must be a live handle, `center` must hold `len` doubles, `radius` must be writable.
enum SrStatus sr_simplex_insphere(const struct SrSimplex *s,
                                  double *center,
                                  size_t len,
                                  double *radius);

// Circumscribed sphere, as [`sr_simplex_insphere`].
//
// # Safety
// As [`sr_simplex_insphere`].
enum SrStatus sr_simplex_circumsphere(const struct SrSimplex *s,
                                      double *center,
                                      size_t len,
                                      double *radius);

// The root of `s` as a new handle.
//
// # Safety
// `s` must be a live handle and `out` must be writable.
enum SrStatus sr_simplex_root(const struct SrSimplex *s, struct SrSimplex **out);

// Check the root's properties on `s` with `mc_samples` Monte Carlo samples.
//
// # Safety
// `s` must be a live handle and `out` must be writable.
enum SrStatus sr_simplex_verify(const struct SrSimplex *s,
                                double tolerance,
                                size_t mc_samples,
                                uint64_t seed,
                                struct SrVerifyReport *out);

// Iterate the root map up to `max_steps` simplices with Cauchy threshold `tolerance`.
//
// # Safety
// `s` must be a live handle and `out` must be writable.
enum SrStatus sr_iterate(const struct SrSimplex *s,
                         size_t max_steps,
                         double tolerance,
                         bool recenter,
                         struct SrTrajectory **out);

// # Safety
// `t` must come from [`sr_iterate`] and not be freed already; null is ignored.
void sr_trajectory_free(struct SrTrajectory *t);

// Number of iterates, 0 for a null handle.
//
// # Safety
// `t` must be null or a live handle.
size_t sr_trajectory_len(const struct SrTrajectory *t);

// Why the iteration stopped.
//
// # Safety
// `t` must be a live handle and `out` must be writable.
enum SrStatus sr_trajectory_stop(const struct SrTrajectory *t, enum SrStopReason *out);

// Scalars of iterate `index` (0-based; `k = index + 1`).
//
// # Safety
// `t` must be a live handle and `out` must be writable.
enum SrStatus sr_trajectory_step(const struct SrTrajectory *t, size_t index, struct SrStep *out);

// Absolute incenter and circumcenter of iterate `index`, each `dimension` values.
//
// # Safety
// `t` must be a live handle; `incenter` and `circumcenter` must each hold `len` doubles.
enum SrStatus sr_trajectory_centers(const struct SrTrajectory *t,
                                    size_t index,
                                    double *incenter,
                                    double *circumcenter,
                                    size_t len);

// Convergence report; `SR_STATUS_NOT_CONVERGED` if fewer than four iterates exist.
// `even_limit` and `odd_limit` may be null; otherwise each must hold `len` doubles.
//
// # Safety
// `t` must be a live handle and `out` must be writable.
enum SrStatus sr_trajectory_report(const struct SrTrajectory *t,
                                   struct SrReport *out,
                                   double *even_limit,
                                   double *odd_limit,
                                   size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIMPLEX_ROOT_H */
