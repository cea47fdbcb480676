#ifndef THERMOSEP_H
#define THERMOSEP_H

/* Generated by cbindgen from the thermosep-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum ThermosepStatus {
  THERMOSEP_STATUS_OK = 0,
  THERMOSEP_STATUS_DOMAIN = 1,
  THERMOSEP_STATUS_SINGULAR = 2,
  THERMOSEP_STATUS_TRAJECTORY = 3,
  THERMOSEP_STATUS_CONVERGENCE = 4,
  THERMOSEP_STATUS_NUMERICAL = 5,
  THERMOSEP_STATUS_CONFIG = 6,
  THERMOSEP_STATUS_IO = 7,
  THERMOSEP_STATUS_NULL_POINTER = 8,
  THERMOSEP_STATUS_PANIC = 9,
} ThermosepStatus;

/**
 * The geodesics found by [`thermosep_find_geodesics`], shortest first.
 */
typedef struct ThermosepGeodesics ThermosepGeodesics;

/**
 * System parameters.
 */
typedef struct ThermosepParams ThermosepParams;

/**
 * A sampled protocol `s -> (x_l, x_r)`.
 */
typedef struct ThermosepProtocol ThermosepProtocol;

/**
 * A simulated run.
 */
typedef struct ThermosepTrajectory ThermosepTrajectory;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len` bytes). Returns the full message length without the
 * terminator, or 0 if there is none.
 *
 * # Safety
 * `buf` must point to `len` writable bytes or be null.
 */
size_t thermosep_last_error_message(char *buf, size_t len);

/**
 * Reference parameter set (never fails).
 */
struct ThermosepParams *thermosep_params_reference(void);

/**
 * New parameter set; `eps_beta = 1 - eps_alpha`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum ThermosepStatus thermosep_params_new(double n_total,
                                          double t_bath_k,
                                          double eps_alpha,
                                          double tau_alpha_s,
                                          double tau_beta_s,
                                          double tau_h_s,
                                          struct ThermosepParams **out);

/**
 * # Safety
 * `p` must come from this library (or be null) and not be used afterwards.
 */
void thermosep_params_free(struct ThermosepParams *p);

/**
 * Metric components `[g_ll, g_lr, g_rr]` (J s) at `(x_l, x_r)`.
 *
 * # Safety
 * `params` valid; `out` points to 3 writable doubles.
 */
enum ThermosepStatus thermosep_metric(const struct ThermosepParams *params,
                                      double x_l,
                                      double x_r,
                                      double *out);

/**
 * Thermodynamic length of the diagonal from the origin to `(x_end, x_end)`.
 *
 * # Safety
 * `params` and `out` valid.
 */
enum ThermosepStatus thermosep_symmetric_length(const struct ThermosepParams *params,
                                                double x_end,
                                                double *out);

/**
 * Quasi-static work to complete separation at the mixture fractions, J.
 *
 * # Safety
 * `params` and `out` valid.
 */
enum ThermosepStatus thermosep_quasi_static_work(const struct ThermosepParams *params, double *out);

/**
 * Protocol from `n` samples `(s[i], x_l[i], x_r[i])`.
 *
 * # Safety
 * The arrays hold `n` doubles each; `out` valid.
 */
enum ThermosepStatus thermosep_protocol_new(const double *s,
                                            const double *x_l,
                                            const double *x_r,
                                            size_t n,
                                            struct ThermosepProtocol **out);

/**
 * Constant-speed protocol along the diagonal with `n` samples.
 *
 * # Safety
 * `params` and `out` valid.
 */
enum ThermosepStatus thermosep_protocol_symmetric(const struct ThermosepParams *params,
                                                  size_t n,
                                                  struct ThermosepProtocol **out);

/**
 * Number of samples in a protocol (0 for null).
 *
 * # Safety
 * `protocol` valid or null.
 */
size_t thermosep_protocol_len(const struct ThermosepProtocol *protocol);

/**
 * Copies the samples into caller arrays of length `thermosep_protocol_len`.
 *
 * # Safety
 * Each array must hold `thermosep_protocol_len(protocol)` doubles.
 */
enum ThermosepStatus thermosep_protocol_copy(const struct ThermosepProtocol *protocol,
                                             double *s,
                                             double *x_l,
                                             double *x_r);

/**
 * Thermodynamic length of a protocol's path.
 *
 * # Safety
 * All pointers valid.
 */
enum ThermosepStatus thermosep_path_length(const struct ThermosepParams *params,
                                           const struct ThermosepProtocol *protocol,
                                           double *out);

/**
 * # Safety
 * `p` must come from this library (or be null) and not be used afterwards.
 */
void thermosep_protocol_free(struct ThermosepProtocol *p);

/**
 * All geodesics from the origin to the parameter set's target, scanning
 * `n_scan` initial angles.
 *
 * # Safety
 * `params` and `out` valid.
 */
enum ThermosepStatus thermosep_find_geodesics(const struct ThermosepParams *params,
                                              size_t n_scan,
                                              struct ThermosepGeodesics **out);

/**
 * Number of geodesics in the set (0 for null).
 *
 * # Safety
 * `g` valid or null.
 */
size_t thermosep_geodesics_count(const struct ThermosepGeodesics *g);

/**
 * Length, terminal gap and initial angle of geodesic `index`.
 *
 * # Safety
 * `g` valid; out-pointers valid.
 */
enum ThermosepStatus thermosep_geodesic_info(const struct ThermosepGeodesics *g,
                                             size_t index,
                                             double *length,
                                             double *terminal_gap,
                                             double *theta0);

/**
 * Constant-speed protocol of geodesic `index` on `n` uniform samples.
 *
 * # Safety
 * `g` and `out` valid.
 */
enum ThermosepStatus thermosep_geodesic_protocol(const struct ThermosepGeodesics *g,
                                                 size_t index,
                                                 size_t n,
                                                 struct ThermosepProtocol **out);

/**
 * # Safety
 * `g` must come from this library (or be null) and not be used afterwards.
 */
void thermosep_geodesics_free(struct ThermosepGeodesics *g);

/**
 * Simulates `protocol` in operation time `tau_s`.
 *
 * # Safety
 * All pointers valid.
 */
enum ThermosepStatus thermosep_evolve(const struct ThermosepParams *params,
                                      const struct ThermosepProtocol *protocol,
                                      double tau_s,
                                      struct ThermosepTrajectory **out);

/**
 * Total and excess work of a run, J.
 *
 * # Safety
 * All pointers valid.
 */
enum ThermosepStatus thermosep_trajectory_work(const struct ThermosepTrajectory *tr,
                                               double *total_work,
                                               double *excess_work);

/**
 * Number of output samples (0 for null).
 *
 * # Safety
 * `tr` valid or null.
 */
size_t thermosep_trajectory_len(const struct ThermosepTrajectory *tr);

/**
 * Copies the samples as rows of 7 doubles
 * `(t_s, x_l, x_r, n_alpha_l, n_beta_r, temperature_k, work_j)` into `rows`,
 * which must hold `7 * thermosep_trajectory_len(tr)` doubles.
 *
 * # Safety
 * `tr` valid; `rows` large enough.
 */
enum ThermosepStatus thermosep_trajectory_copy(const struct ThermosepTrajectory *tr, double *rows);

/**
 * # Safety
 * `tr` must come from this library (or be null) and not be used afterwards.
 */
void thermosep_trajectory_free(struct ThermosepTrajectory *tr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* THERMOSEP_H */
