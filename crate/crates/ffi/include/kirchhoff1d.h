#ifndef KIRCHHOFF1D_H
#define KIRCHHOFF1D_H

/* Auto-generated by cbindgen from kirchhoff1d-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Branch selector mirrored from the core library: 0 unique, 1 lower, 2 upper.
 */
typedef enum K1dBranch {
  K1dBranchUnique = 0,
  K1dBranchLower = 1,
  K1dBranchUpper = 2,
} K1dBranch;

/**
 * Status code of every fallible C entry point.
 */
typedef enum K1dStatus {
  K1dOk = 0,
  /**
   * Input outside an operation's domain (bad p, x, range, grid size).
   */
  K1dDomainError = 1,
  /**
   * Parameter range where the requested quantity is undefined.
   */
  K1dRegimeError = 2,
  /**
   * Solver or quadrature non-convergence / f64 range exhaustion.
   */
  K1dNumericError = 3,
  /**
   * A required pointer argument was null.
   */
  K1dNullArgument = 4,
} K1dStatus;

/**
 * Opaque sampled profile handle; free with [`k1d_profile_free`].
 */
typedef struct K1dProfile K1dProfile;

/**
 * The time-map integral triple (A_p, B_p, C_p) with its error estimate.
 */
typedef struct K1dTimeMapConstants {
  double p;
  double a_p;
  double b_p;
  double c_p;
  double est_error;
} K1dTimeMapConstants;

/**
 * One (λ, ξ) branch point of the bifurcation diagram.
 */
typedef struct K1dBranchPoint {
  double lambda;
  double xi;
  double grad_norm;
  enum K1dBranch branch;
} K1dBranchPoint;

/**
 * Finite-difference residual report for a sampled solution.
 */
typedef struct K1dResidualReport {
  double max_residual;
  double nonlocal_gap;
  double grid_h;
  size_t nodes_checked;
} K1dResidualReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the most recent error message of this thread into `buf`
 * (truncated, always NUL-terminated) and returns the full length in
 * bytes including the terminator. A zero-length message means no error
 * has been recorded yet.
 *
 * # Safety
 * `buf` must point to `len` writable bytes, or be null (then only the
 * required length is returned).
 */
size_t k1d_last_error_message(char *buf, size_t len);

/**
 * A_p, B_p, C_p bundled with their quadrature error estimate.
 *
 * # Safety
 * `out` must point to a writable `K1dTimeMapConstants`.
 */
enum K1dStatus k1d_time_map_constants(double p, struct K1dTimeMapConstants *out);

/**
 * η_p = W_p(0).
 *
 * # Safety
 * `out` must point to a writable f64.
 */
enum K1dStatus k1d_eta(double p, double *out);

/**
 * ‖W_p'‖.
 *
 * # Safety
 * `out` must point to a writable f64.
 */
enum K1dStatus k1d_grad_norm(double p, double *out);

/**
 * W_p(x) for |x| ≤ 1.
 *
 * # Safety
 * `out` must point to a writable f64.
 */
enum K1dStatus k1d_profile_value(double p, double x, double *out);

/**
 * First eigenvalue μ₁ of the nonlocal eigenproblem (p > 1).
 *
 * # Safety
 * `out` must point to a writable f64.
 */
enum K1dStatus k1d_mu1(double p, double *out);

/**
 * ζ = φ₁(0) of the nonlocal eigenproblem (p > 1).
 *
 * # Safety
 * `out` must point to a writable f64.
 */
enum K1dStatus k1d_zeta(double p, double *out);

/**
 * Bifurcation curve value λ(ξ).
 *
 * # Safety
 * `out` must point to a writable f64.
 */
enum K1dStatus k1d_lambda_of_xi(double a, double b, double p, double xi, double *out);

/**
 * All solution branches at λ. Writes up to `cap` entries into `out_buf`
 * (entries beyond `cap` are dropped) and always stores the full branch
 * count in `out_count`; zero branches is a success. `out_buf` may be
 * null to query the count alone.
 *
 * # Safety
 * `out_buf`, unless null, must point to `cap` writable `K1dBranchPoint`s;
 * `out_count` must point to a writable usize.
 */
enum K1dStatus k1d_solve(double a,
                         double b,
                         double p,
                         double lambda,
                         struct K1dBranchPoint *out_buf,
                         size_t cap,
                         size_t *out_count);

/**
 * Samples W_p on n uniform nodes (n odd ≥ 3) into a new profile handle.
 *
 * # Safety
 * `out` must point to a writable `K1dProfile*`.
 */
enum K1dStatus k1d_profile_sample(double p, size_t n, struct K1dProfile **out);

/**
 * Samples the exact solution u_λ of the requested branch.
 *
 * # Safety
 * `out` must point to a writable `K1dProfile*`.
 */
enum K1dStatus k1d_solution_profile(double a,
                                    double b,
                                    double p,
                                    double lambda,
                                    enum K1dBranch branch,
                                    size_t n,
                                    struct K1dProfile **out);

/**
 * Independent shooting-method construction of W_p (n odd ≥ 101).
 *
 * # Safety
 * `out` must point to a writable `K1dProfile*`.
 */
enum K1dStatus k1d_shoot_profile(double p, size_t n, struct K1dProfile **out);

/**
 * Number of nodes in a profile; 0 for a null handle.
 *
 * # Safety
 * `handle` must be null or a live pointer from a profile constructor.
 */
size_t k1d_profile_len(const struct K1dProfile *handle);

/**
 * Borrowed pointer to the abscissae; valid until the handle is freed.
 *
 * # Safety
 * `handle` must be null or a live pointer from a profile constructor.
 */
const double *k1d_profile_xs(const struct K1dProfile *handle);

/**
 * Borrowed pointer to the profile values; valid until the handle is freed.
 *
 * # Safety
 * `handle` must be null or a live pointer from a profile constructor.
 */
const double *k1d_profile_values(const struct K1dProfile *handle);

/**
 * Sup-norm of the sampled profile; NaN for a null handle.
 *
 * # Safety
 * `handle` must be null or a live pointer from a profile constructor.
 */
double k1d_profile_max_value(const struct K1dProfile *handle);

/**
 * L²-norm of the profile derivative; NaN for a null handle.
 *
 * # Safety
 * `handle` must be null or a live pointer from a profile constructor.
 */
double k1d_profile_grad_norm(const struct K1dProfile *handle);

/**
 * Frees a profile handle; null is a no-op.
 *
 * # Safety
 * `handle` must be null or a live pointer from a profile constructor,
 * not freed before.
 */
void k1d_profile_free(struct K1dProfile *handle);

/**
 * Finite-difference residual of -(b + a‖u'‖²)u'' = λuᵖ on a sampled
 * profile (p is taken from the handle).
 *
 * # Safety
 * `handle` must be a live profile pointer; `out` must be writable.
 */
enum K1dStatus k1d_residual(const struct K1dProfile *handle,
                            double a,
                            double b,
                            double lambda,
                            struct K1dResidualReport *out);

/**
 * Minimum sampled Rayleigh quotient over seeded random trials (p > 1).
 *
 * # Safety
 * `out` must point to a writable f64.
 */
enum K1dStatus k1d_rayleigh_sample(double p, size_t n_trials, uint64_t seed, double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* KIRCHHOFF1D_H */
