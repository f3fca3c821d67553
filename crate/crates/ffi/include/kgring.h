#ifndef KGRING_H
#define KGRING_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum KgStatus {
  KG_STATUS_OK = 0,
  KG_STATUS_INVALID_PARAMETER = 1,
  KG_STATUS_OUT_OF_BOUND_WINDOW = 2,
  KG_STATUS_DOMAIN_ERROR = 3,
  KG_STATUS_NO_REAL_ANGULAR_MOMENTUM = 4,
  KG_STATUS_NEGATIVE_DISCRIMINANT = 5,
  KG_STATUS_NO_BOUND_STATE = 6,
  KG_STATUS_NON_CONVERGENCE = 7,
  KG_STATUS_NULL_POINTER = 8,
  KG_STATUS_PANIC = 9,
} KgStatus;

/**
 * Opaque model handle.
 */
typedef struct KgParams KgParams;

/**
 * Opaque solved-state handle.
 */
typedef struct KgState KgState;

/**
 * Scalar summary of a solved state.
 */
typedef struct KgStateInfo {
  double energy;
  /**
   * `E - mu`.
   */
  double binding;
  double j;
  double j_prime;
  double m_prime;
  double zeta;
  double eps;
  /**
   * Radial normalization constant.
   */
  double radial_norm;
  /**
   * Polar normalization constant.
   */
  double polar_norm;
  /**
   * Sign-change brackets seen by the solver; more than one means several roots.
   */
  size_t brackets;
} KgStateInfo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Kratzer plus ring-shaped model. On success `*out` owns a new handle.
 */
enum KgStatus kg_params_new_kratzer(double mu,
                                    double a0,
                                    double r0,
                                    double c,
                                    uint32_t d,
                                    struct KgParams **out);

/**
 * Coulomb (`B = 0`) plus ring-shaped model.
 */
enum KgStatus kg_params_new_coulomb(double mu,
                                    double a,
                                    double c,
                                    uint32_t d,
                                    struct KgParams **out);

/**
 * Release a model handle. Null is ignored.
 */
void kg_params_free(struct KgParams *p);

/**
 * Solve for the state `(n, ntheta, m)`. On success `*out` owns a new handle.
 */
enum KgStatus kg_solve(const struct KgParams *p,
                       uint32_t n,
                       uint32_t ntheta,
                       uint32_t m,
                       struct KgState **out);

/**
 * Release a state handle. Null is ignored.
 */
void kg_state_free(struct KgState *s);

enum KgStatus kg_state_info(const struct KgState *s, struct KgStateInfo *out);

/**
 * Energy of a state, or NaN for a null handle.
 */
double kg_state_energy(const struct KgState *s);

/**
 * Normalized radial function `R(r)`, `r > 0`.
 */
enum KgStatus kg_state_radial(const struct KgState *s, double r, double *out);

/**
 * Normalized polar function `H(θ)`, `θ ∈ [0, π]`.
 */
enum KgStatus kg_state_polar(const struct KgState *s, double theta, double *out);

/**
 * `ψ(r, θ, φ)` with phase `exp(+imφ)`, written as real and imaginary parts.
 */
enum KgStatus kg_state_total(const struct KgState *s,
                             double r,
                             double theta,
                             double phi,
                             double *re,
                             double *im);

/**
 * Closed-form Coulomb energy `mu (1 - 2 q²e² / (q²e² + N²))`, `N = 2n + 2 ell + D - 1`.
 */
double kg_coulomb_energy(double mu, double qe_sq, uint32_t n, double ell, uint32_t d);

/**
 * Nonrelativistic energy of the same potential.
 */
enum KgStatus kg_nonrel_energy(const struct KgParams *p,
                               uint32_t n,
                               uint32_t ntheta,
                               uint32_t m,
                               double *out);

/**
 * Static NUL-terminated name of a status code.
 */
const char *kg_status_str(enum KgStatus status);

/**
 * Copy the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len - 1` bytes). Returns the full message length; pass a
 * null `buf` to query it.
 */
size_t kg_last_error(char *buf, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KGRING_H */
