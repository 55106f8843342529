#ifndef ENSEMBLE_SWAP_H
#define ENSEMBLE_SWAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum EsStatus {
  ES_STATUS_OK = 0,
  ES_STATUS_NULL_POINTER = 1,
  ES_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Evolution failed its accuracy check or produced non-finite values.
   */
  ES_STATUS_NUMERICAL = 3,
  ES_STATUS_OUT_OF_RANGE = 4,
  ES_STATUS_PANIC = 5,
} EsStatus;

typedef enum EsBackend {
  /**
   * Full interaction Hamiltonian including the drive.
   */
  ES_BACKEND_FULL = 0,
  /**
   * Time-averaged beam-splitter Hamiltonian.
   */
  ES_BACKEND_EFFECTIVE = 1,
} EsBackend;

/**
 * Opaque system parameters.
 */
typedef struct EsParams EsParams;

/**
 * Opaque state vector.
 */
typedef struct EsState EsState;

typedef struct EsGateSummary {
  double fidelity;
  double p_loss;
  double gate_time;
  double xi_re;
  double xi_im;
} EsGateSummary;

/**
 * Basis label. `atomic` is 0 for G and k for Phi_k.
 */
typedef struct EsLabel {
  uint32_t atomic;
  uint32_t n_a;
  uint32_t n_b;
} EsLabel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Uniform couplings `g`, drive `omega = omega_ratio * sqrt(n_atoms) * g`,
 * no damping.
 */
enum EsStatus es_params_new(uint64_t n_atoms, double g, double omega_ratio, struct EsParams **out);

/**
 * `N = 4e4`, `omega = 20 sqrt(N) g`, no damping.
 */
enum EsStatus es_params_new_reference(double g, struct EsParams **out);

/**
 * Releases a handle from `es_params_new*`. Null is ignored.
 */
void es_params_free(struct EsParams *params);

/**
 * Complex single-atom couplings. The handle is left unchanged on error.
 */
enum EsStatus es_params_set_couplings(struct EsParams *params,
                                      double g_a_re,
                                      double g_a_im,
                                      double g_b_re,
                                      double g_b_im);

enum EsStatus es_params_set_drive(struct EsParams *params, double omega, double phi);

enum EsStatus es_params_set_decay(struct EsParams *params,
                                  double kappa_a,
                                  double kappa_b,
                                  double gamma_1,
                                  double gamma_2);

/**
 * `xi = N conj(g_a) g_b e^{-i phi} / omega`.
 */
enum EsStatus es_effective_coupling(const struct EsParams *params, double *out_re, double *out_im);

/**
 * `pi / (2 |xi|)`.
 */
enum EsStatus es_gate_time(const struct EsParams *params, double *out);

/**
 * Swap gate on `(|00> + |01> + |10> + |11>)/2` for one gate time.
 */
enum EsStatus es_run_swap_gate(const struct EsParams *params,
                               enum EsBackend backend,
                               bool include_decay,
                               struct EsGateSummary *out);

/**
 * Probability of finding the photon in mode b at time `t` after starting
 * in mode a. Damping applies if the parameters carry any.
 */
enum EsStatus es_conversion_efficiency(const struct EsParams *params,
                                       enum EsBackend backend,
                                       double t,
                                       double *out);

/**
 * Evolves the logical input `|n_a, n_b>` (each 0 or 1) for time `t` and
 * returns the output state. Release it with `es_state_free`.
 */
enum EsStatus es_truth_table_output(const struct EsParams *params,
                                    enum EsBackend backend,
                                    uint32_t n_a,
                                    uint32_t n_b,
                                    double t,
                                    struct EsState **out);

/**
 * Basis state `|label>` in the two-excitation basis.
 */
enum EsStatus es_state_new_basis(struct EsLabel label, struct EsState **out);

/**
 * Number of amplitudes, or 0 for a null handle.
 */
size_t es_state_len(const struct EsState *state);

enum EsStatus es_state_amplitude(const struct EsState *state,
                                 size_t index,
                                 double *out_re,
                                 double *out_im);

enum EsStatus es_state_label(const struct EsState *state, size_t index, struct EsLabel *out);

enum EsStatus es_state_norm_squared(const struct EsState *state, double *out);

/**
 * Releases a state handle. Null is ignored.
 */
void es_state_free(struct EsState *state);

/**
 * Message for the most recent failure on this thread, or null if the last
 * call succeeded. Valid until the next `es_*` call on this thread.
 */
const char *es_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENSEMBLE_SWAP_H */
