/* Copyright 2026 The spinlat authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API of the spinlat library: disordered transverse-field Ising lattices,
 * exact state-vector evolution, generalized-entanglement purities, and
 * disorder-ensemble analysis.
 *
 * Conventions: sites and qubits are 1-based; qubit j is bit j-1 of the basis
 * integer; |0> is the +1 eigenstate of sigma_z. All functions return
 * SPINLAT_OK (0) on success and a negative code on failure; the thread-local
 * message from spinlat_last_error() describes the most recent failure.
 * Handles are freed with their matching *_free function.
 */

#ifndef SPINLAT_H
#define SPINLAT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SPINLAT_OK 0
#define SPINLAT_ERR_INVALID_ARGUMENT -1
#define SPINLAT_ERR_RUNTIME -2

typedef struct spinlat_lattice spinlat_lattice;
typedef struct spinlat_state spinlat_state;
typedef struct spinlat_hamiltonian spinlat_hamiltonian;
typedef struct spinlat_ensemble spinlat_ensemble;

typedef struct spinlat_params {
    double Delta; /* uniform splitting */
    double delta; /* on-site disorder half-width */
    double J;     /* coupling disorder half-width */
} spinlat_params;

enum spinlat_regime {
    SPINLAT_REGIME_PERTURBATIVE = 0,
    SPINLAT_REGIME_FGR = 1,
    SPINLAT_REGIME_ERGODIC = 2,
    SPINLAT_REGIME_ERGODIC_ONLY = 3 /* delta = 0: FGR scales undefined */
};

typedef struct spinlat_scales {
    int n, k;
    double E_B;     /* band center Delta*(2k-n) */
    double N_B;     /* band degeneracy binomial(n,k) */
    double Delta_B; /* band width estimate delta*sqrt(n) */
    double Gamma_F; /* J^2 n / delta */
    double Gamma_E; /* J */
    double J_c;     /* delta/n */
    double J_E;     /* delta/n^(1/4) */
    int regime;     /* enum spinlat_regime */
} spinlat_scales;

enum spinlat_backend {
    SPINLAT_BACKEND_AUTO = 0,
    SPINLAT_BACKEND_DENSE = 1,
    SPINLAT_BACKEND_CHEBYSHEV = 2
};

const char* spinlat_version(void);
const char* spinlat_last_error(void);

/* ---- lattice ---- */

int spinlat_lattice_create(int rows, int cols, spinlat_lattice** out);
void spinlat_lattice_free(spinlat_lattice* lat);
int spinlat_lattice_n(const spinlat_lattice* lat);
int spinlat_lattice_bond_count(const spinlat_lattice* lat);
/* out holds 2*bond_count site indices (a0,b0,a1,b1,...). */
int spinlat_lattice_bonds(const spinlat_lattice* lat, int* out);
/* out holds n entries (pair of qubit 1, pair of qubit 2, ...). */
int spinlat_lattice_pairing(const spinlat_lattice* lat, int* out);

int spinlat_scales_compute(const spinlat_params* params, int n, int k,
                           spinlat_scales* out);

/* ---- states ---- */

int spinlat_state_create_basis(int n, uint64_t q, spinlat_state** out);
int spinlat_state_create_central(int n, spinlat_state** out);
int spinlat_state_create_bell(int n, int n_bell, spinlat_state** out);
int spinlat_state_create_w(int n, spinlat_state** out);
int spinlat_state_create_product(const char* symbols, spinlat_state** out);
/* designator: central | bell:<n_B> | w | product:<symbols> | basis:<bits> */
int spinlat_state_create(int n, const char* designator, spinlat_state** out);
void spinlat_state_free(spinlat_state* psi);
int spinlat_state_n(const spinlat_state* psi);
size_t spinlat_state_dim(const spinlat_state* psi);
/* re/im each hold 2^n entries. */
int spinlat_state_amplitudes(const spinlat_state* psi, double* re, double* im);

/* ---- Hamiltonian (one disorder realization) ---- */

int spinlat_hamiltonian_create(const spinlat_lattice* lat,
                               const spinlat_params* params, uint64_t seed,
                               spinlat_hamiltonian** out);
void spinlat_hamiltonian_free(spinlat_hamiltonian* ham);
/* on-site shifts delta_j, n entries */
int spinlat_hamiltonian_deltas(const spinlat_hamiltonian* ham, double* out);
/* bond couplings J_ij, bond_count entries aligned with spinlat_lattice_bonds */
int spinlat_hamiltonian_couplings(const spinlat_hamiltonian* ham, double* out);
/* H|psi>, unnormalized */
int spinlat_hamiltonian_apply(const spinlat_hamiltonian* ham,
                              const spinlat_state* psi, spinlat_state** out);

/* ---- evolution and measures ---- */

/* Evolves psi0 over the grid (times[0] must be 0, strictly increasing) and
 * writes one row per grid point into any non-NULL output array:
 * p1 (local purity), p2 (bi-local purity over the lattice pairing),
 * f (fidelity vs psi0), xi (participation number). */
int spinlat_evolve_series(const spinlat_hamiltonian* ham,
                          const spinlat_state* psi0, const double* times,
                          size_t n_times, int backend, double tol, double* p1,
                          double* p2, double* f, double* xi);
/* State at the final grid time. */
int spinlat_evolve_final(const spinlat_hamiltonian* ham,
                         const spinlat_state* psi0, const double* times,
                         size_t n_times, int backend, double tol,
                         spinlat_state** out);

int spinlat_local_purity(const spinlat_state* psi, double* out);
int spinlat_bilocal_purity(const spinlat_state* psi, const spinlat_lattice* lat,
                           double* out);
int spinlat_participation(const spinlat_state* psi, double* xi, double* ipr);
/* out = {<sigma_x>, <sigma_y>, <sigma_z>} of the given site */
int spinlat_bloch(const spinlat_state* psi, int site, double out[3]);
/* P1 = F^2 + cross + quad for evolution out of basis state c; alphas may be
 * NULL or hold n entries. */
int spinlat_purity_decomposition(uint64_t c, const spinlat_state* psi,
                                 double* f2, double* cross, double* quad,
                                 double* alphas);
int spinlat_parity_sign(uint64_t q, int j, int* out);

/* ---- disorder ensembles ---- */

typedef struct spinlat_ensemble_config {
    int rows, cols;
    spinlat_params params;
    const char* state; /* designator */
    const double* times;
    size_t n_times;
    int n_r;
    uint64_t seed;
    int backend; /* enum spinlat_backend */
    double tol;
} spinlat_ensemble_config;

int spinlat_ensemble_run(const spinlat_ensemble_config* cfg,
                         spinlat_ensemble** out);
void spinlat_ensemble_free(spinlat_ensemble* ens);
size_t spinlat_ensemble_size(const spinlat_ensemble* ens);
/* series id: "t", "P1", "P1_sem", "P2", "P2_sem", "F", "F_sem", "xi",
 * "xi_sem", "I", "I_sem"; out holds spinlat_ensemble_size entries. */
int spinlat_ensemble_series(const spinlat_ensemble* ens, const char* id,
                            double* out);

/* ---- regime analysis ---- */

typedef struct spinlat_fit {
    int gaussian;        /* 0: exponential selected, 1: gaussian selected */
    double rate;         /* of the selected shape */
    double C;            /* exponential rate / Gamma_F */
    double Cprime;       /* gaussian rate / Gamma_E^2 */
    double resid_exp;    /* rms log-domain misfit */
    double resid_gauss;
    size_t window_points; /* 0 when no decay window exists (perturbative) */
} spinlat_fit;

int spinlat_fit_decay(const double* times, const double* values, size_t count,
                      const spinlat_scales* scales, spinlat_fit* out);

/* First downward crossing of level K; *censored is set when none occurs. */
int spinlat_critical_time(const double* times, const double* values,
                          size_t count, double K, double* t_c, int* censored);

typedef struct spinlat_saturation {
    double p1_inf, p1_err;
    double xi_inf, xi_err;
    double ipr_inf, ipr_err;
    int plateau_detected;
    double N_inf_est;
    double p1_pred; /* 2/N_inf */
    double xi_pred; /* 3/N_inf */
    double ipr_pred; /* N_inf/3 */
} spinlat_saturation;

int spinlat_saturation_stats(const spinlat_ensemble* ens,
                             const spinlat_scales* scales,
                             spinlat_saturation* out);

int spinlat_porter_thomas(int N_inf, int draws, uint64_t seed, double* mean_xi,
                          double* mean_p1);

/* Least-squares slope of log(t_c) vs log(J); needs >= 3 points. */
int spinlat_scaling_exponent(const double* J, const double* t_c, size_t count,
                             double* slope, double* stderr_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPINLAT_H */
