// Copyright 2026 The spinlat authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinlat.h"

#include <cstring>
#include <stdexcept>
#include <string>

#include "core/analysis.hpp"
#include "core/measures.hpp"
#include "core/model.hpp"
#include "core/propagator.hpp"
#include "core/states.hpp"

#define SPINLAT_EXPORT __attribute__((visibility("default")))

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* what) {
    g_last_error = what;
    return code;
}

template <typename Fn> int guarded(Fn&& fn) {
    try {
        fn();
        return SPINLAT_OK;
    } catch (const std::invalid_argument& e) {
        return fail(SPINLAT_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(SPINLAT_ERR_RUNTIME, e.what());
    }
}

spinlat::Backend to_backend(int backend) {
    switch (backend) {
    case SPINLAT_BACKEND_DENSE: return spinlat::Backend::dense;
    case SPINLAT_BACKEND_CHEBYSHEV: return spinlat::Backend::chebyshev;
    case SPINLAT_BACKEND_AUTO: return spinlat::Backend::automatic;
    default: throw std::invalid_argument("unknown backend id");
    }
}

spinlat::ModelParams to_params(const spinlat_params& p) {
    return {p.Delta, p.delta, p.J};
}

spinlat_scales from_scales(const spinlat::SpectralScales& s) {
    spinlat_scales out{};
    out.n = s.n;
    out.k = s.k;
    out.E_B = s.E_B;
    out.N_B = s.N_B;
    out.Delta_B = s.Delta_B;
    out.Gamma_F = s.Gamma_F;
    out.Gamma_E = s.Gamma_E;
    out.J_c = s.J_c;
    out.J_E = s.J_E;
    out.regime = static_cast<int>(s.regime);
    return out;
}

spinlat::SpectralScales to_scales(const spinlat_scales& s) {
    spinlat::SpectralScales out;
    out.n = s.n;
    out.k = s.k;
    out.E_B = s.E_B;
    out.N_B = s.N_B;
    out.Delta_B = s.Delta_B;
    out.Gamma_F = s.Gamma_F;
    out.Gamma_E = s.Gamma_E;
    out.J_c = s.J_c;
    out.J_E = s.J_E;
    out.regime = static_cast<spinlat::Regime>(s.regime);
    return out;
}

spinlat::TimeGrid make_grid(const double* times, size_t n_times) {
    if (!times || n_times == 0) throw std::invalid_argument("empty time grid");
    spinlat::TimeGrid grid;
    grid.times.assign(times, times + n_times);
    grid.validate();
    return grid;
}

} // namespace

struct spinlat_lattice {
    spinlat::LatticeSpec spec;
};
struct spinlat_state {
    spinlat::StateVector psi;
};
struct spinlat_hamiltonian {
    spinlat::LatticeSpec lattice;
    spinlat::DisorderRealization realization;
    spinlat::HamiltonianTerms terms;
};
struct spinlat_ensemble {
    spinlat::EnsembleResult result;
};

extern "C" {

SPINLAT_EXPORT const char* spinlat_version(void) { return "0.1.0"; }

SPINLAT_EXPORT const char* spinlat_last_error(void) {
    return g_last_error.c_str();
}

SPINLAT_EXPORT int spinlat_lattice_create(int rows, int cols,
                                          spinlat_lattice** out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("out is NULL");
        *out = new spinlat_lattice{spinlat::build_lattice(rows, cols)};
    });
}

SPINLAT_EXPORT void spinlat_lattice_free(spinlat_lattice* lat) { delete lat; }

SPINLAT_EXPORT int spinlat_lattice_n(const spinlat_lattice* lat) {
    return lat ? lat->spec.n : 0;
}

SPINLAT_EXPORT int spinlat_lattice_bond_count(const spinlat_lattice* lat) {
    return lat ? static_cast<int>(lat->spec.bonds.size()) : 0;
}

SPINLAT_EXPORT int spinlat_lattice_bonds(const spinlat_lattice* lat, int* out) {
    return guarded([&] {
        if (!lat || !out) throw std::invalid_argument("NULL argument");
        for (std::size_t b = 0; b < lat->spec.bonds.size(); ++b) {
            out[2 * b] = lat->spec.bonds[b].a;
            out[2 * b + 1] = lat->spec.bonds[b].b;
        }
    });
}

SPINLAT_EXPORT int spinlat_lattice_pairing(const spinlat_lattice* lat, int* out) {
    return guarded([&] {
        if (!lat || !out) throw std::invalid_argument("NULL argument");
        for (const auto& p : lat->spec.pairing) {
            out[p.a - 1] = p.b;
            out[p.b - 1] = p.a;
        }
    });
}

SPINLAT_EXPORT int spinlat_scales_compute(const spinlat_params* params, int n,
                                          int k, spinlat_scales* out) {
    return guarded([&] {
        if (!params || !out) throw std::invalid_argument("NULL argument");
        *out = from_scales(spinlat::spectral_scales(to_params(*params), n, k));
    });
}

SPINLAT_EXPORT int spinlat_state_create_basis(int n, uint64_t q,
                                              spinlat_state** out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("out is NULL");
        *out = new spinlat_state{spinlat::computational_state(n, q)};
    });
}

SPINLAT_EXPORT int spinlat_state_create_central(int n, spinlat_state** out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("out is NULL");
        *out = new spinlat_state{spinlat::central_band_state(n)};
    });
}

SPINLAT_EXPORT int spinlat_state_create_bell(int n, int n_bell,
                                             spinlat_state** out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("out is NULL");
        *out = new spinlat_state{spinlat::bell_pair_state(n, n_bell)};
    });
}

SPINLAT_EXPORT int spinlat_state_create_w(int n, spinlat_state** out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("out is NULL");
        *out = new spinlat_state{spinlat::w_state(n)};
    });
}

SPINLAT_EXPORT int spinlat_state_create_product(const char* symbols,
                                                spinlat_state** out) {
    return guarded([&] {
        if (!symbols || !out) throw std::invalid_argument("NULL argument");
        *out = new spinlat_state{spinlat::product_state(symbols)};
    });
}

SPINLAT_EXPORT int spinlat_state_create(int n, const char* designator,
                                        spinlat_state** out) {
    return guarded([&] {
        if (!designator || !out) throw std::invalid_argument("NULL argument");
        *out = new spinlat_state{spinlat::make_state(n, designator)};
    });
}

SPINLAT_EXPORT void spinlat_state_free(spinlat_state* psi) { delete psi; }

SPINLAT_EXPORT int spinlat_state_n(const spinlat_state* psi) {
    return psi ? psi->psi.n : 0;
}

SPINLAT_EXPORT size_t spinlat_state_dim(const spinlat_state* psi) {
    return psi ? psi->psi.dim() : 0;
}

SPINLAT_EXPORT int spinlat_state_amplitudes(const spinlat_state* psi,
                                            double* re, double* im) {
    return guarded([&] {
        if (!psi || !re || !im) throw std::invalid_argument("NULL argument");
        for (std::size_t q = 0; q < psi->psi.dim(); ++q) {
            re[q] = psi->psi.amps[q].real();
            im[q] = psi->psi.amps[q].imag();
        }
    });
}

SPINLAT_EXPORT int spinlat_hamiltonian_create(const spinlat_lattice* lat,
                                              const spinlat_params* params,
                                              uint64_t seed,
                                              spinlat_hamiltonian** out) {
    return guarded([&] {
        if (!lat || !params || !out) throw std::invalid_argument("NULL argument");
        auto real =
            spinlat::sample_disorder(lat->spec, to_params(*params), seed);
        auto terms =
            spinlat::build_hamiltonian(lat->spec, to_params(*params), real);
        *out = new spinlat_hamiltonian{lat->spec, std::move(real),
                                       std::move(terms)};
    });
}

SPINLAT_EXPORT void spinlat_hamiltonian_free(spinlat_hamiltonian* ham) {
    delete ham;
}

SPINLAT_EXPORT int spinlat_hamiltonian_deltas(const spinlat_hamiltonian* ham,
                                              double* out) {
    return guarded([&] {
        if (!ham || !out) throw std::invalid_argument("NULL argument");
        std::memcpy(out, ham->realization.deltas.data(),
                    ham->realization.deltas.size() * sizeof(double));
    });
}

SPINLAT_EXPORT int spinlat_hamiltonian_couplings(const spinlat_hamiltonian* ham,
                                                 double* out) {
    return guarded([&] {
        if (!ham || !out) throw std::invalid_argument("NULL argument");
        std::memcpy(out, ham->realization.couplings.data(),
                    ham->realization.couplings.size() * sizeof(double));
    });
}

SPINLAT_EXPORT int spinlat_hamiltonian_apply(const spinlat_hamiltonian* ham,
                                             const spinlat_state* psi,
                                             spinlat_state** out) {
    return guarded([&] {
        if (!ham || !psi || !out) throw std::invalid_argument("NULL argument");
        *out = new spinlat_state{spinlat::apply_hamiltonian(ham->terms, psi->psi)};
    });
}

SPINLAT_EXPORT int spinlat_evolve_series(const spinlat_hamiltonian* ham,
                                         const spinlat_state* psi0,
                                         const double* times, size_t n_times,
                                         int backend, double tol, double* p1,
                                         double* p2, double* f, double* xi) {
    return guarded([&] {
        if (!ham || !psi0) throw std::invalid_argument("NULL argument");
        const auto grid = make_grid(times, n_times);
        spinlat::evolve_stream(
            ham->terms, psi0->psi, grid, to_backend(backend), tol,
            [&](std::size_t k, const spinlat::StateVector& psi) {
                if (p1) p1[k] = spinlat::local_purity(psi);
                if (p2) p2[k] = spinlat::bilocal_purity(psi, ham->lattice.pairing);
                if (f) {
                    std::complex<double> ov = 0.0;
                    for (std::size_t q = 0; q < psi.dim(); ++q)
                        ov += std::conj(psi0->psi.amps[q]) * psi.amps[q];
                    f[k] = std::norm(ov);
                }
                if (xi) xi[k] = spinlat::participation_number(psi).xi;
            });
    });
}

SPINLAT_EXPORT int spinlat_evolve_final(const spinlat_hamiltonian* ham,
                                        const spinlat_state* psi0,
                                        const double* times, size_t n_times,
                                        int backend, double tol,
                                        spinlat_state** out) {
    return guarded([&] {
        if (!ham || !psi0 || !out) throw std::invalid_argument("NULL argument");
        const auto grid = make_grid(times, n_times);
        auto* result = new spinlat_state{psi0->psi};
        spinlat::evolve_stream(ham->terms, psi0->psi, grid, to_backend(backend),
                               tol,
                               [&](std::size_t k, const spinlat::StateVector& psi) {
                                   if (k + 1 == n_times) result->psi = psi;
                               });
        *out = result;
    });
}

SPINLAT_EXPORT int spinlat_local_purity(const spinlat_state* psi, double* out) {
    return guarded([&] {
        if (!psi || !out) throw std::invalid_argument("NULL argument");
        *out = spinlat::local_purity(psi->psi);
    });
}

SPINLAT_EXPORT int spinlat_bilocal_purity(const spinlat_state* psi,
                                          const spinlat_lattice* lat,
                                          double* out) {
    return guarded([&] {
        if (!psi || !lat || !out) throw std::invalid_argument("NULL argument");
        *out = spinlat::bilocal_purity(psi->psi, lat->spec.pairing);
    });
}

SPINLAT_EXPORT int spinlat_participation(const spinlat_state* psi, double* xi,
                                         double* ipr) {
    return guarded([&] {
        if (!psi) throw std::invalid_argument("NULL argument");
        const auto p = spinlat::participation_number(psi->psi);
        if (xi) *xi = p.xi;
        if (ipr) *ipr = p.ipr;
    });
}

SPINLAT_EXPORT int spinlat_bloch(const spinlat_state* psi, int site,
                                 double out[3]) {
    return guarded([&] {
        if (!psi || !out) throw std::invalid_argument("NULL argument");
        const auto b = spinlat::single_qubit_bloch(psi->psi, site);
        out[0] = b.xyz[0];
        out[1] = b.xyz[1];
        out[2] = b.xyz[2];
    });
}

SPINLAT_EXPORT int spinlat_purity_decomposition(uint64_t c,
                                                const spinlat_state* psi,
                                                double* f2, double* cross,
                                                double* quad, double* alphas) {
    return guarded([&] {
        if (!psi) throw std::invalid_argument("NULL argument");
        const auto d = spinlat::purity_decomposition(c, psi->psi);
        if (f2) *f2 = d.F2;
        if (cross) *cross = d.cross;
        if (quad) *quad = d.quad;
        if (alphas)
            std::memcpy(alphas, d.alphas.data(), d.alphas.size() * sizeof(double));
    });
}

SPINLAT_EXPORT int spinlat_parity_sign(uint64_t q, int j, int* out) {
    return guarded([&] {
        if (!out) throw std::invalid_argument("out is NULL");
        *out = spinlat::parity_sign(q, j);
    });
}

SPINLAT_EXPORT int spinlat_ensemble_run(const spinlat_ensemble_config* cfg,
                                        spinlat_ensemble** out) {
    return guarded([&] {
        if (!cfg || !out || !cfg->state)
            throw std::invalid_argument("NULL argument");
        spinlat::EnsembleConfig c;
        c.lattice = spinlat::build_lattice(cfg->rows, cfg->cols);
        c.params = to_params(cfg->params);
        c.state = cfg->state;
        c.grid = make_grid(cfg->times, cfg->n_times);
        c.n_r = cfg->n_r;
        c.seed = cfg->seed;
        c.backend = to_backend(cfg->backend);
        c.tol = cfg->tol;
        *out = new spinlat_ensemble{spinlat::run_ensemble(c)};
    });
}

SPINLAT_EXPORT void spinlat_ensemble_free(spinlat_ensemble* ens) { delete ens; }

SPINLAT_EXPORT size_t spinlat_ensemble_size(const spinlat_ensemble* ens) {
    return ens ? ens->result.times.size() : 0;
}

SPINLAT_EXPORT int spinlat_ensemble_series(const spinlat_ensemble* ens,
                                           const char* id, double* out) {
    return guarded([&] {
        if (!ens || !id || !out) throw std::invalid_argument("NULL argument");
        const auto& r = ens->result;
        const std::string key(id);
        const std::vector<double>* src = nullptr;
        if (key == "t") src = &r.times;
        else if (key == "P1") src = &r.p1.mean;
        else if (key == "P1_sem") src = &r.p1.sem;
        else if (key == "P2") src = &r.p2.mean;
        else if (key == "P2_sem") src = &r.p2.sem;
        else if (key == "F") src = &r.f.mean;
        else if (key == "F_sem") src = &r.f.sem;
        else if (key == "xi") src = &r.xi.mean;
        else if (key == "xi_sem") src = &r.xi.sem;
        else if (key == "I") src = &r.ipr.mean;
        else if (key == "I_sem") src = &r.ipr.sem;
        else throw std::invalid_argument("unknown series id: " + key);
        std::memcpy(out, src->data(), src->size() * sizeof(double));
    });
}

SPINLAT_EXPORT int spinlat_fit_decay(const double* times, const double* values,
                                     size_t count, const spinlat_scales* scales,
                                     spinlat_fit* out) {
    return guarded([&] {
        if (!times || !values || !scales || !out)
            throw std::invalid_argument("NULL argument");
        const auto fit = spinlat::fit_decay(
            std::vector<double>(times, times + count),
            std::vector<double>(values, values + count), to_scales(*scales));
        out->gaussian = fit.shape == spinlat::RegimeFit::Shape::gaussian ? 1 : 0;
        out->rate = fit.rate;
        out->C = fit.C;
        out->Cprime = fit.Cprime;
        out->resid_exp = fit.resid_exp;
        out->resid_gauss = fit.resid_gauss;
        out->window_points = fit.window_points;
    });
}

SPINLAT_EXPORT int spinlat_critical_time(const double* times,
                                         const double* values, size_t count,
                                         double K, double* t_c, int* censored) {
    return guarded([&] {
        if (!times || !values || !t_c || !censored)
            throw std::invalid_argument("NULL argument");
        const auto cr = spinlat::critical_time(
            std::vector<double>(times, times + count),
            std::vector<double>(values, values + count), K);
        *t_c = cr.t_c;
        *censored = cr.censored ? 1 : 0;
    });
}

SPINLAT_EXPORT int spinlat_saturation_stats(const spinlat_ensemble* ens,
                                            const spinlat_scales* scales,
                                            spinlat_saturation* out) {
    return guarded([&] {
        if (!ens || !scales || !out) throw std::invalid_argument("NULL argument");
        const auto s =
            spinlat::saturation_stats(ens->result, to_scales(*scales));
        out->p1_inf = s.p1_inf;
        out->p1_err = s.p1_err;
        out->xi_inf = s.xi_inf;
        out->xi_err = s.xi_err;
        out->ipr_inf = s.ipr_inf;
        out->ipr_err = s.ipr_err;
        out->plateau_detected = s.plateau_detected ? 1 : 0;
        out->N_inf_est = s.N_inf_est;
        out->p1_pred = s.p1_pred;
        out->xi_pred = s.xi_pred;
        out->ipr_pred = s.ipr_pred;
    });
}

SPINLAT_EXPORT int spinlat_porter_thomas(int N_inf, int draws, uint64_t seed,
                                         double* mean_xi, double* mean_p1) {
    return guarded([&] {
        const auto pt = spinlat::porter_thomas_sample(N_inf, draws, seed);
        if (mean_xi) *mean_xi = pt.mean_xi;
        if (mean_p1) *mean_p1 = pt.mean_p1;
    });
}

SPINLAT_EXPORT int spinlat_scaling_exponent(const double* J, const double* t_c,
                                            size_t count, double* slope,
                                            double* stderr_out) {
    return guarded([&] {
        if (!J || !t_c || !slope) throw std::invalid_argument("NULL argument");
        std::vector<std::pair<double, double>> pts;
        for (size_t k = 0; k < count; ++k) pts.emplace_back(J[k], t_c[k]);
        const auto fit = spinlat::scaling_exponent(pts);
        if (!fit.valid)
            throw std::invalid_argument(
                "scaling_exponent: need at least 3 uncensored points");
        *slope = fit.slope;
        if (stderr_out) *stderr_out = fit.stderr_;
    });
}

} // extern "C"
