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

#include "propagator.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace spinlat {

TimeGrid TimeGrid::uniform(double t_max, std::size_t samples) {
    if (t_max < 0.0 || samples < 1)
        throw std::invalid_argument("TimeGrid::uniform: bad arguments");
    TimeGrid grid;
    grid.times.resize(samples);
    for (std::size_t k = 0; k < samples; ++k)
        grid.times[k] = (samples == 1) ? 0.0
                                       : t_max * static_cast<double>(k) /
                                             static_cast<double>(samples - 1);
    return grid;
}

void TimeGrid::validate() const {
    if (times.empty() || times.front() != 0.0)
        throw std::invalid_argument("TimeGrid: t_0 = 0 required");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (times[k] <= times[k - 1])
            throw std::invalid_argument("TimeGrid: times must be strictly increasing");
}

HamOp::HamOp(const HamiltonianTerms& terms) : n(terms.n) {
    const std::uint64_t dim = 1ull << n;
    diag.assign(dim, 0.0);
    for (std::uint64_t q = 0; q < dim; ++q) {
        double e = 0.0;
        for (int j = 0; j < n; ++j)
            e += ((q >> j) & 1ull) ? -terms.zweights[j] : terms.zweights[j];
        diag[q] = e;
    }
    double flip_sum = 0.0;
    for (std::size_t b = 0; b < terms.bonds.size(); ++b) {
        const Bond& bond = terms.bonds[b];
        masks.push_back((1ull << (bond.a - 1)) | (1ull << (bond.b - 1)));
        flip_weights.push_back(terms.xxweights[b]);
        flip_sum += std::abs(terms.xxweights[b]);
    }
    double dmax = 0.0;
    for (double d : diag) dmax = std::max(dmax, std::abs(d));
    bound = dmax + flip_sum;
}

void HamOp::apply(const std::vector<std::complex<double>>& in,
                  std::vector<std::complex<double>>& out) const {
    const std::uint64_t dim = 1ull << n;
    if (in.size() != dim) throw std::invalid_argument("HamOp::apply: dimension mismatch");
    out.resize(dim);
    for (std::uint64_t q = 0; q < dim; ++q) out[q] = diag[q] * in[q];
    for (std::size_t b = 0; b < masks.size(); ++b) {
        const std::uint64_t m = masks[b];
        const double w = flip_weights[b];
        for (std::uint64_t q = 0; q < dim; ++q) out[q] += w * in[q ^ m];
    }
}

StateVector apply_hamiltonian(const HamiltonianTerms& terms, const StateVector& v) {
    if (v.n != terms.n) throw std::invalid_argument("apply_hamiltonian: size mismatch");
    HamOp op(terms);
    StateVector out;
    out.n = v.n;
    op.apply(v.amps, out.amps);
    return out;
}

namespace {

Eigen::MatrixXd dense_matrix(const HamOp& op) {
    const std::uint64_t dim = 1ull << op.n;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (std::uint64_t q = 0; q < dim; ++q) H(q, q) = op.diag[q];
    for (std::size_t b = 0; b < op.masks.size(); ++b)
        for (std::uint64_t q = 0; q < dim; ++q)
            H(q ^ op.masks[b], q) += op.flip_weights[b];
    return H;
}

void renormalize(StateVector& psi, double& max_drift) {
    const double nrm = psi.norm();
    max_drift = std::max(max_drift, std::abs(nrm - 1.0));
    for (auto& a : psi.amps) a /= nrm;
}

class DenseEvolver {
  public:
    DenseEvolver(const HamOp& op, const StateVector& psi0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_matrix(op));
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("evolve_dense: eigendecomposition failed");
        eigvals_ = solver.eigenvalues();
        eigvecs_ = solver.eigenvectors();
        const Eigen::Map<const Eigen::VectorXcd> v0(psi0.amps.data(), psi0.amps.size());
        coeffs_ = eigvecs_.transpose() * v0;
    }

    StateVector state_at(int n, double t) const {
        const std::complex<double> minus_i(0.0, -1.0);
        Eigen::VectorXcd phased(coeffs_.size());
        for (Eigen::Index i = 0; i < coeffs_.size(); ++i)
            phased(i) = std::exp(minus_i * eigvals_(i) * t) * coeffs_(i);
        const Eigen::VectorXcd v = eigvecs_ * phased;
        StateVector psi;
        psi.n = n;
        psi.amps.assign(v.data(), v.data() + v.size());
        return psi;
    }

  private:
    Eigen::VectorXd eigvals_;
    Eigen::MatrixXd eigvecs_;
    Eigen::VectorXcd coeffs_;
};

class ChebyshevEvolver {
  public:
    ChebyshevEvolver(const HamOp& op, const StateVector& psi0, double tol)
        : op_(op), tol_(tol), scale_(std::max(op.bound, 1e-12) * 1.01), cur_(psi0) {}

    // Advances by dt and returns the current state.
    void step(double dt) {
        const double z = scale_ * dt;
        const int order = expansion_order(z);
        const std::uint64_t dim = cur_.amps.size();
        std::vector<std::complex<double>> tk_m1 = cur_.amps; // T_0 psi
        std::vector<std::complex<double>> tk(dim), next(dim);
        apply_scaled(tk_m1, tk); // T_1 psi

        const std::complex<double> minus_i(0.0, -1.0);
        std::vector<std::complex<double>> acc(dim);
        std::complex<double> c0 = std::cyl_bessel_j(0, z);
        std::complex<double> c1 = 2.0 * minus_i * std::cyl_bessel_j(1, z);
        for (std::uint64_t q = 0; q < dim; ++q)
            acc[q] = c0 * tk_m1[q] + c1 * tk[q];

        std::complex<double> ik = minus_i;
        for (int k = 2; k <= order; ++k) {
            // T_{k} = 2 H_s T_{k-1} - T_{k-2}
            apply_scaled(tk, next);
            for (std::uint64_t q = 0; q < dim; ++q)
                next[q] = 2.0 * next[q] - tk_m1[q];
            std::swap(tk_m1, tk);
            std::swap(tk, next);
            ik *= minus_i;
            const std::complex<double> ck = 2.0 * ik * std::cyl_bessel_j(k, z);
            for (std::uint64_t q = 0; q < dim; ++q) acc[q] += ck * tk[q];
        }
        cur_.amps = std::move(acc);
        renormalize(cur_, max_drift_);
    }

    const StateVector& current() const { return cur_; }
    double max_drift() const { return max_drift_; }

  private:
    void apply_scaled(const std::vector<std::complex<double>>& in,
                      std::vector<std::complex<double>>& out) const {
        op_.apply(in, out);
        for (auto& a : out) a /= scale_;
    }

    // Bessel coefficients fall off superexponentially past k ~ z.
    int expansion_order(double z) const {
        constexpr int max_order = 20000;
        int k = static_cast<int>(std::ceil(z)) + 10;
        while (k < max_order) {
            if (std::abs(std::cyl_bessel_j(k, z)) < 0.01 * tol_ &&
                std::abs(std::cyl_bessel_j(k + 1, z)) < 0.01 * tol_)
                return k;
            ++k;
        }
        throw std::runtime_error("evolve_chebyshev: expansion did not converge "
                                 "(order cap reached; reduce the time step)");
    }

    const HamOp& op_;
    double tol_;
    double scale_;
    StateVector cur_;
    double max_drift_ = 0.0;
};

} // namespace

void evolve_stream(const HamiltonianTerms& terms, const StateVector& psi0,
                   const TimeGrid& grid, Backend backend, double tol,
                   const std::function<void(std::size_t, const StateVector&)>& visit) {
    grid.validate();
    if (psi0.n != terms.n)
        throw std::invalid_argument("evolve: state/Hamiltonian size mismatch");
    if (backend == Backend::automatic)
        backend = (terms.n <= kDenseCap) ? Backend::dense : Backend::chebyshev;

    HamOp op(terms);
    if (backend == Backend::dense) {
        if (terms.n > kDenseCap)
            throw std::invalid_argument(
                "evolve_dense: n exceeds the dense cap; use the Chebyshev backend");
        DenseEvolver evolver(op, psi0);
        visit(0, psi0);
        for (std::size_t k = 1; k < grid.times.size(); ++k)
            visit(k, evolver.state_at(terms.n, grid.times[k]));
    } else {
        ChebyshevEvolver evolver(op, psi0, tol);
        visit(0, psi0);
        for (std::size_t k = 1; k < grid.times.size(); ++k) {
            evolver.step(grid.times[k] - grid.times[k - 1]);
            visit(k, evolver.current());
        }
    }
}

EvolutionResult evolve_dense(const HamiltonianTerms& terms, const StateVector& psi0,
                             const TimeGrid& grid) {
    EvolutionResult result;
    result.backend = Backend::dense;
    evolve_stream(terms, psi0, grid, Backend::dense, 0.0,
                  [&](std::size_t, const StateVector& psi) {
                      result.states.push_back(psi);
                      result.max_norm_drift = std::max(result.max_norm_drift,
                                                       std::abs(psi.norm() - 1.0));
                  });
    return result;
}

EvolutionResult evolve_chebyshev(const HamiltonianTerms& terms,
                                 const StateVector& psi0, const TimeGrid& grid,
                                 double tol) {
    EvolutionResult result;
    result.backend = Backend::chebyshev;
    double drift = 0.0;
    HamOp op(terms);
    grid.validate();
    if (psi0.n != terms.n)
        throw std::invalid_argument("evolve: state/Hamiltonian size mismatch");
    ChebyshevEvolver evolver(op, psi0, tol);
    result.states.push_back(psi0);
    for (std::size_t k = 1; k < grid.times.size(); ++k) {
        evolver.step(grid.times[k] - grid.times[k - 1]);
        result.states.push_back(evolver.current());
        drift = evolver.max_drift();
    }
    result.max_norm_drift = drift;
    return result;
}

std::vector<double> fidelity_series(const StateVector& psi0,
                                    const EvolutionResult& evo) {
    std::vector<double> f;
    f.reserve(evo.states.size());
    for (const auto& psi : evo.states) {
        if (psi.dim() != psi0.dim())
            throw std::invalid_argument("fidelity_series: dimension mismatch");
        std::complex<double> overlap = 0.0;
        for (std::size_t q = 0; q < psi0.dim(); ++q)
            overlap += std::conj(psi0.amps[q]) * psi.amps[q];
        f.push_back(std::norm(overlap));
    }
    return f;
}

} // namespace spinlat
