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

#ifndef SPINLAT_CORE_PROPAGATOR_HPP
#define SPINLAT_CORE_PROPAGATOR_HPP

#include <functional>
#include <vector>

#include "model.hpp"
#include "states.hpp"

namespace spinlat {

struct TimeGrid {
    std::vector<double> times;

    // t_0 = 0 included, strictly increasing.
    static TimeGrid uniform(double t_max, std::size_t samples);
    void validate() const;
};

enum class Backend { dense, chebyshev, automatic };

struct EvolutionResult {
    std::vector<StateVector> states; // aligned with the grid
    Backend backend = Backend::dense;
    double max_norm_drift = 0.0; // cumulative, before renormalization
};

// Precomputed matrix-free form of the Hamiltonian: a diagonal (z terms) plus
// two-bit-flip couplings (xx terms).
struct HamOp {
    int n = 0;
    std::vector<double> diag;            // 2^n entries
    std::vector<std::uint64_t> masks;    // per bond
    std::vector<double> flip_weights;    // per bond
    double bound = 0.0;                  // >= operator norm

    explicit HamOp(const HamiltonianTerms& terms);
    void apply(const std::vector<std::complex<double>>& in,
               std::vector<std::complex<double>>& out) const;
};

StateVector apply_hamiltonian(const HamiltonianTerms& terms, const StateVector& v);

inline constexpr int kDenseCap = 12; // qubits; dimension 4096

// Exact evolution via full real-symmetric eigendecomposition. Refuses n above
// the dense cap.
EvolutionResult evolve_dense(const HamiltonianTerms& terms, const StateVector& psi0,
                             const TimeGrid& grid);

// Stepwise Chebyshev expansion of exp(-iH dt) using only the matrix-free apply.
EvolutionResult evolve_chebyshev(const HamiltonianTerms& terms,
                                 const StateVector& psi0, const TimeGrid& grid,
                                 double tol = 1e-10);

// Streaming form: invokes visit(k, psi_tk) in grid order without retaining the
// trajectory. Backend::automatic picks dense up to the cap.
void evolve_stream(const HamiltonianTerms& terms, const StateVector& psi0,
                   const TimeGrid& grid, Backend backend, double tol,
                   const std::function<void(std::size_t, const StateVector&)>& visit);

std::vector<double> fidelity_series(const StateVector& psi0,
                                    const EvolutionResult& evo);

} // namespace spinlat

#endif
