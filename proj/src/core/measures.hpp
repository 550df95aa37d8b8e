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

#ifndef SPINLAT_CORE_MEASURES_HPP
#define SPINLAT_CORE_MEASURES_HPP

#include <array>
#include <vector>

#include "model.hpp"
#include "states.hpp"

namespace spinlat {

struct BlochVector {
    int site = 0;                       // 1-based
    std::array<double, 3> xyz{0, 0, 0}; // <sigma_x>, <sigma_y>, <sigma_z>
};

BlochVector single_qubit_bloch(const StateVector& psi, int site);

// Average squared Bloch-vector length; 1 on product states, 1 - Q with Q the
// Meyer-Wallach global entanglement.
double local_purity(const StateVector& psi);

// Purity relative to the algebra of the n/2 disjoint pairs:
// (2/(3n)) * sum over pairs of (4 tr rho_pair^2 - 1).
double bilocal_purity(const StateVector& psi, const std::vector<Bond>& pairing);

// xi = sum_q |amps_q|^4 in the computational basis; I = 1/xi.
struct Participation {
    double xi = 0.0;
    double ipr = 0.0;
};
Participation participation_number(const StateVector& psi);

// P1(t) = F^2 + (2/n) sum_j F (-)^{pi_j(c)} alpha_j + (1/n) sum_j alpha_j^2
// for evolution out of the computational state |c>.
struct PurityDecomposition {
    double F2 = 0.0;
    double cross = 0.0;
    double quad = 0.0;
    std::vector<double> alphas;

    double total() const { return F2 + cross + quad; }
};
PurityDecomposition purity_decomposition(std::uint64_t c, const StateVector& psi_t);

// 4x4 reduced density matrix of the (1-based) qubit pair; local basis index
// s = bit(site_a) + 2*bit(site_b).
std::array<std::array<std::complex<double>, 4>, 4>
pair_density_matrix(const StateVector& psi, int site_a, int site_b);

} // namespace spinlat

#endif
