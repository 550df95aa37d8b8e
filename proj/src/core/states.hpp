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

#ifndef SPINLAT_CORE_STATES_HPP
#define SPINLAT_CORE_STATES_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace spinlat {

struct StateVector {
    int n = 0;
    std::vector<std::complex<double>> amps; // indexed by basis integer q

    std::size_t dim() const { return amps.size(); }
    double norm() const;
};

// Parity of qubit j (1-based) in basis state q: (-1)^floor(q / 2^(j-1)).
// Equals +1 exactly when bit j-1 of q is clear.
int parity_sign(std::uint64_t q, int j);

StateVector computational_state(int n, std::uint64_t q);

// |0101...01>: qubit j is |0> for odd j, |1> for even j; central band k = n/2.
StateVector central_band_state(int n);
std::uint64_t central_band_basis_index(int n);

// First n - 2*n_B qubits alternating, then n_B Bell pairs (|01>+|10>)/sqrt(2)
// on the trailing consecutive pairs.
StateVector bell_pair_state(int n, int n_bell);

// Equal-amplitude, equal-phase superposition of the n single-excitation states.
StateVector w_state(int n);

// One symbol per qubit from {0, 1, +, -}; symbol 1 is qubit 1 (bit 0).
StateVector product_state(const std::string& symbols);

// CLI designators: central | bell:<n_B> | w | product:<symbols> | basis:<bits>.
StateVector make_state(int n, const std::string& designator);

} // namespace spinlat

#endif
