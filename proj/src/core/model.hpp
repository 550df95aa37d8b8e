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

#ifndef SPINLAT_CORE_MODEL_HPP
#define SPINLAT_CORE_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace spinlat {

// Sites are 1-based; qubit j lives on bit j-1 of the basis integer.
// |0> is the +1 eigenstate of sigma_z.

struct Bond {
    int a = 0;
    int b = 0;
    friend bool operator==(const Bond&, const Bond&) = default;
};

struct LatticeSpec {
    int n = 0;
    int rows = 0;
    int cols = 0;
    std::vector<Bond> bonds;   // all nearest-neighbor adjacencies, open boundaries
    std::vector<Bond> pairing; // disjoint perfect matching, subset of bonds
};

struct ModelParams {
    double Delta = 1.0;
    double delta = 0.0; // on-site disorder half-width
    double J = 0.0;     // coupling disorder half-width
};

struct DisorderRealization {
    std::vector<double> deltas;    // per site, index j-1
    std::vector<double> couplings; // per bond, aligned with LatticeSpec::bonds
    std::uint64_t seed = 0;
};

struct HamiltonianTerms {
    int n = 0;
    std::vector<double> zweights;          // Delta + delta_j per site
    std::vector<Bond> bonds;               // xx bonds
    std::vector<double> xxweights;         // J_ij per bond
};

enum class Regime { perturbative, fgr, ergodic, ergodic_only };

std::string regime_name(Regime r);

struct SpectralScales {
    int n = 0;
    int k = 0;
    double E_B = 0.0;     // band center Delta*(2k - n)
    double N_B = 0.0;     // binomial(n, k)
    double Delta_B = 0.0; // band width estimate delta*sqrt(n)
    double Gamma_F = 0.0; // J^2 n / delta
    double Gamma_E = 0.0; // J (prefactor absorbed into fit constants)
    double J_c = 0.0;     // delta / n
    double J_E = 0.0;     // delta / n^(1/4)
    Regime regime = Regime::perturbative;
};

// Column-major labeled rows x cols open-boundary lattice. rows*cols must be
// even so the rung/consecutive matching (2k-1, 2k) exists.
LatticeSpec build_lattice(int rows, int cols);

DisorderRealization sample_disorder(const LatticeSpec& lattice,
                                    const ModelParams& params,
                                    std::uint64_t seed);

HamiltonianTerms build_hamiltonian(const LatticeSpec& lattice,
                                   const ModelParams& params,
                                   const DisorderRealization& real);

SpectralScales spectral_scales(const ModelParams& params, int n, int k);

double binomial(int n, int k);

} // namespace spinlat

#endif
