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

#include "model.hpp"

#include <cmath>
#include <stdexcept>

#include "rng.hpp"

namespace spinlat {

std::string regime_name(Regime r) {
    switch (r) {
    case Regime::perturbative: return "perturbative";
    case Regime::fgr: return "fgr";
    case Regime::ergodic: return "ergodic";
    case Regime::ergodic_only: return "ergodic-only";
    }
    return "?";
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

LatticeSpec build_lattice(int rows, int cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("build_lattice: dimensions must be positive");
    const int n = rows * cols;
    if (n % 2 != 0)
        throw std::invalid_argument("build_lattice: rows*cols must be even");
    if (n < 2)
        throw std::invalid_argument("build_lattice: need at least two sites");

    LatticeSpec spec;
    spec.n = n;
    spec.rows = rows;
    spec.cols = cols;

    // Column-major: site(r, c) = c*rows + r + 1, r in [0, rows), c in [0, cols).
    auto site = [rows](int r, int c) { return c * rows + r + 1; };
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) {
            if (r + 1 < rows) spec.bonds.push_back({site(r, c), site(r + 1, c)});
            if (c + 1 < cols) spec.bonds.push_back({site(r, c), site(r, c + 1)});
        }
    }

    // Consecutive matching (2k-1, 2k); with column-major labeling these are
    // vertical rungs when rows is even and horizontal links when rows == 1.
    for (int k = 1; k <= n / 2; ++k) spec.pairing.push_back({2 * k - 1, 2 * k});
    for (const Bond& p : spec.pairing) {
        bool adjacent = false;
        for (const Bond& b : spec.bonds)
            if (b == p) { adjacent = true; break; }
        if (!adjacent)
            throw std::invalid_argument(
                "build_lattice: consecutive pairing is not nearest-neighbor for "
                "this geometry (use even rows or a single row)");
    }
    return spec;
}

DisorderRealization sample_disorder(const LatticeSpec& lattice,
                                    const ModelParams& params,
                                    std::uint64_t seed) {
    if (params.delta < 0.0 || params.J < 0.0)
        throw std::invalid_argument("sample_disorder: half-widths must be >= 0");
    DisorderRealization real;
    real.seed = seed;
    real.deltas.resize(lattice.n);
    for (int j = 0; j < lattice.n; ++j)
        real.deltas[j] = uniform_symmetric(seed, 1, j, params.delta);
    real.couplings.resize(lattice.bonds.size());
    for (std::size_t b = 0; b < lattice.bonds.size(); ++b)
        real.couplings[b] = uniform_symmetric(seed, 2, b, params.J);
    return real;
}

HamiltonianTerms build_hamiltonian(const LatticeSpec& lattice,
                                   const ModelParams& params,
                                   const DisorderRealization& real) {
    if (static_cast<int>(real.deltas.size()) != lattice.n ||
        real.couplings.size() != lattice.bonds.size())
        throw std::invalid_argument("build_hamiltonian: realization/lattice mismatch");
    HamiltonianTerms terms;
    terms.n = lattice.n;
    terms.zweights.resize(lattice.n);
    for (int j = 0; j < lattice.n; ++j)
        terms.zweights[j] = params.Delta + real.deltas[j];
    terms.bonds = lattice.bonds;
    terms.xxweights = real.couplings;
    return terms;
}

SpectralScales spectral_scales(const ModelParams& params, int n, int k) {
    if (k < 0 || k > n)
        throw std::invalid_argument("spectral_scales: k out of range");
    SpectralScales s;
    s.n = n;
    s.k = k;
    s.E_B = params.Delta * (2.0 * k - n);
    s.N_B = binomial(n, k);
    s.Gamma_E = params.J;
    if (params.delta > 0.0) {
        s.Delta_B = params.delta * std::sqrt(static_cast<double>(n));
        s.Gamma_F = params.J * params.J * n / params.delta;
        s.J_c = params.delta / n;
        s.J_E = params.delta / std::pow(static_cast<double>(n), 0.25);
        if (params.J < s.J_c)
            s.regime = Regime::perturbative;
        else if (params.J < s.J_E)
            s.regime = Regime::fgr;
        else
            s.regime = Regime::ergodic;
    } else {
        // delta = 0: the FGR scales are undefined and every nonzero coupling
        // mixes the degenerate band directly.
        s.Delta_B = 0.0;
        s.Gamma_F = 0.0;
        s.J_c = 0.0;
        s.J_E = 0.0;
        s.regime = Regime::ergodic_only;
    }
    return s;
}

} // namespace spinlat
