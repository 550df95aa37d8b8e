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

#include "measures.hpp"

#include <cmath>
#include <stdexcept>

namespace spinlat {

BlochVector single_qubit_bloch(const StateVector& psi, int site) {
    if (site < 1 || site > psi.n)
        throw std::invalid_argument("single_qubit_bloch: site out of range");
    const std::uint64_t mask = 1ull << (site - 1);
    const std::uint64_t dim = psi.dim();
    double x = 0.0, y = 0.0, z = 0.0;
    for (std::uint64_t q = 0; q < dim; ++q) {
        const double p = std::norm(psi.amps[q]);
        z += (q & mask) ? -p : p;
        if (!(q & mask)) {
            const std::complex<double> cz = std::conj(psi.amps[q]) * psi.amps[q | mask];
            x += 2.0 * cz.real();
            y += 2.0 * cz.imag();
        }
    }
    return {site, {x, y, z}};
}

double local_purity(const StateVector& psi) {
    double sum = 0.0;
    for (int i = 1; i <= psi.n; ++i) {
        const auto b = single_qubit_bloch(psi, i);
        sum += b.xyz[0] * b.xyz[0] + b.xyz[1] * b.xyz[1] + b.xyz[2] * b.xyz[2];
    }
    return sum / psi.n;
}

std::array<std::array<std::complex<double>, 4>, 4>
pair_density_matrix(const StateVector& psi, int site_a, int site_b) {
    if (site_a < 1 || site_a > psi.n || site_b < 1 || site_b > psi.n ||
        site_a == site_b)
        throw std::invalid_argument("pair_density_matrix: bad sites");
    const std::uint64_t ma = 1ull << (site_a - 1);
    const std::uint64_t mb = 1ull << (site_b - 1);
    const std::uint64_t pair_mask = ma | mb;
    // Local index s = bit_a + 2*bit_b.
    auto embed = [&](std::uint64_t rest, int s) {
        std::uint64_t q = rest;
        if (s & 1) q |= ma;
        if (s & 2) q |= mb;
        return q;
    };
    std::array<std::array<std::complex<double>, 4>, 4> rho{};
    for (std::uint64_t rest = 0; rest < psi.dim(); ++rest) {
        if (rest & pair_mask) continue;
        for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t)
                rho[s][t] += psi.amps[embed(rest, s)] *
                             std::conj(psi.amps[embed(rest, t)]);
    }
    return rho;
}

double bilocal_purity(const StateVector& psi, const std::vector<Bond>& pairing) {
    if (static_cast<int>(pairing.size()) * 2 != psi.n)
        throw std::invalid_argument("bilocal_purity: pairing must cover all qubits");
    std::vector<bool> seen(psi.n, false);
    for (const Bond& p : pairing) {
        if (p.a < 1 || p.a > psi.n || p.b < 1 || p.b > psi.n || p.a == p.b ||
            seen[p.a - 1] || seen[p.b - 1])
            throw std::invalid_argument("bilocal_purity: pairing is not a matching");
        seen[p.a - 1] = seen[p.b - 1] = true;
    }
    double sum = 0.0;
    for (const Bond& p : pairing) {
        const auto rho = pair_density_matrix(psi, p.a, p.b);
        double tr2 = 0.0;
        for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t) tr2 += std::norm(rho[s][t]);
        sum += 4.0 * tr2 - 1.0; // Pauli-squared sum over the pair, identity omitted
    }
    return 2.0 * sum / (3.0 * psi.n);
}

Participation participation_number(const StateVector& psi) {
    double xi = 0.0;
    for (const auto& a : psi.amps) {
        const double p = std::norm(a);
        xi += p * p;
    }
    return {xi, 1.0 / xi};
}

PurityDecomposition purity_decomposition(std::uint64_t c, const StateVector& psi_t) {
    const int n = psi_t.n;
    if (c >= psi_t.dim())
        throw std::invalid_argument("purity_decomposition: c out of range");
    const double fidelity = std::norm(psi_t.amps[c]);

    PurityDecomposition d;
    d.alphas.assign(n, 0.0);
    for (std::uint64_t p = 0; p < psi_t.dim(); ++p) {
        if (p == c) continue;
        const double w = std::norm(psi_t.amps[p]);
        if (w == 0.0) continue;
        for (int j = 1; j <= n; ++j)
            d.alphas[j - 1] += w * parity_sign(p, j);
    }
    d.F2 = fidelity * fidelity;
    double cross = 0.0, quad = 0.0;
    for (int j = 1; j <= n; ++j) {
        cross += fidelity * parity_sign(c, j) * d.alphas[j - 1];
        quad += d.alphas[j - 1] * d.alphas[j - 1];
    }
    d.cross = 2.0 * cross / n;
    d.quad = quad / n;
    return d;
}

} // namespace spinlat
