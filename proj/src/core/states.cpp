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

#include "states.hpp"

#include <cmath>
#include <stdexcept>

namespace spinlat {

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

int parity_sign(std::uint64_t q, int j) {
    if (j < 1) throw std::invalid_argument("parity_sign: qubit index is 1-based");
    return ((q >> (j - 1)) & 1ull) ? -1 : 1;
}

StateVector computational_state(int n, std::uint64_t q) {
    if (n < 1 || n > 62) throw std::invalid_argument("computational_state: bad n");
    const std::uint64_t dim = 1ull << n;
    if (q >= dim) throw std::invalid_argument("computational_state: q out of range");
    StateVector psi;
    psi.n = n;
    psi.amps.assign(dim, 0.0);
    psi.amps[q] = 1.0;
    return psi;
}

std::uint64_t central_band_basis_index(int n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("central_band_basis_index: n must be even");
    std::uint64_t q = 0;
    for (int j = 2; j <= n; j += 2) q |= 1ull << (j - 1);
    return q;
}

StateVector central_band_state(int n) {
    return computational_state(n, central_band_basis_index(n));
}

StateVector bell_pair_state(int n, int n_bell) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("bell_pair_state: n must be even");
    if (n_bell < 0 || n_bell > n / 2)
        throw std::invalid_argument("bell_pair_state: n_B out of range");
    const int n_sep = n - 2 * n_bell;
    std::uint64_t base = 0;
    for (int j = 2; j <= n_sep; j += 2) base |= 1ull << (j - 1);

    StateVector psi;
    psi.n = n;
    psi.amps.assign(1ull << n, 0.0);
    const double amp = std::pow(2.0, -0.5 * n_bell);
    // Each Bell pair contributes exactly one excitation on its two qubits.
    const std::uint64_t combos = 1ull << n_bell;
    for (std::uint64_t m = 0; m < combos; ++m) {
        std::uint64_t q = base;
        for (int b = 0; b < n_bell; ++b) {
            const int lo = n_sep + 2 * b + 1; // 1-based qubit index of pair member
            const int excited = ((m >> b) & 1ull) ? lo : lo + 1;
            q |= 1ull << (excited - 1);
        }
        psi.amps[q] = amp;
    }
    return psi;
}

StateVector w_state(int n) {
    if (n < 2) throw std::invalid_argument("w_state: n must be >= 2");
    StateVector psi;
    psi.n = n;
    psi.amps.assign(1ull << n, 0.0);
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 1; j <= n; ++j) psi.amps[1ull << (j - 1)] = amp;
    return psi;
}

StateVector product_state(const std::string& symbols) {
    const int n = static_cast<int>(symbols.size());
    if (n < 1 || n > 30) throw std::invalid_argument("product_state: bad length");
    const double r = 1.0 / std::sqrt(2.0);
    StateVector psi;
    psi.n = n;
    psi.amps.assign(1ull << n, 1.0);
    for (int j = 1; j <= n; ++j) {
        double c0, c1;
        switch (symbols[j - 1]) {
        case '0': c0 = 1.0; c1 = 0.0; break;
        case '1': c0 = 0.0; c1 = 1.0; break;
        case '+': c0 = r; c1 = r; break;
        case '-': c0 = r; c1 = -r; break;
        default:
            throw std::invalid_argument(std::string("product_state: bad symbol '") +
                                        symbols[j - 1] + "'");
        }
        const std::uint64_t mask = 1ull << (j - 1);
        for (std::uint64_t q = 0; q < psi.dim(); ++q)
            psi.amps[q] *= (q & mask) ? c1 : c0;
    }
    return psi;
}

StateVector make_state(int n, const std::string& designator) {
    if (designator == "central") return central_band_state(n);
    if (designator == "w") return w_state(n);
    if (designator.rfind("bell:", 0) == 0)
        return bell_pair_state(n, std::stoi(designator.substr(5)));
    if (designator.rfind("product:", 0) == 0) {
        auto psi = product_state(designator.substr(8));
        if (psi.n != n)
            throw std::invalid_argument("make_state: product symbol count != n");
        return psi;
    }
    if (designator.rfind("basis:", 0) == 0) {
        const std::string bits = designator.substr(6);
        if (static_cast<int>(bits.size()) != n)
            throw std::invalid_argument("make_state: bitstring length != n");
        std::uint64_t q = 0;
        for (int j = 1; j <= n; ++j) {
            if (bits[j - 1] == '1') q |= 1ull << (j - 1);
            else if (bits[j - 1] != '0')
                throw std::invalid_argument("make_state: bitstring must be 0/1");
        }
        return computational_state(n, q);
    }
    throw std::invalid_argument("make_state: unknown designator '" + designator + "'");
}

} // namespace spinlat
