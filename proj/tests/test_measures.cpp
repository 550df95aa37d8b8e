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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/measures.hpp"
#include "core/propagator.hpp"
#include "oracle.hpp"

using namespace spinlat;

TEST_CASE("bloch vectors of product factors") {
    const auto zero = product_state("00");
    auto b = single_qubit_bloch(zero, 1);
    CHECK(b.xyz[0] == doctest::Approx(0.0));
    CHECK(b.xyz[2] == doctest::Approx(1.0)); // |0> <-> sigma_z = +1

    const auto plus = product_state("+0");
    b = single_qubit_bloch(plus, 1);
    CHECK(b.xyz[0] == doctest::Approx(1.0));
    CHECK(b.xyz[2] == doctest::Approx(0.0));

    const auto minus = product_state("-0");
    CHECK(single_qubit_bloch(minus, 1).xyz[0] == doctest::Approx(-1.0));

    const auto bell = bell_pair_state(2, 1);
    b = single_qubit_bloch(bell, 1);
    CHECK(std::abs(b.xyz[0]) + std::abs(b.xyz[1]) + std::abs(b.xyz[2]) < 1e-14);

    CHECK_THROWS(single_qubit_bloch(zero, 3));
}

TEST_CASE("purities on named states") {
    const auto pairing4 = build_lattice(2, 2).pairing;
    const auto pairing10 = build_lattice(2, 5).pairing;

    CHECK(local_purity(product_state("01+-")) == doctest::Approx(1.0));
    CHECK(bilocal_purity(product_state("01+-"), pairing4) == doctest::Approx(1.0));
    CHECK(local_purity(bell_pair_state(10, 2)) == doctest::Approx(0.6));
    for (int nb = 0; nb <= 5; ++nb)
        CHECK(bilocal_purity(bell_pair_state(10, nb), pairing10) ==
              doctest::Approx(1.0).epsilon(1e-12));
    CHECK(local_purity(w_state(10)) == doctest::Approx(0.64));

    // 4-qubit GHZ with pairing {(1,2),(3,4)}: tr rho_pair^2 = 1/2 per pair
    StateVector ghz;
    ghz.n = 4;
    ghz.amps.assign(16, 0.0);
    ghz.amps[0] = ghz.amps[15] = 1.0 / std::sqrt(2.0);
    CHECK(bilocal_purity(ghz, pairing4) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("purities match partial-trace oracles on random states") {
    std::mt19937_64 rng(7);
    for (int n : {2, 4, 6}) {
        const auto pairing = build_lattice(2, n / 2).pairing;
        for (int trial = 0; trial < 20; ++trial) {
            const auto psi = oracle::random_state(n, rng);
            CHECK(local_purity(psi) ==
                  doctest::Approx(oracle::local_purity_oracle(psi)).epsilon(1e-10));
            CHECK(bilocal_purity(psi, pairing) ==
                  doctest::Approx(oracle::bilocal_purity_oracle(psi, pairing))
                      .epsilon(1e-10));
            CHECK(local_purity(psi) >= -1e-12);
            CHECK(local_purity(psi) <= 1.0 + 1e-12);
            CHECK(bilocal_purity(psi, pairing) >= -1e-12);
            CHECK(bilocal_purity(psi, pairing) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("bi-local purity equals the Pauli expectation sum") {
    std::mt19937_64 rng(12);
    const auto pairing = build_lattice(2, 2).pairing;
    for (int trial = 0; trial < 5; ++trial) {
        const auto psi = oracle::random_state(4, rng);
        CHECK(bilocal_purity(psi, pairing) ==
              doctest::Approx(oracle::bilocal_purity_pauli_oracle(psi, pairing))
                  .epsilon(1e-10));
    }
}

TEST_CASE("bilocal purity rejects invalid matchings") {
    const auto psi = central_band_state(4);
    CHECK_THROWS(bilocal_purity(psi, {{1, 2}}));               // not covering
    CHECK_THROWS(bilocal_purity(psi, {{1, 2}, {2, 3}}));       // repeated site
    CHECK_THROWS(bilocal_purity(psi, {{1, 1}, {3, 4}}));       // self-pair
}

TEST_CASE("local purity is invariant under single-site rotations") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(0.0, 6.28);
    auto psi = oracle::random_state(5, rng);
    const double before = local_purity(psi);
    // random SU(2) on site 3
    const double t1 = angle(rng), t2 = angle(rng), t3 = angle(rng);
    const std::complex<double> i(0, 1);
    const std::complex<double> u00 = std::cos(t1) * std::exp(i * t2);
    const std::complex<double> u01 = std::sin(t1) * std::exp(i * t3);
    const std::uint64_t mask = 1ull << 2;
    for (std::uint64_t q = 0; q < psi.dim(); ++q) {
        if (q & mask) continue;
        const auto a0 = psi.amps[q], a1 = psi.amps[q | mask];
        psi.amps[q] = u00 * a0 + u01 * a1;
        psi.amps[q | mask] = -std::conj(u01) * a0 + std::conj(u00) * a1;
    }
    CHECK(local_purity(psi) == doctest::Approx(before).epsilon(1e-10));
}

TEST_CASE("participation numbers") {
    auto p = participation_number(computational_state(6, 11));
    CHECK(p.xi == doctest::Approx(1.0));
    CHECK(p.ipr == doctest::Approx(1.0));

    p = participation_number(product_state("++++"));
    CHECK(p.xi == doctest::Approx(1.0 / 16.0));
    CHECK(p.ipr == doctest::Approx(16.0));

    p = participation_number(w_state(10));
    CHECK(p.ipr == doctest::Approx(10.0));
}

TEST_CASE("purity decomposition at t=0") {
    const std::uint64_t c = central_band_basis_index(6);
    const auto d = purity_decomposition(c, central_band_state(6));
    CHECK(d.F2 == doctest::Approx(1.0));
    CHECK(d.cross == doctest::Approx(0.0));
    CHECK(d.quad == doctest::Approx(0.0));
    for (double a : d.alphas) CHECK(a == doctest::Approx(0.0));
}

TEST_CASE("decomposition recomposes P1 along an FGR trajectory") {
    const auto lat = build_lattice(2, 3);
    const ModelParams params{1.0, 0.1, 0.01};
    const auto terms = build_hamiltonian(lat, params, sample_disorder(lat, params, 19));
    const std::uint64_t c = central_band_basis_index(6);
    const auto psi0 = central_band_state(6);
    const auto evo = evolve_dense(terms, psi0, TimeGrid::uniform(300.0, 61));
    for (const auto& psi : evo.states) {
        const auto d = purity_decomposition(c, psi);
        CHECK(d.total() == doctest::Approx(local_purity(psi)).epsilon(1e-10));
    }
}
