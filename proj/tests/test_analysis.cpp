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

#include "core/analysis.hpp"
#include "core/measures.hpp"
#include "core/states.hpp"

using namespace spinlat;

namespace {

EnsembleConfig small_config() {
    EnsembleConfig cfg;
    cfg.lattice = build_lattice(2, 3);
    cfg.params = {1.0, 0.1, 0.05};
    cfg.state = "central";
    cfg.grid = TimeGrid::uniform(40.0, 21);
    cfg.n_r = 4;
    cfg.seed = 777;
    return cfg;
}

} // namespace

TEST_CASE("single-realization ensemble has zero standard error") {
    auto cfg = small_config();
    cfg.n_r = 1;
    const auto result = run_ensemble(cfg);
    for (double s : result.p1.sem) CHECK(s == 0.0);
    CHECK(result.p1.mean.front() == doctest::Approx(1.0));
}

TEST_CASE("J=0 ensemble is stationary") {
    auto cfg = small_config();
    cfg.params.J = 0.0;
    const auto result = run_ensemble(cfg);
    for (std::size_t k = 0; k < result.times.size(); ++k) {
        CHECK(result.p1.mean[k] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(result.p2.mean[k] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(result.f.mean[k] == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("ensemble determinism across worker schedules") {
    const auto cfg = small_config();
    const auto a = run_ensemble(cfg);
    const auto b = run_ensemble(cfg);
    CHECK(a.p1.mean == b.p1.mean);
    CHECK(a.p2.mean == b.p2.mean);
    CHECK(a.xi.sem == b.xi.sem);
}

TEST_CASE("critical time crossings") {
    SUBCASE("constant series is censored") {
        const auto cr = critical_time({0, 1, 2, 3}, {1.0, 1.0, 1.0, 1.0}, 0.9);
        CHECK(cr.censored);
        CHECK(cr.t_c == 3.0);
    }
    SUBCASE("exponential crossing with interpolation") {
        std::vector<double> t, v;
        for (int k = 0; k <= 200; ++k) {
            t.push_back(0.02 * k);
            v.push_back(std::exp(-t.back()));
        }
        const auto cr = critical_time(t, v, std::exp(-1.0));
        CHECK_FALSE(cr.censored);
        CHECK(cr.t_c == doctest::Approx(1.0).epsilon(1e-3));
    }
    SUBCASE("first-crossing rule under non-monotone noise") {
        const auto cr = critical_time({0, 1, 2, 3, 4}, {1.0, 0.85, 0.95, 0.7, 0.6}, 0.9);
        CHECK_FALSE(cr.censored);
        CHECK(cr.t_c < 1.0);
    }
}

TEST_CASE("fit_decay on synthetic laws") {
    const auto scales = spectral_scales({1.0, 0.1, 0.01}, 10, 5);
    std::vector<double> t;
    for (int k = 0; k <= 400; ++k) t.push_back(0.05 * k);

    SUBCASE("pure exponential") {
        std::vector<double> v;
        for (double tk : t) v.push_back(std::exp(-0.3 * tk));
        const auto fit = fit_decay(t, v, scales);
        CHECK(fit.shape == RegimeFit::Shape::exponential);
        CHECK(fit.rate == doctest::Approx(0.3).epsilon(0.01));
        CHECK(fit.C == doctest::Approx(0.3 / scales.Gamma_F).epsilon(0.01));
    }
    SUBCASE("pure gaussian") {
        std::vector<double> v;
        for (double tk : t) v.push_back(std::exp(-0.01 * tk * tk));
        const auto fit = fit_decay(t, v, scales);
        CHECK(fit.shape == RegimeFit::Shape::gaussian);
        CHECK(fit.rate == doctest::Approx(0.01).epsilon(0.01));
    }
    SUBCASE("no decay reports an empty window") {
        std::vector<double> v(t.size(), 1.0);
        const auto fit = fit_decay(t, v, scales);
        CHECK(fit.shape == RegimeFit::Shape::none);
        CHECK(fit.window_points == 0);
    }
}

TEST_CASE("saturation of a stationary ensemble") {
    auto cfg = small_config();
    cfg.params.J = 0.0;
    const auto result = run_ensemble(cfg);
    const auto scales = spectral_scales(cfg.params, 6, 3);
    const auto s = saturation_stats(result, scales);
    CHECK(s.plateau_detected);
    CHECK(s.p1_inf == doctest::Approx(1.0));
    CHECK(s.ipr_inf == doctest::Approx(1.0));
}

TEST_CASE("porter-thomas sampler") {
    SUBCASE("single component is fully localized") {
        const auto pt = porter_thomas_sample(1, 10, 5);
        CHECK(pt.mean_xi == doctest::Approx(1.0));
    }
    SUBCASE("moderate band statistics") {
        const auto pt = porter_thomas_sample(20, 400, 11);
        CHECK(pt.mean_xi == doctest::Approx(3.0 / 22.0).epsilon(0.1));
    }
}

TEST_CASE("scaling exponent recovery") {
    std::vector<std::pair<double, double>> pts;
    for (double j : {0.01, 0.02, 0.04, 0.08}) pts.push_back({j, 2.5 / (j * j)});
    auto fit = scaling_exponent(pts);
    REQUIRE(fit.valid);
    CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-10));

    pts.clear();
    for (double j : {0.01, 0.02, 0.04, 0.08}) pts.push_back({j, 0.4 / j});
    fit = scaling_exponent(pts);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-10));

    CHECK_FALSE(scaling_exponent({{0.1, 1.0}, {0.2, 0.5}}).valid);
}

TEST_CASE("default decay grids") {
    const auto fgr = spectral_scales({1.0, 0.1, 0.02}, 10, 5);
    const auto grid = decay_grid(fgr, 10.0, 400);
    CHECK(grid.times.size() == 400);
    CHECK(grid.times.back() == doctest::Approx(10.0 / fgr.Gamma_F));
    const auto erg = spectral_scales({1.0, 0.1, 0.1}, 10, 5);
    CHECK(decay_grid(erg).times.back() == doctest::Approx(100.0));
}
