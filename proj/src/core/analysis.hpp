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

#ifndef SPINLAT_CORE_ANALYSIS_HPP
#define SPINLAT_CORE_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "model.hpp"
#include "propagator.hpp"

namespace spinlat {

struct EnsembleConfig {
    LatticeSpec lattice;
    ModelParams params;
    std::string state = "central"; // designator, see make_state
    TimeGrid grid;
    int n_r = 10;
    std::uint64_t seed = 0;
    Backend backend = Backend::automatic;
    double tol = 1e-10;
};

struct SeriesStats {
    std::vector<double> mean;
    std::vector<double> sem; // sample std dev / sqrt(N_r)
};

struct EnsembleResult {
    std::vector<double> times;
    SeriesStats p1, p2, f, xi;
    SeriesStats ipr; // mean of 1/xi over realizations (not 1/mean xi)
    int n_r = 0;
};

// Realization r uses the seed derived from (cfg.seed, r); realizations run on
// a worker pool (SPINLAT_WORKERS, default hardware concurrency) and are merged
// in index order, so the result is independent of scheduling.
EnsembleResult run_ensemble(const EnsembleConfig& cfg);

struct Crossing {
    double t_c = 0.0;
    bool censored = false; // no crossing by the end of the grid
};

// First downward crossing of the absolute level K, linearly interpolated.
Crossing critical_time(const std::vector<double>& times,
                       const std::vector<double>& values, double K);

struct RegimeFit {
    enum class Shape { exponential, gaussian, none };
    Shape shape = Shape::none;
    double rate = 0.0;       // of the selected shape
    double C = 0.0;          // rate_exp / Gamma_F (0 when undefined)
    double Cprime = 0.0;     // rate_gauss / Gamma_E^2
    double resid_exp = 0.0;  // rms log-domain misfit
    double resid_gauss = 0.0;
    std::size_t window_points = 0;
};

// Log-domain least squares of the saturation-floor-subtracted decay
// (P - Pinf)/(P0 - Pinf) against t and t^2 over the window [0.2, 0.95],
// ended early when the series rises 5% above its running minimum; the
// lower-residual shape wins. Pinf is the final-quarter mean of the series.
RegimeFit fit_decay(const std::vector<double>& times,
                    const std::vector<double>& values,
                    const SpectralScales& scales);

struct SaturationStats {
    double p1_inf = 0.0, p1_err = 0.0;
    double xi_inf = 0.0, xi_err = 0.0;
    double ipr_inf = 0.0, ipr_err = 0.0;
    bool plateau_detected = false;
    double N_inf_est = 0.0; // (Gamma_F/Delta_B) N_B capped at N_B
    double p1_pred = 0.0;   // 2/N_inf
    double xi_pred = 0.0;   // 3/N_inf
    double ipr_pred = 0.0;  // N_inf/3
};

// Plateau = mean over the final quarter of the grid; detected when the last
// two quarter-window means of P1 drift by less than 5%.
SaturationStats saturation_stats(const EnsembleResult& result,
                                 const SpectralScales& scales);

struct PorterThomasStats {
    double mean_xi = 0.0;
    double mean_p1 = 0.0;
};

// Random real superpositions of N_inf central-band basis states of the
// smallest lattice whose central band holds them.
PorterThomasStats porter_thomas_sample(int N_inf, int draws, std::uint64_t seed);

struct SlopeFit {
    double slope = 0.0;
    double stderr_ = 0.0;
    int points_used = 0;
    bool valid = false; // needs >= 3 points
};

// Least-squares slope of log(t_c) vs log(J).
SlopeFit scaling_exponent(const std::vector<std::pair<double, double>>& j_tc);

// Default decay grid: t_max = horizon / Gamma with Gamma = Gamma_F in the
// perturbative/FGR regimes and Gamma_E otherwise.
TimeGrid decay_grid(const SpectralScales& scales, double horizon = 10.0,
                    std::size_t samples = 400);

int worker_count();

} // namespace spinlat

#endif
