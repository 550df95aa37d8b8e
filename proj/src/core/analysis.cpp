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

#include "analysis.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "measures.hpp"
#include "rng.hpp"
#include "states.hpp"

namespace spinlat {

int worker_count() {
    if (const char* env = std::getenv("SPINLAT_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1) return w;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

namespace {

struct RealizationSeries {
    std::vector<double> p1, p2, f, xi;
};

RealizationSeries run_realization(const EnsembleConfig& cfg, int r) {
    const auto real = sample_disorder(cfg.lattice, cfg.params,
                                      realization_seed(cfg.seed, r));
    const auto terms = build_hamiltonian(cfg.lattice, cfg.params, real);
    const auto psi0 = make_state(cfg.lattice.n, cfg.state);

    RealizationSeries s;
    const std::size_t nt = cfg.grid.times.size();
    s.p1.resize(nt);
    s.p2.resize(nt);
    s.f.resize(nt);
    s.xi.resize(nt);
    evolve_stream(terms, psi0, cfg.grid, cfg.backend, cfg.tol,
                  [&](std::size_t k, const StateVector& psi) {
                      s.p1[k] = local_purity(psi);
                      s.p2[k] = bilocal_purity(psi, cfg.lattice.pairing);
                      std::complex<double> ov = 0.0;
                      for (std::size_t q = 0; q < psi.dim(); ++q)
                          ov += std::conj(psi0.amps[q]) * psi.amps[q];
                      s.f[k] = std::norm(ov);
                      s.xi[k] = participation_number(psi).xi;
                  });
    return s;
}

SeriesStats aggregate(const std::vector<std::vector<double>>& per_realization) {
    const int n_r = static_cast<int>(per_realization.size());
    const std::size_t nt = per_realization.front().size();
    SeriesStats stats;
    stats.mean.assign(nt, 0.0);
    stats.sem.assign(nt, 0.0);
    for (std::size_t k = 0; k < nt; ++k) {
        double sum = 0.0;
        for (int r = 0; r < n_r; ++r) sum += per_realization[r][k];
        const double mean = sum / n_r;
        stats.mean[k] = mean;
        if (n_r > 1) {
            double ss = 0.0;
            for (int r = 0; r < n_r; ++r) {
                const double d = per_realization[r][k] - mean;
                ss += d * d;
            }
            stats.sem[k] = std::sqrt(ss / (n_r - 1)) / std::sqrt(double(n_r));
        }
    }
    return stats;
}

double window_mean(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t k = lo; k < hi; ++k) s += v[k];
    return s / (hi - lo);
}

} // namespace

EnsembleResult run_ensemble(const EnsembleConfig& cfg) {
    if (cfg.n_r < 1) throw std::invalid_argument("run_ensemble: N_r must be >= 1");
    cfg.grid.validate();

    std::vector<RealizationSeries> series(cfg.n_r);
    std::atomic<int> next{0};
    std::vector<std::string> failures(cfg.n_r);
    auto work = [&]() {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= cfg.n_r) return;
            try {
                series[r] = run_realization(cfg, r + 1);
            } catch (const std::exception& e) {
                failures[r] = e.what();
            }
        }
    };
    const int workers = std::min(worker_count(), cfg.n_r);
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (int r = 0; r < cfg.n_r; ++r)
        if (!failures[r].empty())
            throw std::runtime_error("run_ensemble: realization " +
                                     std::to_string(r + 1) + " failed: " + failures[r]);

    EnsembleResult result;
    result.times = cfg.grid.times;
    result.n_r = cfg.n_r;
    auto collect = [&](auto member) {
        std::vector<std::vector<double>> rows;
        rows.reserve(cfg.n_r);
        for (const auto& s : series) rows.push_back(s.*member);
        return aggregate(rows);
    };
    result.p1 = collect(&RealizationSeries::p1);
    result.p2 = collect(&RealizationSeries::p2);
    result.f = collect(&RealizationSeries::f);
    result.xi = collect(&RealizationSeries::xi);
    {
        std::vector<std::vector<double>> rows;
        rows.reserve(cfg.n_r);
        for (const auto& s : series) {
            std::vector<double> inv(s.xi.size());
            for (std::size_t k = 0; k < s.xi.size(); ++k) inv[k] = 1.0 / s.xi[k];
            rows.push_back(std::move(inv));
        }
        result.ipr = aggregate(rows);
    }
    return result;
}

Crossing critical_time(const std::vector<double>& times,
                       const std::vector<double>& values, double K) {
    if (times.size() != values.size() || times.empty())
        throw std::invalid_argument("critical_time: bad series");
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (values[k - 1] >= K && values[k] < K) {
            const double frac = (values[k - 1] - K) / (values[k - 1] - values[k]);
            return {times[k - 1] + frac * (times[k] - times[k - 1]), false};
        }
    }
    return {times.back(), true};
}

RegimeFit fit_decay(const std::vector<double>& times,
                    const std::vector<double>& values,
                    const SpectralScales& scales) {
    if (times.size() != values.size() || times.empty())
        throw std::invalid_argument("fit_decay: bad series");
    const double p0 = values.front();
    RegimeFit fit;
    // Saturation floor from the final quarter; the decay is fitted on the
    // floor-subtracted series so the approach to the plateau does not skew
    // the exponential/gaussian discrimination.
    const std::size_t nt = times.size();
    double pinf = 0.0;
    if (nt >= 8) {
        for (std::size_t k = 3 * nt / 4; k < nt; ++k) pinf += values[k];
        pinf /= double(nt - 3 * nt / 4);
        pinf = std::min(pinf, values.back());
    }
    const double span = p0 - pinf;
    if (!(span > 0.05 * std::abs(p0))) return fit; // no decay to fit
    // y = log((P - Pinf)/(P0 - Pinf)) fitted through the origin vs t and t^2.
    double st2 = 0.0, st4 = 0.0, syt = 0.0, syt2 = 0.0;
    std::vector<double> yy, tt;
    double runmin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double rel = (values[k] - pinf) / span;
        if (rel > 0.95) continue; // pre-decay
        if (rel < 0.2) break;     // decayed through the window
        if (rel > 1.05 * runmin) break; // plateau or revival reached
        runmin = std::min(runmin, rel);
        const double y = std::log(rel);
        const double t = times[k];
        yy.push_back(y);
        tt.push_back(t);
        st2 += t * t;
        st4 += t * t * t * t;
        syt += y * t;
        syt2 += y * t * t;
    }
    fit.window_points = yy.size();
    if (yy.size() < 3) return fit; // no decay: perturbative, nothing to fit

    const double rate_exp = -syt / st2;
    const double rate_gauss = -syt2 / st4;
    double se = 0.0, sg = 0.0;
    for (std::size_t k = 0; k < yy.size(); ++k) {
        const double de = yy[k] + rate_exp * tt[k];
        const double dg = yy[k] + rate_gauss * tt[k] * tt[k];
        se += de * de;
        sg += dg * dg;
    }
    fit.resid_exp = std::sqrt(se / yy.size());
    fit.resid_gauss = std::sqrt(sg / yy.size());
    fit.shape = (fit.resid_exp <= fit.resid_gauss) ? RegimeFit::Shape::exponential
                                                   : RegimeFit::Shape::gaussian;
    fit.rate = (fit.shape == RegimeFit::Shape::exponential) ? rate_exp : rate_gauss;
    if (scales.Gamma_F > 0.0) fit.C = rate_exp / scales.Gamma_F;
    if (scales.Gamma_E > 0.0) fit.Cprime = rate_gauss / (scales.Gamma_E * scales.Gamma_E);
    return fit;
}

SaturationStats saturation_stats(const EnsembleResult& result,
                                 const SpectralScales& scales) {
    const std::size_t nt = result.times.size();
    if (nt < 8) throw std::invalid_argument("saturation_stats: grid too short");
    const std::size_t q3 = nt / 2, q4 = 3 * nt / 4;

    SaturationStats s;
    const double last = window_mean(result.p1.mean, q4, nt);
    const double prev = window_mean(result.p1.mean, q3, q4);
    s.plateau_detected = std::abs(last - prev) <= 0.05 * std::max(last, prev);

    s.p1_inf = window_mean(result.p1.mean, q4, nt);
    s.p1_err = window_mean(result.p1.sem, q4, nt);
    s.xi_inf = window_mean(result.xi.mean, q4, nt);
    s.xi_err = window_mean(result.xi.sem, q4, nt);
    s.ipr_inf = window_mean(result.ipr.mean, q4, nt);
    s.ipr_err = window_mean(result.ipr.sem, q4, nt);

    if (scales.regime == Regime::ergodic_only || scales.regime == Regime::ergodic ||
        scales.Delta_B <= 0.0) {
        s.N_inf_est = scales.N_B; // IPR is constant once the band is fully mixed
    } else {
        s.N_inf_est = std::min(scales.Gamma_F / scales.Delta_B * scales.N_B,
                               scales.N_B);
    }
    if (s.N_inf_est > 0.0) {
        s.p1_pred = 2.0 / s.N_inf_est;
        s.xi_pred = 3.0 / s.N_inf_est;
        s.ipr_pred = s.N_inf_est / 3.0;
    }
    return s;
}

PorterThomasStats porter_thomas_sample(int N_inf, int draws, std::uint64_t seed) {
    if (N_inf < 1 || draws < 1)
        throw std::invalid_argument("porter_thomas_sample: bad arguments");
    // Smallest even n whose central band holds N_inf states.
    int n = 2;
    while (binomial(n, n / 2) < N_inf) {
        n += 2;
        if (n > 20) throw std::invalid_argument("porter_thomas_sample: N_inf too large");
    }
    std::vector<std::uint64_t> band;
    for (std::uint64_t q = 0; q < (1ull << n) && static_cast<int>(band.size()) < N_inf; ++q)
        if (std::popcount(q) == n / 2) band.push_back(q);

    double sum_xi = 0.0, sum_p1 = 0.0;
    StateVector psi;
    psi.n = n;
    for (int d = 0; d < draws; ++d) {
        psi.amps.assign(1ull << n, 0.0);
        double norm2 = 0.0;
        std::vector<double> w(N_inf);
        for (int p = 0; p < N_inf; ++p) {
            // Box-Muller on counter-based uniforms: order-independent draws.
            const double u1 = std::max(uniform01(seed, 3 + d, 2 * p), 1e-300);
            const double u2 = uniform01(seed, 3 + d, 2 * p + 1);
            w[p] = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
            norm2 += w[p] * w[p];
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (int p = 0; p < N_inf; ++p) psi.amps[band[p]] = w[p] * inv;
        sum_xi += participation_number(psi).xi;
        sum_p1 += local_purity(psi);
    }
    return {sum_xi / draws, sum_p1 / draws};
}

SlopeFit scaling_exponent(const std::vector<std::pair<double, double>>& j_tc) {
    SlopeFit fit;
    std::vector<double> x, y;
    for (const auto& [j, tc] : j_tc) {
        if (j <= 0.0 || tc <= 0.0) continue;
        x.push_back(std::log(j));
        y.push_back(std::log(tc));
    }
    fit.points_used = static_cast<int>(x.size());
    if (fit.points_used < 3) return fit;
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sx += x[k];
        sy += y[k];
        sxx += x[k] * x[k];
        sxy += x[k] * y[k];
    }
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = y[k] - (intercept + fit.slope * x[k]);
        ss += d * d;
    }
    if (x.size() > 2)
        fit.stderr_ = std::sqrt(ss / (n - 2) / (sxx - sx * sx / n));
    fit.valid = true;
    return fit;
}

TimeGrid decay_grid(const SpectralScales& scales, double horizon,
                    std::size_t samples) {
    double gamma;
    switch (scales.regime) {
    case Regime::perturbative:
    case Regime::fgr:
        gamma = scales.Gamma_F;
        break;
    default:
        gamma = scales.Gamma_E;
        break;
    }
    if (gamma <= 0.0)
        throw std::invalid_argument("decay_grid: no positive rate scale");
    return TimeGrid::uniform(horizon / gamma, samples);
}

} // namespace spinlat
