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

// Experiment runner on top of the spinlat C API: disorder-averaged evolution
// runs, critical-time sweeps, and the preset figure datasets.

#include <spinlat.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error(msg);
}

void check_api(int rc, const std::string& context) {
    if (rc != SPINLAT_OK)
        fail(context + ": " + spinlat_last_error());
}

// ---------- configuration ----------

struct Config {
    int rows = 2, cols = 5;
    double Delta = 1.0, delta = 0.1, J = 0.01;
    std::vector<double> J_grid;
    std::string state = "central";
    std::string backend = "auto";
    double tol = 1e-10;
    double t_max = 0.0; // 0: derive from the spectral scales
    double horizon = 10.0;
    int samples = 400;
    int n_r = 10;
    std::uint64_t seed = 1;
    double K = 0.9;
    double R = 7.0;
    std::string outdir = "out";
    json echo; // resolved configuration for the manifest
};

void reject_unknown(const json& obj, const std::string& section,
                    const std::vector<std::string>& allowed) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            fail("config: unknown key " + (section.empty() ? key : section + "." + key));
    }
}

Config parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("config: cannot open " + path);
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        fail("config: " + std::string(e.what()));
    }
    reject_unknown(root, "", {"lattice", "model", "state", "evolution",
                              "ensemble", "analysis", "output"});
    Config cfg;
    if (root.contains("lattice")) {
        const auto& lat = root["lattice"];
        reject_unknown(lat, "lattice", {"rows", "cols"});
        cfg.rows = lat.value("rows", cfg.rows);
        cfg.cols = lat.value("cols", cfg.cols);
    }
    if (root.contains("model")) {
        const auto& m = root["model"];
        reject_unknown(m, "model", {"Delta", "delta", "J", "J_grid"});
        cfg.Delta = m.value("Delta", cfg.Delta);
        cfg.delta = m.value("delta", cfg.delta);
        cfg.J = m.value("J", cfg.J);
        if (m.contains("J_grid"))
            cfg.J_grid = m["J_grid"].get<std::vector<double>>();
    }
    if (root.contains("state")) {
        const auto& s = root["state"];
        reject_unknown(s, "state", {"designator"});
        cfg.state = s.value("designator", cfg.state);
    }
    if (root.contains("evolution")) {
        const auto& e = root["evolution"];
        reject_unknown(e, "evolution",
                       {"backend", "tol", "t_max", "horizon", "samples"});
        cfg.backend = e.value("backend", cfg.backend);
        cfg.tol = e.value("tol", cfg.tol);
        cfg.t_max = e.value("t_max", cfg.t_max);
        cfg.horizon = e.value("horizon", cfg.horizon);
        cfg.samples = e.value("samples", cfg.samples);
    }
    if (root.contains("ensemble")) {
        const auto& e = root["ensemble"];
        reject_unknown(e, "ensemble", {"N_r", "seed"});
        cfg.n_r = e.value("N_r", cfg.n_r);
        cfg.seed = e.value("seed", cfg.seed);
    }
    if (root.contains("analysis")) {
        const auto& a = root["analysis"];
        reject_unknown(a, "analysis", {"K", "R"});
        cfg.K = a.value("K", cfg.K);
        cfg.R = a.value("R", cfg.R);
    }
    if (root.contains("output")) {
        const auto& o = root["output"];
        reject_unknown(o, "output", {"directory"});
        cfg.outdir = o.value("directory", cfg.outdir);
    }
    if (cfg.rows * cfg.cols > 16) fail("config: n > 16 is refused");
    if (cfg.n_r < 1) fail("config: ensemble.N_r must be >= 1");
    if (cfg.K <= 0.0 || cfg.K >= 1.0) fail("config: analysis.K must be in (0,1)");

    cfg.echo = {{"lattice", {{"rows", cfg.rows}, {"cols", cfg.cols}}},
                {"model",
                 {{"Delta", cfg.Delta}, {"delta", cfg.delta}, {"J", cfg.J}}},
                {"state", {{"designator", cfg.state}}},
                {"evolution",
                 {{"backend", cfg.backend},
                  {"tol", cfg.tol},
                  {"t_max", cfg.t_max},
                  {"horizon", cfg.horizon},
                  {"samples", cfg.samples}}},
                {"ensemble", {{"N_r", cfg.n_r}, {"seed", cfg.seed}}},
                {"analysis", {{"K", cfg.K}, {"R", cfg.R}}},
                {"output", {{"directory", cfg.outdir}}}};
    if (!cfg.J_grid.empty()) cfg.echo["model"]["J_grid"] = cfg.J_grid;
    return cfg;
}

int backend_id(const std::string& name) {
    if (name == "auto") return SPINLAT_BACKEND_AUTO;
    if (name == "dense") return SPINLAT_BACKEND_DENSE;
    if (name == "chebyshev") return SPINLAT_BACKEND_CHEBYSHEV;
    fail("config: unknown backend '" + name + "'");
}

// ---------- small numerics/plumbing ----------

spinlat_scales central_scales(double Delta, double delta, double J, int n) {
    const spinlat_params p{Delta, delta, J};
    spinlat_scales s{};
    check_api(spinlat_scales_compute(&p, n, n / 2, &s), "scales");
    return s;
}

// Decay-resolved grid: t_max = horizon / Gamma with Gamma picked per regime.
std::vector<double> make_times(const spinlat_scales& s, double t_max,
                               double horizon, int samples) {
    if (t_max <= 0.0) {
        double gamma = (s.regime == SPINLAT_REGIME_PERTURBATIVE ||
                        s.regime == SPINLAT_REGIME_FGR)
                           ? s.Gamma_F
                           : s.Gamma_E;
        t_max = gamma > 0.0 ? horizon / gamma : horizon;
    }
    std::vector<double> t(samples);
    for (int k = 0; k < samples; ++k)
        t[k] = t_max * k / double(samples - 1);
    return t;
}

struct EnsembleData {
    std::vector<double> t, p1, p1_sem, p2, p2_sem, f, f_sem, xi, xi_sem, ipr, ipr_sem;
};

EnsembleData run_ensemble(const Config& cfg, double J,
                          const std::vector<double>& times) {
    spinlat_ensemble_config ec{};
    ec.rows = cfg.rows;
    ec.cols = cfg.cols;
    ec.params = {cfg.Delta, cfg.delta, J};
    ec.state = cfg.state.c_str();
    ec.times = times.data();
    ec.n_times = times.size();
    ec.n_r = cfg.n_r;
    ec.seed = cfg.seed;
    ec.backend = backend_id(cfg.backend);
    ec.tol = cfg.tol;

    spinlat_ensemble* ens = nullptr;
    check_api(spinlat_ensemble_run(&ec, &ens), "ensemble run");
    std::unique_ptr<spinlat_ensemble, decltype(&spinlat_ensemble_free)> guard(
        ens, spinlat_ensemble_free);

    EnsembleData d;
    const std::size_t nt = spinlat_ensemble_size(ens);
    auto fetch = [&](const char* id, std::vector<double>& dst) {
        dst.resize(nt);
        check_api(spinlat_ensemble_series(ens, id, dst.data()), id);
    };
    fetch("t", d.t);
    fetch("P1", d.p1);
    fetch("P1_sem", d.p1_sem);
    fetch("P2", d.p2);
    fetch("P2_sem", d.p2_sem);
    fetch("F", d.f);
    fetch("F_sem", d.f_sem);
    fetch("xi", d.xi);
    fetch("xi_sem", d.xi_sem);
    fetch("I", d.ipr);
    fetch("I_sem", d.ipr_sem);
    return d;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::uint64_t fnv1a(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char c;
    while (in.get(c)) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ull;
    return h;
}

class OutputDir {
  public:
    explicit OutputDir(const std::string& dir) : dir_(dir) {
        fs::create_directories(dir_);
    }

    std::ofstream open(const std::string& name) {
        files_.push_back(name);
        return std::ofstream(dir_ / name, std::ios::binary);
    }

    void write_series_csv(const std::string& name, const EnsembleData& d) {
        auto out = open(name);
        out << "t,P1_mean,P1_sem,P2_mean,P2_sem,F_mean,F_sem,xi_mean,xi_sem\n";
        for (std::size_t k = 0; k < d.t.size(); ++k)
            out << fmt(d.t[k]) << ',' << fmt(d.p1[k]) << ',' << fmt(d.p1_sem[k])
                << ',' << fmt(d.p2[k]) << ',' << fmt(d.p2_sem[k]) << ','
                << fmt(d.f[k]) << ',' << fmt(d.f_sem[k]) << ',' << fmt(d.xi[k])
                << ',' << fmt(d.xi_sem[k]) << '\n';
    }

    void write_summary(const std::map<std::string, std::string>& kv) {
        auto out = open("summary");
        for (const auto& [k, v] : kv) out << k << " = " << v << '\n';
    }

    void write_manifest(const Config& cfg, const std::string& command,
                        double wall_seconds, bool all_ok) {
        auto out = std::ofstream(dir_ / "manifest", std::ios::binary);
        out << "command = " << command << '\n';
        out << "library_version = " << spinlat_version() << '\n';
        out << "master_seed = " << cfg.seed << '\n';
        out << "status = " << (all_ok ? "complete" : "partial") << '\n';
        out << "wall_clock_seconds = " << fmt(wall_seconds) << '\n';
        for (const auto& f : files_)
            out << "checksum " << f << " = " << fnv1a((dir_ / f).string()) << '\n';
        out << "config = " << cfg.echo.dump() << '\n';
    }

    fs::path path(const std::string& name) const { return dir_ / name; }

  private:
    fs::path dir_;
    std::vector<std::string> files_;
};

const char* regime_label(int regime) {
    switch (regime) {
    case SPINLAT_REGIME_PERTURBATIVE: return "perturbative";
    case SPINLAT_REGIME_FGR: return "fgr";
    case SPINLAT_REGIME_ERGODIC: return "ergodic";
    default: return "ergodic-only";
    }
}

// Critical time of the series rescaled by its initial value, so the same K
// threshold applies to states with P1(0) < 1.
std::pair<double, bool> rescaled_tc(const std::vector<double>& t,
                                    const std::vector<double>& v, double K) {
    std::vector<double> rel(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) rel[k] = v[k] / v.front();
    double tc = 0.0;
    int censored = 0;
    check_api(spinlat_critical_time(t.data(), rel.data(), rel.size(), K, &tc,
                                    &censored),
              "critical_time");
    return {tc, censored != 0};
}

// ---------- commands ----------

int cmd_validate(const std::string& config_path) {
    parse_config(config_path);
    std::printf("ok: %s parses to a valid configuration\n", config_path.c_str());
    return 0;
}

void summarize_run(const Config& cfg, const EnsembleData& d,
                   const spinlat_scales& scales,
                   std::map<std::string, std::string>& kv) {
    kv["n"] = std::to_string(cfg.rows * cfg.cols);
    kv["delta"] = fmt(cfg.delta);
    kv["Delta"] = fmt(cfg.Delta);
    kv["state"] = cfg.state;
    kv["N_r"] = std::to_string(cfg.n_r);
    kv["regime"] = regime_label(scales.regime);
    kv["Gamma_F"] = fmt(scales.Gamma_F);
    kv["Gamma_E"] = fmt(scales.Gamma_E);
    kv["J_c"] = fmt(scales.J_c);
    kv["J_E"] = fmt(scales.J_E);
    kv["Delta_B"] = fmt(scales.Delta_B);
    kv["N_B"] = fmt(scales.N_B);

    spinlat_fit fit{};
    check_api(spinlat_fit_decay(d.t.data(), d.p1.data(), d.t.size(), &scales, &fit),
              "fit_decay");
    if (fit.window_points == 0) {
        kv["fit_shape"] = "none";
    } else {
        kv["fit_shape"] = fit.gaussian ? "gaussian" : "exponential";
        kv["fit_rate"] = fmt(fit.rate);
        kv["fit_C"] = fmt(fit.C);
        kv["fit_Cprime"] = fmt(fit.Cprime);
        kv["fit_resid_exp"] = fmt(fit.resid_exp);
        kv["fit_resid_gauss"] = fmt(fit.resid_gauss);
        kv["fit_window_points"] = std::to_string(fit.window_points);
    }

    const auto [tc1, cen1] = rescaled_tc(d.t, d.p1, cfg.K);
    const auto [tc2, cen2] = rescaled_tc(d.t, d.p2, cfg.K);
    kv["tc_P1"] = fmt(tc1);
    kv["tc_P1_censored"] = cen1 ? "1" : "0";
    kv["tc_P2"] = fmt(tc2);
    kv["tc_P2_censored"] = cen2 ? "1" : "0";
}

int cmd_evolve(const std::string& config_path, const std::string& out_override) {
    const auto start = std::chrono::steady_clock::now();
    Config cfg = parse_config(config_path);
    if (!out_override.empty()) cfg.outdir = out_override;
    const int n = cfg.rows * cfg.cols;
    const auto scales = central_scales(cfg.Delta, cfg.delta, cfg.J, n);
    const auto times = make_times(scales, cfg.t_max, cfg.horizon, cfg.samples);
    const auto d = run_ensemble(cfg, cfg.J, times);

    OutputDir out(cfg.outdir);
    out.write_series_csv("series.csv", d);

    std::map<std::string, std::string> kv;
    kv["J"] = fmt(cfg.J);
    summarize_run(cfg, d, scales, kv);

    // plateau statistics need the ensemble handle, so rerun (deterministic)
    {
        spinlat_ensemble* ens = nullptr;
        spinlat_ensemble_config ec{};
        ec.rows = cfg.rows;
        ec.cols = cfg.cols;
        ec.params = {cfg.Delta, cfg.delta, cfg.J};
        ec.state = cfg.state.c_str();
        ec.times = times.data();
        ec.n_times = times.size();
        ec.n_r = cfg.n_r;
        ec.seed = cfg.seed;
        ec.backend = backend_id(cfg.backend);
        ec.tol = cfg.tol;
        check_api(spinlat_ensemble_run(&ec, &ens), "ensemble rerun");
        spinlat_saturation sat{};
        check_api(spinlat_saturation_stats(ens, &scales, &sat), "saturation");
        spinlat_ensemble_free(ens);
        kv["plateau_detected"] = sat.plateau_detected ? "1" : "0";
        kv["P1_inf"] = fmt(sat.p1_inf);
        kv["xi_inf"] = fmt(sat.xi_inf);
        kv["I_inf"] = fmt(sat.ipr_inf);
        kv["N_inf_est"] = fmt(sat.N_inf_est);
        kv["P1_pred"] = fmt(sat.p1_pred);
        kv["xi_pred"] = fmt(sat.xi_pred);
        kv["I_pred"] = fmt(sat.ipr_pred);
    }
    out.write_summary(kv);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    out.write_manifest(cfg, "evolve " + config_path, wall, true);
    return 0;
}

struct TcRow {
    std::string state;
    double delta, J, tc;
    bool censored;
    std::string measure;
};

void write_tc_csv(OutputDir& out, const std::string& name,
                  const std::vector<TcRow>& rows, bool with_state) {
    auto f = out.open(name);
    f << (with_state ? "state,delta,J,J_over_delta,tc,censored,measure\n"
                     : "delta,J,J_over_delta,tc,censored,measure\n");
    for (const auto& r : rows) {
        if (with_state) f << r.state << ',';
        f << fmt(r.delta) << ',' << fmt(r.J) << ',' << fmt(r.J / r.delta) << ','
          << fmt(r.tc) << ',' << (r.censored ? 1 : 0) << ',' << r.measure << '\n';
    }
}

// Per-branch scaling exponents from the uncensored rows of one measure.
void branch_slopes(const std::vector<TcRow>& rows, const std::string& measure,
                   double delta, double J_c, double J_E,
                   std::map<std::string, std::string>& kv,
                   const std::string& prefix) {
    std::vector<double> jf, tf, je, te;
    int censored_count = 0;
    for (const auto& r : rows) {
        if (r.measure != measure || r.delta != delta) continue;
        if (r.censored) {
            ++censored_count;
            continue;
        }
        if (r.J >= J_c && r.J < J_E) {
            jf.push_back(r.J);
            tf.push_back(r.tc);
        } else if (r.J >= J_E) {
            je.push_back(r.J);
            te.push_back(r.tc);
        }
    }
    kv[prefix + "_censored_points"] = std::to_string(censored_count);
    auto slope_of = [&](const std::vector<double>& j, const std::vector<double>& t,
                        const std::string& name) {
        if (j.size() < 3) {
            kv[prefix + "_" + name + "_slope"] = "insufficient-points";
            return;
        }
        double slope = 0.0, err = 0.0;
        check_api(spinlat_scaling_exponent(j.data(), t.data(), j.size(), &slope, &err),
                  "scaling_exponent");
        kv[prefix + "_" + name + "_slope"] = fmt(slope);
        kv[prefix + "_" + name + "_slope_stderr"] = fmt(err);
    };
    slope_of(jf, tf, "fgr");
    slope_of(je, te, "ergodic");
}

int cmd_sweep_tc(const std::string& config_path, const std::string& out_override) {
    const auto start = std::chrono::steady_clock::now();
    Config cfg = parse_config(config_path);
    if (!out_override.empty()) cfg.outdir = out_override;
    if (cfg.J_grid.empty()) fail("sweep-tc: config needs model.J_grid");
    const int n = cfg.rows * cfg.cols;

    std::vector<TcRow> rows;
    for (double J : cfg.J_grid) {
        const auto scales = central_scales(cfg.Delta, cfg.delta, J, n);
        const auto times = make_times(scales, cfg.t_max, cfg.horizon, cfg.samples);
        const auto d = run_ensemble(cfg, J, times);
        const auto [tc1, cen1] = rescaled_tc(d.t, d.p1, cfg.K);
        const auto [tc2, cen2] = rescaled_tc(d.t, d.p2, cfg.K);
        rows.push_back({cfg.state, cfg.delta, J, tc1, cen1, "P1"});
        rows.push_back({cfg.state, cfg.delta, J, tc2, cen2, "P2"});
    }

    OutputDir out(cfg.outdir);
    write_tc_csv(out, "tc.csv", rows, false);

    std::map<std::string, std::string> kv;
    const auto scales = central_scales(cfg.Delta, cfg.delta, cfg.J_grid.front(), n);
    bool any_uncensored = false;
    for (const auto& r : rows) any_uncensored |= !r.censored;
    if (any_uncensored) {
        branch_slopes(rows, "P1", cfg.delta, scales.J_c, scales.J_E, kv, "P1");
        branch_slopes(rows, "P2", cfg.delta, scales.J_c, scales.J_E, kv, "P2");
    } else {
        kv["notice"] = "all points censored; slopes omitted";
    }
    kv["K"] = fmt(cfg.K);
    out.write_summary(kv);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    out.write_manifest(cfg, "sweep-tc " + config_path, wall, true);
    return 0;
}

std::vector<double> log_grid(double lo, double hi, int count) {
    std::vector<double> g(count);
    for (int k = 0; k < count; ++k)
        g[k] = lo * std::pow(hi / lo, k / double(count - 1));
    return g;
}

int cmd_figure(const std::string& id, int n, const std::string& outdir_arg) {
    const auto start = std::chrono::steady_clock::now();
    if (n % 2 != 0 || n < 4) fail("figure: n must be even and >= 4");
    if (n > 16) fail("figure: n > 16 is refused");
    Config cfg;
    cfg.rows = 2;
    cfg.cols = n / 2;
    cfg.outdir = outdir_arg.empty() ? ("figures/" + id) : outdir_arg;
    cfg.echo = {{"figure", id}, {"n", n}};
    OutputDir out(cfg.outdir);
    std::map<std::string, std::string> kv;
    kv["figure"] = id;
    kv["n"] = std::to_string(n);

    if (id == "fig1") {
        // main: t_c(J/delta) for four disorder strengths; inset: P1(t) decay
        // shapes in the FGR and ergodic regimes.
        std::vector<TcRow> rows;
        for (double delta : {0.02, 0.05, 0.1, 0.2}) {
            cfg.delta = delta;
            const auto s0 = central_scales(1.0, delta, 0.0, n);
            for (double J : log_grid(s0.J_c / 3.0, std::min(3.0 * s0.J_E, 0.9), 8)) {
                const auto scales = central_scales(1.0, delta, J, n);
                const auto times = make_times(scales, 0.0, 3.0, 600);
                const auto d = run_ensemble(cfg, J, times);
                const auto [tc, cen] = rescaled_tc(d.t, d.p1, cfg.K);
                rows.push_back({"central", delta, J, tc, cen, "P1"});
            }
            const auto s = central_scales(1.0, delta, 0.0, n);
            branch_slopes(rows, "P1", delta, s.J_c, s.J_E, kv,
                          "delta_" + fmt(delta));
        }
        write_tc_csv(out, "fig1_tc.csv", rows, false);
        cfg.delta = 0.1;
        for (double J : {0.01, 0.1}) {
            const auto scales = central_scales(1.0, 0.1, J, n);
            const auto times = make_times(scales, 0.0, 10.0, 400);
            out.write_series_csv("fig1_inset_J" + fmt(J) + ".csv",
                                 run_ensemble(cfg, J, times));
        }
    } else if (id == "fig2") {
        // main: FGR saturation of I-1 and (P1^-1 - 1)*R vs J/delta; the
        // straight-line guide is C (J/delta)^2 N_B with C = 0.7.
        const double guide_C = 0.7;
        auto f = out.open("fig2_saturation.csv");
        f << "delta,J,J_over_delta,I_minus_1,P1_inv_minus_1_R,guide\n";
        for (double delta : {0.05, 0.1, 0.2}) {
            cfg.delta = delta;
            const auto s0 = central_scales(1.0, delta, 0.0, n);
            for (double J : log_grid(1.3 * s0.J_c, 0.7 * s0.J_E, 4)) {
                const auto scales = central_scales(1.0, delta, J, n);
                const auto times = make_times(scales, 0.0, 50.0, 320);
                const auto d = run_ensemble(cfg, J, times);
                // plateau means over the tail of the run
                const std::size_t nt = d.t.size(), q4 = 3 * nt / 4;
                double i_inf = 0.0, p1_inf = 0.0;
                for (std::size_t k = q4; k < nt; ++k) {
                    i_inf += d.ipr[k];
                    p1_inf += d.p1[k];
                }
                i_inf /= (nt - q4);
                p1_inf /= (nt - q4);
                const double jd = J / delta;
                f << fmt(delta) << ',' << fmt(J) << ',' << fmt(jd) << ','
                  << fmt(i_inf - 1.0) << ',' << fmt((1.0 / p1_inf - 1.0) * cfg.R)
                  << ',' << fmt(guide_C * jd * jd * scales.N_B) << '\n';
            }
        }
        f.close();
        // inset: ergodic saturation (delta=0, J=0.1) vs n
        auto g = out.open("fig2_inset.csv");
        g << "n,N_B,I_inf,P1_inv_inf\n";
        for (int ni : {8, 10, 12}) {
            Config icfg = cfg;
            icfg.rows = 2;
            icfg.cols = ni / 2;
            icfg.delta = 0.0;
            const double J = 0.1;
            std::vector<double> times(320);
            for (int k = 0; k < 320; ++k) times[k] = 150.0 * k / 319.0;
            const auto d = run_ensemble(icfg, J, times);
            const std::size_t nt = d.t.size(), q4 = 3 * nt / 4;
            double i_inf = 0.0, p1_inf = 0.0;
            for (std::size_t k = q4; k < nt; ++k) {
                i_inf += d.ipr[k];
                p1_inf += d.p1[k];
            }
            i_inf /= (nt - q4);
            p1_inf /= (nt - q4);
            const auto s = central_scales(1.0, 0.0, J, ni);
            g << ni << ',' << fmt(s.N_B) << ',' << fmt(i_inf) << ','
              << fmt(1.0 / p1_inf) << '\n';
        }
    } else if (id == "fig3") {
        // P1(t) for Bell-seeded, separable-variant, and W initial states in
        // both regimes (delta = 0.1; J = 0.01 FGR, J = 0.1 ergodic).
        cfg.delta = 0.1;
        std::vector<std::string> states;
        for (int nb = 0; nb <= 3; ++nb) states.push_back("bell:" + std::to_string(nb));
        states.push_back("w");
        if (n == 10) {
            states.push_back("product:0101010110");
            states.push_back("product:010101010+");
        }
        for (double J : {0.01, 0.1}) {
            const auto scales = central_scales(1.0, 0.1, J, n);
            const auto times = make_times(scales, 0.0, 10.0, 400);
            for (const auto& st : states) {
                cfg.state = st;
                std::string tag = st;
                for (auto& c : tag)
                    if (c == ':' || c == '+') c = '_';
                out.write_series_csv("fig3_" + tag + "_J" + fmt(J) + ".csv",
                                     run_ensemble(cfg, J, times));
            }
        }
        for (int nb = 0; nb <= 3; ++nb)
            kv["P1_0_bell_" + std::to_string(nb)] = fmt(1.0 - 2.0 * nb / double(n));
    } else if (id == "fig4") {
        // t_c branches for Bell-seeded states (P1 and P2) and the W state at
        // Delta = 0, both measures.
        cfg.delta = 0.1;
        std::vector<TcRow> rows;
        const auto s0 = central_scales(1.0, 0.1, 0.0, n);
        const auto jgrid = log_grid(s0.J_c / 3.0, std::min(3.0 * s0.J_E, 0.9), 8);
        auto sweep_state = [&](const std::string& st, double Delta) {
            cfg.state = st;
            cfg.Delta = Delta;
            for (double J : jgrid) {
                const auto scales = central_scales(Delta, 0.1, J, n);
                const auto times = make_times(scales, 0.0, 3.0, 600);
                const auto d = run_ensemble(cfg, J, times);
                const auto [tc1, cen1] = rescaled_tc(d.t, d.p1, cfg.K);
                const auto [tc2, cen2] = rescaled_tc(d.t, d.p2, cfg.K);
                rows.push_back({st, cfg.delta, J, tc1, cen1, "P1"});
                rows.push_back({st, cfg.delta, J, tc2, cen2, "P2"});
            }
        };
        for (int nb = 1; nb <= 3; ++nb)
            sweep_state("bell:" + std::to_string(nb), 1.0);
        sweep_state("w", 0.0); // W probed with the splitting removed
        write_tc_csv(out, "fig4_tc.csv", rows, true);
    } else {
        fail("figure: unknown id '" + id + "' (use fig1..fig4)");
    }

    out.write_summary(kv);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    out.write_manifest(cfg, "figure " + id, wall, true);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinlat: disordered spin-lattice entanglement dynamics"};
    app.require_subcommand(1);

    std::string config_path, out_override, figure_id;
    int figure_n = 10;

    auto* validate = app.add_subcommand("validate", "parse a config and exit");
    validate->add_option("config", config_path)->required();

    auto* evolve = app.add_subcommand("evolve", "disorder-averaged time series");
    evolve->add_option("config", config_path)->required();
    evolve->add_option("--out", out_override, "override output directory");

    auto* sweep = app.add_subcommand("sweep-tc", "critical-time sweep over J");
    sweep->add_option("config", config_path)->required();
    sweep->add_option("--out", out_override, "override output directory");

    auto* figure = app.add_subcommand("figure", "preset figure datasets");
    figure->add_option("id", figure_id, "fig1 | fig2 | fig3 | fig4")->required();
    figure->add_option("--n", figure_n, "qubit count (even, <= 16)");
    figure->add_option("--out", out_override, "override output directory");

    CLI11_PARSE(app, argc, argv);
    try {
        if (validate->parsed()) return cmd_validate(config_path);
        if (evolve->parsed()) return cmd_evolve(config_path, out_override);
        if (sweep->parsed()) return cmd_sweep_tc(config_path, out_override);
        return cmd_figure(figure_id, figure_n, out_override);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
