#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fluxcool/dynamics.hpp"
#include "fluxcool/parallel.hpp"
#include "fluxcool/specfun.hpp"
#include "fluxcool/sweep.hpp"
#include "operating_points.hpp"
#include "oracles.hpp"

using namespace fluxcool;
namespace fs = std::filesystem;

namespace {

namespace tol {
constexpr double reduction_rel = 1e-12;
constexpr long double sum_rule = 1e-10L;
constexpr long double j0 = 1e-10L;
constexpr long double brute_force_rel = 1e-6L;
constexpr double doubling_rel = 1e-9;
constexpr double residual_rel = 1e-10;
constexpr double evolution_abs = 1e-6;
constexpr double boltzmann_abs = 1e-6;
constexpr double boltzmann_printed_abs = 1e-4;
constexpr double boltzmann_printed = 0.8710;
constexpr double fig4_amp = 8.35, fig4_amp_tol = 0.05;
constexpr double fig5_slope = -1.0, fig5_slope_tol = 0.05;
constexpr double fig5_intercept_lo = 8.35, fig5_intercept_hi = 8.5;
constexpr double fig7_amp = 8.1, fig7_amp_tol = 0.2;
constexpr double fig7_equilibrium_fraction = 0.8;
constexpr double fig10_line = 8.646, fig10_line_tol = 0.1;
constexpr double peak_low_ghz = 0.010, peak_high_ghz = 0.470, peak_rel = 0.25;
constexpr double mirror_abs = 1e-9;
constexpr double t_eff_fraction = 1.0 / 3.0;
} // namespace tol

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

FluxQubitModel with_gamma2(double ghz) {
    auto m = default_model();
    m.gamma2 = kTwoPi * ghz;
    return m;
}

SteadyState solve(const FluxQubitModel& m, Waveform w, double det, double phi, double f_ghz) {
    const DriveConfig d{w, phi, kTwoPi * f_ghz, det};
    return steady_state(assemble_generator(m, d).generator, (m.m0 + m.m1) * det);
}

Outcome reduction_identity() {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        TransitionChannel c;
        c.gap = kTwoPi * (0.001 + 0.5 * u(rng));
        c.eps = kTwoPi * (-30.0 + 60.0 * u(rng));
        c.width = kTwoPi * (0.01 + 2.0 * u(rng));
        c.slope = kTwoPi * 2.5;
        c.amp = 0.0;
        const double omega = kTwoPi * (0.001 + u(rng));
        const double ref = static_rate(c);
        for (Waveform w : {Waveform::Symmetric, Waveform::OneSided})
            worst = std::max(worst, std::abs(mdlz_rate(c, w, omega) - ref) / ref);
    }
    return {worst <= tol::reduction_rel, fmt("worst relative deviation %.3g over 100 draws", worst)};
}

Outcome bessel_kernel() {
    bool ok = true;
    std::ostringstream d;
    for (double x : {1.0, 50.0, 4250.0}) {
        const auto t = bessel_j_array(x, 1);
        long double s = 0;
        for (int n = 0; n <= t.n_max; ++n) s += (n ? 2.0L : 1.0L) * t[n] * t[n];
        const long double err = std::fabs(s - 1.0L);
        ok = ok && err < tol::sum_rule;
        d << "sum rule x=" << x << " err " << static_cast<double>(err) << "; ";
    }
    const long double j0err = std::fabs(static_cast<long double>(bessel_j_array(1.0, 1)[0]) - oracle::j0_series(1.0L));
    ok = ok && j0err < tol::j0;
    d << "J0(1) err " << static_cast<double>(j0err);
    return {ok, d.str()};
}

Outcome brute_force() {
    bool ok = true;
    double worst = 0, worst_doubling = 0;
    for (const auto& p : rate_check_points()) {
        const auto m = with_gamma2(p.gamma2_ghz);
        const double omega = kTwoPi * p.f_ghz;
        const DriveConfig drive{p.waveform, p.phi_rf, omega, p.detuning_dc};
        const auto c = build_channel(m, drive, Channel::C12);
        const long double ref = oracle::brute_force_rate(c, p.waveform, omega);
        const long double rel = std::fabs((mdlz_rate(c, p.waveform, omega) - ref) / ref);
        worst = std::max(worst, static_cast<double>(rel));
        ok = ok && rel < tol::brute_force_rel;
        for (Channel id : kAllChannels) {
            const auto ci = build_channel(m, drive, id);
            const double w = mdlz_rate(ci, p.waveform, omega);
            const double w2 = mdlz_rate_with_order(ci, p.waveform, omega, 2 * truncation_order(ci, omega));
            const double r = w > 0 ? std::abs(w2 - w) / w : std::abs(w2);
            worst_doubling = std::max(worst_doubling, r);
            ok = ok && r < tol::doubling_rel;
        }
    }
    return {ok, fmt("worst relative deviation from direct sum %.3g; cutoff doubling %.3g", worst, worst_doubling)};
}

Outcome steady_state_correctness() {
    const auto m = default_model();
    const DriveConfig d{Waveform::Symmetric, 8.35, kTwoPi * 0.005, 0.05};
    const auto g = assemble_generator(m, d).generator;
    const auto s = steady_state(g);
    const double residual = s.residual / g.max_abs();

    double max_diag = 0, min_diag = 1e300;
    for (int k = 0; k < 4; ++k) {
        max_diag = std::max(max_diag, std::abs(g(k, k)));
        min_diag = std::min(min_diag, std::abs(g(k, k)));
    }
    const auto p = time_evolve(g, {0.25, 0.25, 0.25, 0.25}, 50.0 / min_diag, 0.05 / max_diag);
    double evo = 0;
    for (int k = 0; k < 4; ++k) evo = std::max(evo, std::abs(p[k] - s.p[k]));

    auto off = m;
    off.gap01 = off.gap12 = off.gap03 = off.gap23 = 0;
    const auto b = solve(off, Waveform::Symmetric, 0.05, 0.0, 0.005);
    const double ratio = b.p[1] / b.p[0];
    const double oracle_ratio = std::exp(-(kTwoPi * 0.144) / temperature_from_millikelvin(50.0));
    const bool ok = residual <= tol::residual_rel && evo <= tol::evolution_abs &&
                    std::abs(ratio - oracle_ratio) <= tol::boltzmann_abs &&
                    std::abs(ratio - tol::boltzmann_printed) <= tol::boltzmann_printed_abs && b.p[2] == 0 &&
                    b.p[3] == 0;
    return {ok, fmt("residual/max|G| %.3g; evolution max deviation %.3g; p11/p00 %.7f (exp(-eps10/T) %.7f)", residual,
                    evo, ratio, oracle_ratio)};
}

Outcome fig4_optimum() {
    const auto m = default_model();
    const auto opt = optimal_amplitude_default(m, 0.05, kTwoPi * 0.005, Method::Ordinary);
    const double p5 = solve(m, Waveform::Symmetric, 0.05, 8.4, 0.005).p[1];
    const double p10 = solve(m, Waveform::Symmetric, 0.05, 8.4, 0.010).p[1];
    const bool ok = std::abs(opt.phi_rf_star - tol::fig4_amp) <= tol::fig4_amp_tol && p5 > p10;
    return {ok, fmt("phi_rf* %.3f mPhi0 (p11 %.5f); p11(5 MHz, 8.4) %.5f vs p11(10 MHz, 8.4) %.5f", opt.phi_rf_star,
                    opt.p11_star, p5, p10)};
}

Outcome fig5_amplitude_law() {
    const auto fit =
        fit_amplitude_condition(default_model(), linear_values(0.1, 3.0, 0.1), kTwoPi * 0.005, Method::Ordinary);
    const bool ok = std::abs(fit.slope - tol::fig5_slope) <= tol::fig5_slope_tol &&
                    fit.intercept >= tol::fig5_intercept_lo && fit.intercept <= tol::fig5_intercept_hi;
    return {ok, fmt("slope %.4f, intercept %.4f mPhi0 over %zu detunings (max residual %.3f)", fit.slope,
                    fit.intercept, fit.points.size(), fit.max_residual)};
}

Outcome strong_decoherence_failure() {
    const auto m = with_gamma2(1.0);
    const auto opt = optimal_amplitude_default(m, 0.05, kTwoPi * 0.005, Method::Ordinary);
    const double eq = equilibrium_p11(m, 0.05);
    const bool ok = std::abs(opt.phi_rf_star - tol::fig7_amp) <= tol::fig7_amp_tol &&
                    opt.p11_star >= tol::fig7_equilibrium_fraction * eq;
    return {ok, fmt("phi_rf* %.3f mPhi0, p11* %.5f, equilibrium %.5f", opt.phi_rf_star, opt.p11_star, eq)};
}

Outcome new_method_recovery() {
    const auto m = with_gamma2(1.0);
    bool ok = true;
    double worst = 0;
    std::ostringstream d;
    for (double det : {0.05, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
        const auto nw = optimal_amplitude_default(m, det, kTwoPi * 0.005, Method::NewMethod);
        const auto ord = optimal_amplitude_default(m, det, kTwoPi * 0.005, Method::Ordinary);
        const double line = 2 * nw.phi_rf_star + det;
        worst = std::max(worst, std::abs(line - tol::fig10_line));
        const bool here = std::abs(line - tol::fig10_line) <= tol::fig10_line_tol && nw.p11_star < ord.p11_star &&
                          nw.p11_star < equilibrium_p11(m, det);
        if (!here) d << fmt("[det %.2f: 2phi*+det %.3f, p11 new %.4f ordinary %.4f eq %.4f] ", det, line, nw.p11_star,
                            ord.p11_star, equilibrium_p11(m, det));
        ok = ok && here;
    }
    d << fmt("worst |2phi*+det - %.3f| = %.3f", tol::fig10_line, worst);
    return {ok, d.str()};
}

std::vector<double> peak_omegas(const FluxQubitModel& m, double gamma2) {
    std::vector<double> out;
    for (double w : log_values(kTwoPi * 0.001, kTwoPi * 2.0, 40))
        if (w <= incoherent_frequency_limit(m, gamma2)) out.push_back(w);
    return out;
}

Outcome peak_frequency(unsigned threads) {
    const auto m = default_model();
    std::vector<double> peaks;
    std::ostringstream d;
    for (double g2 : {0.05, 0.1, 0.2, 0.5, 1.0}) {
        const double gamma2 = kTwoPi * g2;
        const auto pk = peak_w12_frequency(m, 0.05, gamma2, peak_omegas(m, gamma2), threads);
        peaks.push_back(pk.omega_peak / kTwoPi);
        d << fmt("gamma2 %.2f: %.1f MHz; ", g2, 1e3 * peaks.back());
    }
    bool nondecreasing = true;
    for (std::size_t k = 1; k < peaks.size(); ++k) nondecreasing = nondecreasing && peaks[k] >= peaks[k - 1];
    const bool low = std::abs(peaks.front() - tol::peak_low_ghz) <= tol::peak_rel * tol::peak_low_ghz;
    const bool high = std::abs(peaks.back() - tol::peak_high_ghz) <= tol::peak_rel * tol::peak_high_ghz;
    d << "low " << (low ? "ok" : "off") << ", high " << (high ? "ok" : "off") << ", nondecreasing "
      << (nondecreasing ? "yes" : "no");
    return {low && high && nondecreasing, d.str()};
}

Outcome new_method_frequency_trend() {
    const auto m = with_gamma2(1.0);
    bool ok = true;
    double prev = 2;
    std::ostringstream d;
    for (double f : {0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5}) {
        const double p = optimal_amplitude_default(m, 0.05, kTwoPi * f, Method::NewMethod).p11_star;
        ok = ok && p < prev;
        prev = p;
        d << fmt("%g MHz %.5f; ", f * 1e3, p);
    }
    return {ok, d.str()};
}

Outcome mirror_symmetry() {
    const auto m = default_model();
    if (!m.mirror_symmetric()) return {false, "reference model is not mirror symmetric"};
    double worst = 0;
    for (double det : {0.05, 0.3, 1.0, 2.5, 5.0})
        for (double phi : {0.0, 2.0, 8.35, 9.5})
            for (double f : {0.005, 0.05, 0.5}) {
                const auto a = solve(m, Waveform::Symmetric, det, phi, f).p;
                const auto b = solve(m, Waveform::Symmetric, -det, phi, f).p;
                for (auto [i, j] : {std::pair{0, 1}, {1, 0}, {2, 3}, {3, 2}})
                    worst = std::max(worst, std::abs(a[i] - b[j]));
            }
    return {worst <= tol::mirror_abs, fmt("worst population mismatch %.3g over 60 points", worst)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism(const std::string& cli, const fs::path& workdir) {
    if (cli.empty()) return {false, "no CLI path given"};
    struct Run {
        std::string dir;
        int threads;
    };
    const std::vector<Run> runs = {{"t1_a", 1}, {"t1_b", 1}, {"t8", 8}};
    for (const auto& r : runs) {
        const fs::path out = workdir / r.dir;
        fs::remove_all(out);
        const std::string cmd = "\"" + cli + "\" figure fig3 --out \"" + out.string() + "\" --threads " +
                                std::to_string(r.threads) + " > /dev/null";
        if (std::system(cmd.c_str()) != 0) return {false, "CLI run failed: " + cmd};
    }
    std::size_t compared = 0;
    for (const auto& e : fs::directory_iterator(workdir / runs[0].dir)) {
        const auto name = e.path().filename().string();
        if (name.ends_with(".meta.json")) continue;
        const auto ref = slurp(e.path());
        for (std::size_t k = 1; k < runs.size(); ++k)
            if (slurp(workdir / runs[k].dir / name) != ref) return {false, name + " differs in " + runs[k].dir};
        ++compared;
    }
    if (compared == 0) return {false, "no data files produced"};
    return {true, fmt("%zu data file(s) byte-identical across 3 runs (threads 1, 1, 8)", compared)};
}

Outcome effective_temperature_check() {
    const auto m = default_model();
    const auto opt = optimal_amplitude_default(m, 0.05, kTwoPi * 0.005, Method::Ordinary);
    const auto s = solve(m, Waveform::Symmetric, 0.05, opt.phi_rf_star, 0.005);
    if (!s.t_eff) return {false, "effective temperature undefined"};
    const double mk = 50.0 * *s.t_eff / m.temperature;
    return {*s.t_eff < tol::t_eff_fraction * m.temperature, fmt("T_eff %.2f mK at phi_rf* %.2f", mk, opt.phi_rf_star)};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::string cli;
    std::string workdir = "acceptance_out";
    unsigned threads = 0;
    app.add_option("--cli", cli, "path to the fluxcool executable");
    app.add_option("--workdir", workdir, "scratch directory for CLI outputs");
    app.add_option("--threads", threads, "worker threads for parallel checks");
    CLI11_PARSE(app, argc, argv);
    threads = resolve_threads(threads);
    fs::create_directories(workdir);

    struct Criterion {
        std::string id;
        std::string title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"1", "reduction identity", reduction_identity},
        {"2", "Bessel kernel", bessel_kernel},
        {"3", "direct-sum oracle equivalence", brute_force},
        {"4", "steady-state correctness", steady_state_correctness},
        {"5", "weak-decoherence optimum", fig4_optimum},
        {"6", "optimal amplitude law", fig5_amplitude_law},
        {"7", "strong-decoherence failure of the ordinary method", strong_decoherence_failure},
        {"8", "new-method recovery", new_method_recovery},
        {"9", "peak-frequency modulation", [&] { return peak_frequency(threads); }},
        {"10", "new-method frequency trend", new_method_frequency_trend},
        {"11", "mirror symmetry", mirror_symmetry},
        {"12", "determinism", [&] { return determinism(cli, workdir); }},
        {"T_eff", "effective temperature below a third of the bath", effective_temperature_check},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << ": " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
