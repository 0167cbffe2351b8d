#include "fluxcool/figures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "fluxcool/parallel.hpp"

namespace fluxcool {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> ghz(std::vector<double> f) {
    for (double& v : f) v *= kTwoPi;
    return f;
}

std::vector<double> with_points(std::vector<double> v, std::initializer_list<double> extra) {
    v.insert(v.end(), extra.begin(), extra.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(), [](double a, double b) { return std::abs(a - b) <= 1e-12 * b; }),
            v.end());
    return v;
}

struct Context {
    const RunConfig& base;
    unsigned threads;
    std::string hash;
    std::vector<Dataset> out;

    FluxQubitModel model_with(double gamma2_ghz) const {
        FluxQubitModel m = base.model;
        m.gamma2 = kTwoPi * gamma2_ghz;
        return m;
    }

    Dataset& add(Dataset d) {
        d.config_hash = hash;
        if (d.truncation_rule.empty()) d.truncation_rule = truncation_rule_description();
        out.push_back(std::move(d));
        return out.back();
    }

    SweepResult map(const std::string& name, const FluxQubitModel& m, std::vector<GridAxis> axes, SweepPoint fixed,
                    Method method) {
        SweepGrid g;
        g.axes = std::move(axes);
        fixed.gamma2 = m.gamma2;
        g.fixed = fixed;
        g.method = method;
        g.activation = base.activation;
        SweepResult r = run_sweep(m, g, threads);
        add(dataset_from_sweep(name, r, hash));
        return r;
    }

    void row_minimum(const std::string& name, const SweepResult& r) {
        const auto& outer = r.grid.axes.front();
        const auto& inner = r.grid.axes.back();
        Dataset d;
        d.name = name;
        d.columns = {axis_name(outer.axis) + "[" + axis_unit(outer.axis) + "]", "p11_min[1]",
                     axis_name(inner.axis) + "_at_min[" + axis_unit(inner.axis) + "]", "at_range_edge[1]"};
        const std::size_t n = inner.values.size();
        for (std::size_t i = 0; i < outer.values.size(); ++i) {
            std::size_t arg = n;
            for (std::size_t j = 0; j < n; ++j) {
                const double v = r.p11[i * n + j];
                if (!std::isnan(v) && (arg == n || v < r.p11[i * n + arg])) arg = j;
            }
            const double o = axis_to_external(outer.axis, outer.values[i]);
            if (arg == n) {
                d.rows.push_back({o, kNaN, kNaN, kNaN});
            } else {
                d.rows.push_back({o, r.p11[i * n + arg], axis_to_external(inner.axis, inner.values[arg]),
                                  (arg == 0 || arg + 1 == n) ? 1.0 : 0.0});
            }
        }
        d.meta = {{"reduction", "minimum over " + axis_name(inner.axis)}, {"method", to_string(r.grid.method)}};
        add(std::move(d));
    }

    void lowest(const std::string& name, const FluxQubitModel& m, const std::vector<double>& gamma2s,
                const std::vector<double>& detunings, const std::vector<double>& omegas, Method method) {
        const auto cells = lowest_population_map(m, gamma2s, detunings, omegas, method, base.activation, threads);
        Dataset d;
        d.name = name;
        d.columns = {"gamma2[GHz/2pi]", "detuning_dc[mPhi0]", "omega[GHz/2pi]", "p11_min[1]", "phi_rf_at_min[mPhi0]",
                     "at_range_edge[1]"};
        for (const auto& c : cells) {
            std::vector<double> row{c.gamma2 / kTwoPi, c.detuning_dc, c.omega / kTwoPi};
            if (c.failed) row.insert(row.end(), {kNaN, kNaN, kNaN});
            else row.insert(row.end(), {c.optimum.p11_star, c.optimum.phi_rf_star, c.optimum.interior() ? 0.0 : 1.0});
            d.rows.push_back(std::move(row));
        }
        d.meta = {{"method", to_string(method)},
                  {"interwell_activation", to_string(base.activation)},
                  {"amplitude_grid", "0.01 mPhi0 within 0.5 of the predicted optimum, 0.05 elsewhere, "
                                     "[predicted - 1, predicted + 0.6]"}};
        add(std::move(d));
    }

    void envelopes(const std::string& name, const std::vector<double>& gamma2s, double detuning,
                   const std::vector<double>& omegas, const std::string& peaks_name = "") {
        Dataset env;
        env.name = name;
        env.columns = {"gamma2[GHz/2pi]", "omega[GHz/2pi]", "w12_max[GHz/2pi]", "phi_rf_at_max[mPhi0]"};
        Dataset peaks;
        peaks.name = peaks_name;
        peaks.columns = {"gamma2[GHz/2pi]", "omega_peak[GHz/2pi]", "w12_peak[GHz/2pi]", "phi_rf_at_peak[mPhi0]",
                         "omega_limit[GHz/2pi]"};
        for (double g2 : gamma2s) {
            const auto res = peak_w12_frequency(base.model, detuning, g2, omegas, threads);
            for (const auto& e : res.envelope)
                env.rows.push_back({g2 / kTwoPi, e.omega / kTwoPi, e.w12_max / kTwoPi, e.phi_rf_at_max});
            if (!peaks_name.empty()) {
                const double limit = incoherent_frequency_limit(base.model, g2);
                PeakFrequency p;
                p.w12_peak = -1;
                for (const auto& e : res.envelope) {
                    if (e.omega <= limit * (1 + 1e-12) && e.w12_max > p.w12_peak) {
                        p.w12_peak = e.w12_max;
                        p.omega_peak = e.omega;
                        p.phi_rf_at_peak = e.phi_rf_at_max;
                    }
                }
                peaks.rows.push_back(
                    {g2 / kTwoPi, p.omega_peak / kTwoPi, p.w12_peak / kTwoPi, p.phi_rf_at_peak, limit / kTwoPi});
            }
        }
        const json common = {{"method", "new"},
                             {"detuning_dc[mPhi0]", detuning},
                             {"amplitude_search", "step 0.02 on [c - 1, c + 1.5], c = (phi_c - detuning)/2, "
                                                  "then step 0.001 within 0.02 of the best"}};
        env.meta = common;
        add(std::move(env));
        if (!peaks_name.empty()) {
            peaks.meta = common;
            peaks.meta["peak_search"] = "omega restricted to omega <= gamma2 + gamma20/2 (incoherent region)";
            add(std::move(peaks));
        }
    }
};

GridAxis axis(Axis a, std::vector<double> values) {
    return {a, std::move(values)};
}

const std::vector<double> kFullOmega = ghz(log_values(0.001, 2.0, 40));
const std::vector<double> kMapOmega = ghz(with_points(log_values(0.001, 2.0, 20), {0.005, 0.01}));
const std::vector<double> kCoarseOmega = ghz(with_points(log_values(0.001, 2.0, 10), {0.005, 0.01}));
const std::vector<double> kGamma2Grid = ghz({0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0});
const std::vector<double> kPeakGamma2 = ghz({0.05, 0.1, 0.2, 0.5, 1.0});

using Runner = std::function<void(Context&)>;

struct Entry {
    FigurePreset preset;
    Runner run;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = {
        {{"fig3", "p11 versus detuning and frequency at phi_rf 8.4, ordinary method"},
         [](Context& c) {
             c.map("fig3", c.model_with(0.06),
                   {axis(Axis::DetuningDc, linear_values(-1.0, 1.0, 0.02)), axis(Axis::Omega, kFullOmega)},
                   {0.0, 8.4, 0.0, 0.0}, Method::Ordinary);
         }},
        {{"fig4", "p11 versus frequency and amplitude at detuning 0.05, with the per-frequency optimum"},
         [](Context& c) {
             const auto r = c.map("fig4_map", c.model_with(0.06),
                                  {axis(Axis::Omega, kMapOmega), axis(Axis::PhiRf, linear_values(7.5, 9.0, 0.01))},
                                  {0.05, 0.0, 0.0, 0.0}, Method::Ordinary);
             c.row_minimum("fig4_optimum", r);
         }},
        {{"fig5", "p11 versus detuning and amplitude at 5 MHz, with the per-detuning optimum"},
         [](Context& c) {
             const auto r = c.map("fig5_map", c.model_with(0.06),
                                  {axis(Axis::DetuningDc, linear_values(0.0, 3.0, 0.05)),
                                   axis(Axis::PhiRf, linear_values(5.0, 9.0, 0.02))},
                                  {0.0, 0.0, kTwoPi * 0.005, 0.0}, Method::Ordinary);
             c.row_minimum("fig5_optimum", r);
         }},
        {{"fig6", "lowest p11 over amplitude versus detuning and frequency, ordinary method"},
         [](Context& c) {
             c.lowest("fig6", c.model_with(0.06), {kTwoPi * 0.06}, linear_values(0.0, 3.0, 0.1), kCoarseOmega,
                      Method::Ordinary);
         }},
        {{"fig7", "p11 versus frequency and amplitude at detuning 0.05, dephasing 1 GHz"},
         [](Context& c) {
             const auto r = c.map("fig7_map", c.model_with(1.0),
                                  {axis(Axis::Omega, kMapOmega), axis(Axis::PhiRf, linear_values(7.0, 9.0, 0.01))},
                                  {0.05, 0.0, 0.0, 0.0}, Method::Ordinary);
             c.row_minimum("fig7_optimum", r);
         }},
        {{"fig8", "lowest p11 versus detuning and frequency at dephasing 1 GHz, and a 5 MHz comparison"},
         [](Context& c) {
             c.lowest("fig8_map", c.model_with(1.0), {kTwoPi * 1.0}, linear_values(0.0, 3.0, 0.1), kCoarseOmega,
                      Method::Ordinary);
             c.lowest("fig8_comparison", c.model_with(1.0), ghz({0.06, 1.0}), linear_values(0.0, 3.0, 0.05),
                      {kTwoPi * 0.005}, Method::Ordinary);
             Dataset eq;
             eq.name = "fig8_equilibrium";
             eq.columns = {"detuning_dc[mPhi0]", "p11_equilibrium[1]"};
             for (double d : linear_values(0.0, 3.0, 0.05)) eq.rows.push_back({d, equilibrium_p11(c.base.model, d)});
             c.add(std::move(eq));
         }},
        {{"fig9", "lowest p11 over amplitude versus dephasing and frequency at detuning 0.05, ordinary method"},
         [](Context& c) {
             c.lowest("fig9", c.model_with(0.06), kGamma2Grid, {0.05}, kCoarseOmega, Method::Ordinary);
         }},
        {{"fig10", "p11 versus detuning and amplitude at 5 MHz and dephasing 1 GHz, both methods"},
         [](Context& c) {
             const auto m = c.model_with(1.0);
             const auto det = linear_values(0.0, 3.0, 0.05);
             c.map("fig10_ordinary", m,
                   {axis(Axis::DetuningDc, det), axis(Axis::PhiRf, linear_values(5.0, 9.0, 0.02))},
                   {0.0, 0.0, kTwoPi * 0.005, 0.0}, Method::Ordinary);
             const auto r = c.map("fig10_new", m,
                                  {axis(Axis::DetuningDc, det), axis(Axis::PhiRf, linear_values(2.5, 5.0, 0.01))},
                                  {0.0, 0.0, kTwoPi * 0.005, 0.0}, Method::NewMethod);
             c.row_minimum("fig10_new_optimum", r);
         }},
        {{"fig11", "p11 versus frequency and amplitude at detuning 0.05, dephasing 1 GHz, new method"},
         [](Context& c) {
             const auto r = c.map("fig11_map", c.model_with(1.0),
                                  {axis(Axis::Omega, kMapOmega), axis(Axis::PhiRf, linear_values(3.5, 5.0, 0.01))},
                                  {0.05, 0.0, 0.0, 0.0}, Method::NewMethod);
             c.row_minimum("fig11_optimum", r);
         }},
        {{"fig12", "lowest p11 over amplitude versus dephasing and frequency at detuning 0.05, new method"},
         [](Context& c) {
             c.lowest("fig12", c.model_with(0.06), kGamma2Grid, {0.05}, kCoarseOmega, Method::NewMethod);
         }},
        {{"fig13", "peak frequency of max-over-amplitude W12 versus dephasing, with envelopes"},
         [](Context& c) {
             c.envelopes("fig13_envelopes", kPeakGamma2, 0.05, kFullOmega, "fig13_peaks");
             c.lowest("fig13_lowest", c.model_with(0.05), {kTwoPi * 0.05}, {0.05}, kMapOmega, Method::NewMethod);
         }},
        {{"fig14", "max-over-amplitude W12 and lowest p11 versus frequency at detuning 3, dephasing 0.05 GHz"},
         [](Context& c) {
             c.envelopes("fig14_envelope", {kTwoPi * 0.05}, 3.0, kFullOmega);
             c.lowest("fig14_lowest", c.model_with(0.05), {kTwoPi * 0.05}, {3.0}, kMapOmega, Method::NewMethod);
         }},
        {{"fig15", "amplitude maximising W12 versus frequency and dephasing at detuning 0.05"},
         [](Context& c) {
             c.envelopes("fig15_lines", ghz({0.05, 1.0}), 0.05, kFullOmega);
             c.envelopes("fig15_inset", ghz({0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0}), 0.05, kCoarseOmega);
         }},
    };
    return entries;
}

const Entry& find_entry(const std::string& name) {
    for (const auto& e : registry())
        if (e.preset.name == name) return e;
    std::string valid;
    for (const auto& e : registry()) valid += (valid.empty() ? "" : ", ") + e.preset.name;
    throw Error(ErrorKind::Config, "unknown figure preset '" + name + "'; valid presets: " + valid);
}

} // namespace

const std::vector<FigurePreset>& figure_presets() {
    static const std::vector<FigurePreset> presets = [] {
        std::vector<FigurePreset> v;
        for (const auto& e : registry()) v.push_back(e.preset);
        return v;
    }();
    return presets;
}

const FigurePreset& find_figure_preset(const std::string& name) {
    return find_entry(name).preset;
}

std::vector<Dataset> run_figure(const std::string& name, const RunConfig& base, unsigned threads) {
    const Entry& e = find_entry(name);
    Context ctx{base, threads, json_hash(json{{"config", base.hash}, {"figure", name}}), {}};
    e.run(ctx);
    for (auto& d : ctx.out) {
        d.meta["figure"] = name;
        d.meta["base_config_hash"] = base.hash;
    }
    return std::move(ctx.out);
}

std::vector<LowestPopulation> lowest_population_map(const FluxQubitModel& model, const std::vector<double>& gamma2s,
                                                    const std::vector<double>& detunings,
                                                    const std::vector<double>& omegas, Method method,
                                                    InterwellActivation activation, unsigned threads) {
    std::vector<LowestPopulation> cells;
    for (double g2 : gamma2s)
        for (double d : detunings)
            for (double w : omegas) cells.push_back({d, w, g2, {}, false});
    parallel_for(cells.size(), threads, [&](std::size_t i) {
        auto& c = cells[i];
        FluxQubitModel m = model;
        m.gamma2 = c.gamma2;
        try {
            c.optimum = optimal_amplitude_default(m, c.detuning_dc, c.omega, method, activation, 1);
        } catch (const Error&) {
            c.failed = true;
        }
    });
    return cells;
}

} // namespace fluxcool
