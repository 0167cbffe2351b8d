#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "fluxcool/figures.hpp"
#include "fluxcool/parallel.hpp"

using namespace fluxcool;
using nlohmann::json;

namespace {

struct Options {
    std::string config;
    std::string out;
    unsigned threads = 0;
    std::string format;
    std::optional<double> detuning, amplitude, frequency, gamma2;
    std::string method;
    std::string activation;
    std::string preset;
};

RunConfig resolve(const Options& o) {
    json doc;
    if (o.config.empty()) {
        doc = default_config_json();
    } else {
        doc = load_config(o.config).resolved;
    }
    if (o.detuning) doc["drive"]["detuning_dc"] = *o.detuning;
    if (o.amplitude) doc["drive"]["phi_rf"] = *o.amplitude;
    if (o.frequency) doc["drive"]["omega"] = *o.frequency;
    if (o.gamma2) doc["model"]["gamma2"] = *o.gamma2;
    if (!o.method.empty()) doc["method"] = o.method;
    if (!o.activation.empty()) doc["switches"]["interwell_activation"] = o.activation;
    if (!o.out.empty()) doc["output"]["directory"] = o.out;
    if (!o.format.empty()) doc["output"]["format"] = o.format;
    return parse_config(doc);
}

double ghz(double w) { return w / kTwoPi; }

json nullable(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

void flatten(const json& v, const std::string& prefix, std::ostream& out) {
    if (v.is_object()) {
        for (const auto& [key, child] : v.items()) flatten(child, prefix.empty() ? key : prefix + "." + key, out);
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), out);
    } else {
        out << prefix << "," << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
}

void emit(const json& doc, OutputFormat format) {
    if (format == OutputFormat::Json) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::cout << "quantity,value\n";
    flatten(doc, "", std::cout);
}

json point_json(const RunConfig& c) {
    return {{"detuning_dc[mPhi0]", c.drive.detuning_dc},
            {"phi_rf[mPhi0]", c.drive.phi_rf},
            {"omega[GHz/2pi]", ghz(c.drive.omega)},
            {"gamma2[GHz/2pi]", ghz(c.model.gamma2)},
            {"method", to_string(c.method)},
            {"interwell_activation", to_string(c.activation)}};
}

int cmd_rates(const RunConfig& c) {
    const auto assembled = assemble_generator(c.model, c.drive, c.activation);
    const RateSet& r = assembled.rates;
    json channels = json::array();
    static const char* names[] = {"1-0", "1-2", "3-0", "3-2"};
    for (const auto& ch : build_channels(c.model, c.drive)) {
        json lz = nullptr;
        try {
            const auto p = lz_probability(c.drive, ch);
            lz = {{"probability", p.probability}, {"adiabatic_limit", p.adiabatic_limit}};
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotReached) throw;
            lz = "not-reached";
        }
        channels.push_back({{"channel", names[static_cast<int>(ch.id)]},
                            {"eps[GHz/2pi]", ghz(ch.eps)},
                            {"amp[GHz/2pi]", ghz(ch.amp)},
                            {"width[GHz/2pi]", ghz(ch.width)},
                            {"truncation_order", truncation_order(ch, c.drive.omega)},
                            {"lz_single_passage", lz}});
    }
    emit({{"config_hash", c.hash},
          {"point", point_json(c)},
          {"rates[GHz/2pi]",
           {{"w01", ghz(r.w01)},
            {"w12", ghz(r.w12)},
            {"w03", ghz(r.w03)},
            {"w23", ghz(r.w23)},
            {"gamma20", ghz(r.gamma20)},
            {"gamma31", ghz(r.gamma31)},
            {"gamma10_inter", ghz(r.gamma10_inter)},
            {"gamma01_inter", ghz(r.gamma01_inter)}}},
          {"channels", channels},
          {"truncation_rule", truncation_rule_description()}},
         c.format);
    return 0;
}

double to_millikelvin(double t) { return t / (kTwoPi * kBoltzmannOverPlanck) * 1000.0; }

int cmd_steady(const RunConfig& c) {
    const auto assembled = assemble_generator(c.model, c.drive, c.activation);
    const double eps10 = (c.model.m0 + c.model.m1) * c.drive.detuning_dc;
    const auto s = steady_state(assembled.generator, eps10);
    std::optional<double> t_mk;
    if (s.t_eff) t_mk = to_millikelvin(*s.t_eff);
    emit({{"config_hash", c.hash},
          {"point", point_json(c)},
          {"p00", s.p[0]},
          {"p11", s.p[1]},
          {"p22", s.p[2]},
          {"p33", s.p[3]},
          {"residual", s.residual},
          {"t_eff[mK]", nullable(t_mk)},
          {"p11_equilibrium", equilibrium_p11(c.model, c.drive.detuning_dc)},
          {"bath_temperature[mK]", to_millikelvin(c.model.temperature)}},
         c.format);
    return 0;
}

int cmd_sweep(const RunConfig& c, unsigned threads) {
    if (c.sweep_axes.empty()) throw Error(ErrorKind::Config, "sweep: config has no sweep section");
    const auto result = run_sweep(c.model, c.sweep_grid(), threads);
    const auto path =
        write_dataset(c.output_directory, dataset_from_sweep("sweep", result, c.hash), c.format, result.timestamp);
    std::cout << json{{"data_file", path.string()}, {"cells", result.p11.size()}, {"failed", result.failures.size()}}
                     .dump()
              << "\n";
    if (result.failures.size() == result.p11.size())
        throw Error(result.failures.front().kind, "sweep: every cell failed; first: " + result.failures.front().message);
    if (!result.failures.empty())
        std::cerr << result.failures.size() << " cells failed; see the failure manifest in sweep.meta.json\n";
    return 0;
}

int cmd_optimize(const RunConfig& c, unsigned threads) {
    std::vector<double> dets = c.optimize.detunings;
    if (dets.empty()) dets = {c.drive.detuning_dc};
    std::vector<double> omegas = c.optimize.omegas;
    if (omegas.empty()) omegas = {c.drive.omega};

    Dataset d;
    d.name = "optimize";
    d.config_hash = c.hash;
    d.truncation_rule = truncation_rule_description();
    d.columns = {"detuning_dc[mPhi0]", "omega[GHz/2pi]", "phi_rf_star[mPhi0]", "p11_star[1]", "at_lower_edge[1]",
                 "at_upper_edge[1]", "failed_cells[1]"};
    std::vector<AmplitudeFitPoint> fit_points;
    for (double det : dets) {
        for (double w : omegas) {
            const auto amps = c.optimize.amplitude
                                  ? linear_values(c.optimize.amplitude->start, c.optimize.amplitude->stop,
                                                  c.optimize.amplitude->step)
                                  : [&] {
                                        const double p = predicted_optimal_amplitude(c.model, det, c.method);
                                        return default_amplitude_grid(c.model, det, c.method, p - 1.0, p + 0.6);
                                    }();
            const auto o = optimal_amplitude_on(c.model, det, w, c.method, amps, c.activation, threads);
            d.rows.push_back({det, ghz(w), o.phi_rf_star, o.p11_star, o.at_lower_edge ? 1.0 : 0.0,
                              o.at_upper_edge ? 1.0 : 0.0, static_cast<double>(o.failed_cells)});
            if (omegas.size() == 1) fit_points.push_back({det, o.phi_rf_star, o.p11_star, 0.0, o.interior()});
        }
    }
    d.meta = {{"method", to_string(c.method)}, {"interwell_activation", to_string(c.activation)},
              {"gamma2[GHz/2pi]", ghz(c.model.gamma2)}};
    json summary = {{"rows", d.rows.size()}};
    std::sort(fit_points.begin(), fit_points.end(),
              [](const auto& a, const auto& b) { return a.detuning_dc < b.detuning_dc; });
    fit_points.erase(std::unique(fit_points.begin(), fit_points.end(),
                                 [](const auto& a, const auto& b) { return a.detuning_dc == b.detuning_dc; }),
                     fit_points.end());
    if (fit_points.size() >= 3) {
        const auto fit = fit_line(fit_points);
        d.meta["fit"] = {{"slope", fit.slope}, {"intercept[mPhi0]", fit.intercept},
                         {"max_residual[mPhi0]", fit.max_residual}};
        summary["fit"] = d.meta["fit"];
    }
    const auto path = write_dataset(c.output_directory, d, c.format, utc_timestamp());
    summary["data_file"] = path.string();
    std::cout << summary.dump() << "\n";
    return 0;
}

int cmd_figure(const RunConfig& c, const std::string& preset, unsigned threads) {
    find_figure_preset(preset);
    const auto datasets = run_figure(preset, c, threads);
    const std::string stamp = utc_timestamp();
    json files = json::array();
    std::size_t failed = 0;
    for (const auto& d : datasets) {
        files.push_back(write_dataset(c.output_directory, d, c.format, stamp).string());
        failed += d.failures.size();
    }
    std::cout << json{{"figure", preset}, {"files", files}, {"failed_cells", failed}}.dump() << "\n";
    return 0;
}

int cmd_presets() {
    for (const auto& p : figure_presets()) std::cout << p.name << "\t" << p.description << "\n";
    return 0;
}

int report(const Error& e) {
    std::cerr << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << "\n";
    return is_input_error(e.kind()) ? 1 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven sideband-cooling simulator for a four-level flux qubit"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--config", o.config, "JSON run configuration (default: built-in reference device)");
    app.add_option("--out", o.out, "output directory");
    app.add_option("--threads", o.threads, "worker threads (0: FLUXCOOL_THREADS or all cores)");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--detuning", o.detuning, "dc flux detuning, mPhi0");
    app.add_option("--amplitude", o.amplitude, "drive flux amplitude, mPhi0");
    app.add_option("--frequency", o.frequency, "drive frequency omega/2pi, GHz");
    app.add_option("--gamma2", o.gamma2, "dephasing rate Gamma2/2pi, GHz");
    app.add_option("--method", o.method, "drive method")->check(CLI::IsMember({"ordinary", "new"}));
    app.add_option("--activation", o.activation, "interwell activation under the one-sided drive")
        ->check(CLI::IsMember({"shifted-gap", "literal-paper"}));

    auto* rates = app.add_subcommand("rates", "print every transition rate at the configured point");
    auto* steady = app.add_subcommand("steady", "print the stationary populations");
    auto* sweep = app.add_subcommand("sweep", "run the configured sweep grid and write p11");
    auto* optimize = app.add_subcommand("optimize", "scan the amplitude for the lowest p11");
    auto* figure = app.add_subcommand("figure", "run a figure preset and write its datasets");
    figure->add_option("preset", o.preset, "fig3 .. fig15")->required();
    auto* presets = app.add_subcommand("presets", "list figure presets");
    for (auto* s : {rates, steady, sweep, optimize, figure, presets}) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*presets) return cmd_presets();
        const RunConfig c = resolve(o);
        const unsigned threads = resolve_threads(o.threads);
        if (*rates) return cmd_rates(c);
        if (*steady) return cmd_steady(c);
        if (*sweep) return cmd_sweep(c, threads);
        if (*optimize) return cmd_optimize(c, threads);
        if (*figure) return cmd_figure(c, o.preset, threads);
    } catch (const Error& e) {
        return report(e);
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }
    return 0;
}
