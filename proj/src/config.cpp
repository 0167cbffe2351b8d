#include "fluxcool/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace fluxcool {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::Config, path + ": " + what);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) fail(path.empty() ? key : path + "." + key, "unknown key");
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

double number(const json& obj, const std::string& path, const std::string& key) {
    const std::string p = join(path, key);
    if (!obj.contains(key)) fail(p, "missing required key");
    const json& v = obj.at(key);
    if (!v.is_number()) fail(p, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(p, "non-finite value");
    return x;
}

double nonneg(const json& obj, const std::string& path, const std::string& key) {
    const double x = number(obj, path, key);
    if (x < 0) fail(join(path, key), "must be >= 0");
    return x;
}

double positive(const json& obj, const std::string& path, const std::string& key) {
    const double x = number(obj, path, key);
    if (!(x > 0)) fail(join(path, key), "must be > 0");
    return x;
}

std::string text(const json& obj, const std::string& path, const std::string& key) {
    const std::string p = join(path, key);
    if (!obj.contains(key)) fail(p, "missing required key");
    if (!obj.at(key).is_string()) fail(p, "expected a string");
    return obj.at(key).get<std::string>();
}

std::vector<double> number_list(const json& obj, const std::string& path, const std::string& key) {
    const std::string p = join(path, key);
    const json& v = obj.at(key);
    if (!v.is_array()) fail(p, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) fail(p + "[" + std::to_string(i) + "]", "expected a number");
        const double x = v[i].get<double>();
        if (!std::isfinite(x)) fail(p + "[" + std::to_string(i) + "]", "non-finite value");
        out.push_back(x);
    }
    return out;
}

FluxQubitModel parse_model(const json& m) {
    const std::string s = "model";
    check_keys(m, s, {"m0", "m1", "m2", "m3", "gap01", "gap12", "gap03", "gap23", "phi_c", "gamma20",
                      "gamma31", "gamma10_inter", "gamma2", "temperature"});
    FluxQubitModel r;
    r.m0 = kTwoPi * nonneg(m, s, "m0");
    r.m1 = kTwoPi * nonneg(m, s, "m1");
    r.m2 = kTwoPi * nonneg(m, s, "m2");
    r.m3 = kTwoPi * nonneg(m, s, "m3");
    r.gap01 = kTwoPi * nonneg(m, s, "gap01");
    r.gap12 = kTwoPi * nonneg(m, s, "gap12");
    r.gap03 = kTwoPi * nonneg(m, s, "gap03");
    r.gap23 = kTwoPi * nonneg(m, s, "gap23");
    r.phi_c = positive(m, s, "phi_c");
    r.gamma20 = kTwoPi * nonneg(m, s, "gamma20");
    r.gamma31 = kTwoPi * nonneg(m, s, "gamma31");
    r.gamma10_inter = kTwoPi * nonneg(m, s, "gamma10_inter");
    r.gamma2 = kTwoPi * nonneg(m, s, "gamma2");
    r.temperature = temperature_from_millikelvin(positive(m, s, "temperature"));
    r.validate();
    return r;
}

GridAxis parse_axis_spec(const json& a, const std::string& path) {
    check_keys(a, path, {"axis", "values", "start", "stop", "step", "per_decade"});
    const std::string name = text(a, path, "axis");
    const auto axis = parse_axis(name);
    if (!axis) fail(join(path, "axis"), "unknown axis '" + name + "' (detuning_dc, phi_rf, omega, gamma2)");
    GridAxis g;
    g.axis = *axis;
    std::vector<double> user;
    if (a.contains("values")) {
        if (a.contains("start") || a.contains("stop") || a.contains("step") || a.contains("per_decade"))
            fail(path, "give either values or a start/stop range, not both");
        user = number_list(a, path, "values");
    } else {
        const double start = number(a, path, "start");
        const double stop = number(a, path, "stop");
        if (a.contains("step") == a.contains("per_decade")) fail(path, "give exactly one of step or per_decade");
        try {
            if (a.contains("step")) {
                user = linear_values(start, stop, positive(a, path, "step"));
            } else {
                const double pd = positive(a, path, "per_decade");
                if (pd != std::floor(pd)) fail(join(path, "per_decade"), "must be an integer");
                user = log_values(start, stop, static_cast<int>(pd));
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Config || std::string(e.what()).rfind(path, 0) == 0) throw;
            fail(path, e.what());
        }
    }
    for (double v : user) g.values.push_back(axis_from_external(g.axis, v));
    return g;
}

Method parse_method(const std::string& s) {
    if (s == "ordinary") return Method::Ordinary;
    if (s == "new") return Method::NewMethod;
    fail("method", "expected 'ordinary' or 'new', got '" + s + "'");
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

std::string json_hash(const json& value) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : value.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return hex64(h);
}

std::string to_string(OutputFormat format) {
    return format == OutputFormat::Csv ? "csv" : "json";
}

SweepGrid RunConfig::sweep_grid() const {
    SweepGrid g;
    g.axes = sweep_axes;
    g.fixed = {drive.detuning_dc, drive.phi_rf, drive.omega, model.gamma2};
    g.method = method;
    g.activation = activation;
    return g;
}

RunConfig parse_config(const json& doc) {
    check_keys(doc, "", {"model", "drive", "method", "sweep", "optimize", "output", "switches"});
    for (const char* key : {"model", "drive", "method"})
        if (!doc.contains(key)) fail(key, "missing required section");

    RunConfig c;
    json resolved = doc;
    c.model = parse_model(doc.at("model"));

    c.method = parse_method(text(doc, "", "method"));

    const json& d = doc.at("drive");
    check_keys(d, "drive", {"phi_rf", "omega", "detuning_dc"});
    c.drive.waveform = waveform_for(c.method);
    c.drive.phi_rf = nonneg(d, "drive", "phi_rf");
    c.drive.omega = kTwoPi * positive(d, "drive", "omega");
    c.drive.detuning_dc = number(d, "drive", "detuning_dc");

    json switches = doc.value("switches", json::object());
    check_keys(switches, "switches", {"interwell_activation"});
    const std::string act = switches.value("interwell_activation", std::string("shifted-gap"));
    if (act == "shifted-gap") c.activation = InterwellActivation::ShiftedGap;
    else if (act == "literal-paper") c.activation = InterwellActivation::LiteralPaper;
    else fail("switches.interwell_activation", "expected 'shifted-gap' or 'literal-paper', got '" + act + "'");
    resolved["switches"] = {{"interwell_activation", act}};

    if (doc.contains("sweep")) {
        const json& s = doc.at("sweep");
        check_keys(s, "sweep", {"axes"});
        if (!s.contains("axes") || !s.at("axes").is_array() || s.at("axes").empty())
            fail("sweep.axes", "expected a nonempty array");
        for (std::size_t i = 0; i < s.at("axes").size(); ++i)
            c.sweep_axes.push_back(parse_axis_spec(s.at("axes")[i], "sweep.axes[" + std::to_string(i) + "]"));
        c.sweep_grid().validate();
    }

    if (doc.contains("optimize")) {
        const json& o = doc.at("optimize");
        check_keys(o, "optimize", {"amplitude", "detunings", "omegas"});
        if (o.contains("amplitude")) {
            const json& a = o.at("amplitude");
            check_keys(a, "optimize.amplitude", {"start", "stop", "step"});
            AmplitudeRange r{nonneg(a, "optimize.amplitude", "start"), nonneg(a, "optimize.amplitude", "stop"),
                             positive(a, "optimize.amplitude", "step")};
            if (r.stop < r.start) fail("optimize.amplitude", "stop must be >= start");
            c.optimize.amplitude = r;
        }
        if (o.contains("detunings")) c.optimize.detunings = number_list(o, "optimize", "detunings");
        if (o.contains("omegas")) {
            for (double f : number_list(o, "optimize", "omegas")) {
                if (!(f > 0)) fail("optimize.omegas", "must be > 0");
                c.optimize.omegas.push_back(kTwoPi * f);
            }
        }
    }

    const json out = doc.value("output", json::object());
    check_keys(out, "output", {"directory", "format"});
    if (out.contains("directory")) c.output_directory = text(out, "output", "directory");
    if (out.contains("format")) {
        const std::string f = text(out, "output", "format");
        if (f == "csv") c.format = OutputFormat::Csv;
        else if (f == "json") c.format = OutputFormat::Json;
        else fail("output.format", "expected 'csv' or 'json'");
    }
    resolved["output"] = {{"directory", c.output_directory}, {"format", to_string(c.format)}};

    c.resolved = resolved;
    json physics = resolved;
    physics.erase("output");
    c.hash = json_hash(physics);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Config, path + ": malformed JSON: " + e.what());
    }
    return parse_config(doc);
}

json default_config_json() {
    return {
        {"model",
         {{"m0", 1.44}, {"m1", 1.44}, {"m2", 1.09}, {"m3", 1.09},
          {"gap01", 0.013}, {"gap12", 0.09}, {"gap03", 0.09}, {"gap23", 0.5},
          {"phi_c", 8.4},
          {"gamma20", 0.1}, {"gamma31", 0.1}, {"gamma10_inter", 5e-5}, {"gamma2", 0.06},
          {"temperature", 50.0}}},
        {"drive", {{"phi_rf", 8.35}, {"omega", 0.005}, {"detuning_dc", 0.05}}},
        {"method", "ordinary"},
    };
}

} // namespace fluxcool
