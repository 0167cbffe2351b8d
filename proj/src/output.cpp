#include "fluxcool/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>
#include <unistd.h>

namespace fluxcool {

using nlohmann::json;

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

Dataset dataset_from_sweep(const std::string& name, const SweepResult& r, const std::string& config_hash) {
    Dataset d;
    d.name = name;
    for (const auto& ax : r.grid.axes) d.columns.push_back(axis_name(ax.axis) + "[" + axis_unit(ax.axis) + "]");
    d.columns.push_back("p11[1]");
    d.rows.reserve(r.p11.size());
    for (std::size_t i = 0; i < r.p11.size(); ++i) {
        const SweepPoint pt = r.grid.point(i);
        std::vector<double> row;
        for (const auto& ax : r.grid.axes) row.push_back(axis_to_external(ax.axis, pt.get(ax.axis)));
        row.push_back(r.p11[i]);
        d.rows.push_back(std::move(row));
    }
    d.config_hash = config_hash;
    d.truncation_rule = r.truncation_rule;
    json axes = json::array();
    for (const auto& ax : r.grid.axes) {
        json vals = json::array();
        for (double v : ax.values) vals.push_back(axis_to_external(ax.axis, v));
        axes.push_back({{"axis", axis_name(ax.axis)}, {"unit", axis_unit(ax.axis)}, {"values", vals}});
    }
    const SweepPoint& f = r.grid.fixed;
    d.meta["axes"] = axes;
    d.meta["shape"] = r.grid.shape();
    d.meta["order"] = "row-major, last axis fastest";
    d.meta["method"] = to_string(r.grid.method);
    d.meta["interwell_activation"] = to_string(r.grid.activation);
    d.meta["fixed"] = {{"detuning_dc[mPhi0]", f.detuning_dc},
                       {"phi_rf[mPhi0]", f.phi_rf},
                       {"omega[GHz/2pi]", f.omega / kTwoPi},
                       {"gamma2[GHz/2pi]", f.gamma2 / kTwoPi}};
    d.meta["model_hash"] = r.model_hash;
    d.failures = r.failures;
    return d;
}

std::string render_csv(const Dataset& d) {
    std::string out = "# config_hash=" + d.config_hash + " truncation=" + d.truncation_rule + "\n";
    for (std::size_t c = 0; c < d.columns.size(); ++c) out += (c ? "," : "") + d.columns[c];
    out += "\n";
    for (const auto& row : d.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_number(row[c]);
        }
        out += "\n";
    }
    return out;
}

namespace {

json finite_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

} // namespace

std::string render_json(const Dataset& d) {
    json rows = json::array();
    for (const auto& row : d.rows) {
        json r = json::array();
        for (double v : row) r.push_back(finite_or_null(v));
        rows.push_back(std::move(r));
    }
    json doc = {{"name", d.name},
                {"config_hash", d.config_hash},
                {"truncation_rule", d.truncation_rule},
                {"columns", d.columns},
                {"rows", rows},
                {"meta", d.meta}};
    return doc.dump(1) + "\n";
}

json sidecar(const Dataset& d, OutputFormat format, const std::string& timestamp) {
    json failures = json::array();
    for (const auto& f : d.failures)
        failures.push_back({{"index", f.index}, {"kind", std::string(to_string(f.kind))}, {"message", f.message}});
    return {{"name", d.name},
            {"data_file", d.name + "." + to_string(format)},
            {"config_hash", d.config_hash},
            {"truncation_rule", d.truncation_rule},
            {"lz_crossing_convention", "first crossing phase in [0, 2pi)"},
            {"columns", d.columns},
            {"rows", d.rows.size()},
            {"meta", d.meta},
            {"failed_cells", failures.size()},
            {"failures", failures},
            {"timestamp", timestamp}};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw Error(ErrorKind::Io, "cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::Io, "cannot write '" + tmp.string() + "'");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            fs::remove(tmp, ec);
            throw Error(ErrorKind::Io, "short write to '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignore;
        fs::remove(tmp, ignore);
        throw Error(ErrorKind::Io, "cannot rename into '" + path.string() + "': " + ec.message());
    }
}

std::filesystem::path write_dataset(const std::filesystem::path& dir, const Dataset& d, OutputFormat format,
                                    const std::string& timestamp) {
    const auto data_path = dir / (d.name + "." + to_string(format));
    write_file_atomic(data_path, format == OutputFormat::Csv ? render_csv(d) : render_json(d));
    write_file_atomic(dir / (d.name + ".meta.json"), sidecar(d, format, timestamp).dump(2) + "\n");
    return data_path;
}

} // namespace fluxcool
