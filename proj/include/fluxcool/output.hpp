#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fluxcool/config.hpp"

namespace fluxcool {

/// A long-format table plus its provenance. Written as <name>.csv (or
/// <name>.json) and a <name>.meta.json sidecar.
struct Dataset {
    std::string name;
    std::vector<std::string> columns; ///< "name[unit]"
    std::vector<std::vector<double>> rows;
    std::string config_hash;
    std::string truncation_rule;
    nlohmann::json meta = nlohmann::json::object(); ///< extra provenance, timestamp-free
    std::vector<CellFailure> failures;
};

/// Shortest round-trip decimal text; "nan" / "inf" / "-inf" for non-finite.
std::string format_number(double value);

/// Columns are the grid axes in external units followed by p11.
Dataset dataset_from_sweep(const std::string& name, const SweepResult& result, const std::string& config_hash);

std::string render_csv(const Dataset& data);
std::string render_json(const Dataset& data);
/// Sidecar: everything in `render_*` provenance plus timestamp and failures.
nlohmann::json sidecar(const Dataset& data, OutputFormat format, const std::string& timestamp);

/// Writes via a temporary file in the same directory and renames it into
/// place. Throws Error(Io).
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Writes the data file and its sidecar; returns the data file path.
std::filesystem::path write_dataset(const std::filesystem::path& directory, const Dataset& data,
                                    OutputFormat format, const std::string& timestamp);

} // namespace fluxcool
