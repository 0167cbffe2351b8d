#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fluxcool/sweep.hpp"

namespace fluxcool {

enum class OutputFormat { Csv, Json };

struct AmplitudeRange {
    double start = 0, stop = 0, step = 0; ///< mPhi0
};

struct OptimizeSpec {
    std::optional<AmplitudeRange> amplitude; ///< empty: default amplitude grid
    std::vector<double> detunings;           ///< mPhi0; empty: the drive detuning
    std::vector<double> omegas;              ///< rad·GHz; empty: the drive frequency
};

/// A validated run description in internal units.
///
/// The file uses user units: slopes in GHz per mPhi0 and energies and rates in
/// GHz (both divided by 2pi), flux in mPhi0, temperature in mK.
struct RunConfig {
    FluxQubitModel model;
    DriveConfig drive;
    Method method = Method::Ordinary;
    InterwellActivation activation = InterwellActivation::ShiftedGap;
    std::vector<GridAxis> sweep_axes;
    OptimizeSpec optimize;
    std::string output_directory = ".";
    OutputFormat format = OutputFormat::Csv;

    nlohmann::json resolved; ///< user-unit config with defaults filled in
    std::string hash;        ///< digest of `resolved` without the output section

    SweepGrid sweep_grid() const;
};

/// Throws Error(Config) naming the key path on any violation.
RunConfig parse_config(const nlohmann::json& doc);

/// Reads JSON from disk (Io error when unreadable, Config when malformed).
RunConfig load_config(const std::string& path);

/// Built-in reference configuration (device and bath of the reference experiment).
nlohmann::json default_config_json();

/// 16 hex digits, FNV-1a over the compact dump of a JSON value (keys sorted).
std::string json_hash(const nlohmann::json& value);

std::string to_string(OutputFormat format);

} // namespace fluxcool
