#pragma once

#include <string>
#include <vector>

#include "fluxcool/output.hpp"

namespace fluxcool {

struct FigurePreset {
    std::string name;
    std::string description;
};

const std::vector<FigurePreset>& figure_presets();

/// Throws Error(Config) listing the valid names when `name` is unknown.
const FigurePreset& find_figure_preset(const std::string& name);

/// Runs a preset grid on the model and switches of `base`; the preset fixes
/// its own drive axes, dephasing and method.
std::vector<Dataset> run_figure(const std::string& name, const RunConfig& base, unsigned threads = 0);

struct LowestPopulation {
    double detuning_dc = 0;
    double omega = 0;
    double gamma2 = 0;
    OptimalPoint optimum;
    bool failed = false;
};

/// Optimal amplitude (default amplitude grid) for every (gamma2, detuning,
/// omega) combination; cells run in parallel, one optimisation per cell.
std::vector<LowestPopulation> lowest_population_map(const FluxQubitModel& model,
                                                    const std::vector<double>& gamma2s,
                                                    const std::vector<double>& detunings,
                                                    const std::vector<double>& omegas, Method method,
                                                    InterwellActivation activation, unsigned threads);

} // namespace fluxcool
