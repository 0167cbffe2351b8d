#pragma once

#include <array>
#include <optional>

#include "fluxcool/rates.hpp"

namespace fluxcool {

using Populations = std::array<double, 4>; // (p00, p11, p22, p33)

struct SteadyState {
    Populations p{};
    double residual = 0;           ///< max |G p|
    std::optional<double> t_eff;   ///< empty when undefined
};

/// Stationary occupations of the generator: G p = 0 with sum p = 1.
/// Throws DegenerateChain when the chain has no unique stationary state.
SteadyState steady_state(const GeneratorMatrix& generator, double eps10 = 0.0);

/// Fixed-step RK4 integration of dp/dt = G p. Only used to cross-check the
/// stationary solver. Requires dt * max|G_kk| < 0.1.
Populations time_evolve(const GeneratorMatrix& generator, const Populations& p0, double t_final,
                        double dt);

/// eps10 / ln(p00 / p11); empty when p00 == p11 or eps10 == 0.
std::optional<double> effective_temperature(double p11, double p00, double eps10);

/// p11 with the 0-3 channel feeding state 1 (valid when the driven rates are
/// slow compared to intrawell relaxation).
double reduced_p11_with_backflow(double w12, double w03, double g10, double g01);

/// p11 for the one-sided drive far from the degeneracy point, where the 0-3
/// channel is absent.
double reduced_p11_one_sided(double w12, double g10, double g01_new);

/// Thermal-equilibrium p11 of the two lowest levels.
double equilibrium_p11(const FluxQubitModel& model, double detuning_dc);

} // namespace fluxcool
