#pragma once

#include <array>
#include <string>

#include "fluxcool/model.hpp"
#include "fluxcool/specfun.hpp"

namespace fluxcool {

/// Ordinary: symmetric sinusoidal drive. NewMethod: one-sided drive toward
/// the 1-2 crossing with the correspondingly shifted interwell activation.
enum class Method { Ordinary, NewMethod };

constexpr Waveform waveform_for(Method method) {
    return method == Method::Ordinary ? Waveform::Symmetric : Waveform::OneSided;
}

constexpr Method method_for(Waveform waveform) {
    return waveform == Waveform::Symmetric ? Method::Ordinary : Method::NewMethod;
}

/// How the thermal 0 -> 1 rate is activated under the one-sided drive.
enum class InterwellActivation {
    ShiftedGap,   ///< exp(-(eps10 + A01)/T)
    LiteralPaper, ///< exp(-(eps12 - A12)/T), kept for auditing
};

std::string to_string(Method method);
std::string to_string(InterwellActivation activation);

struct LzResult {
    double probability = 0;
    double sweep_rate = 0;      ///< d|eps_l - eps_r|/dt at the crossing
    double crossing_phase = 0;  ///< first omega*t0 in [0, 2pi)
    bool adiabatic_limit = false; ///< crossing sits exactly on a turning point
};

/// Single-passage Landau-Zener probability 1 - exp(-gap^2 / 4 zeta) at the
/// first crossing of the period. Throws NotReached when the drive excursion
/// never touches the channel's crossing flux.
LzResult lz_probability(const DriveConfig& drive, const TransitionChannel& channel);

/// Incoherent tunnelling rate of an undriven channel (Lorentzian in eps).
double static_rate(const TransitionChannel& channel);

/// Photon-number cutoff N: the driven rate sums n in [-N, N].
int truncation_order(const TransitionChannel& channel, double omega);

/// Human readable truncation rule, embedded in output metadata.
std::string truncation_rule_description();

/// Driven (photon-assisted) interwell rate: a Bessel-weighted sum of
/// Lorentzians. For the one-sided drive the detuning is shifted by the drive
/// amplitude, eps -> eps + A.
double mdlz_rate(const TransitionChannel& channel, Waveform waveform, double omega,
                 BesselCache& cache = BesselCache::shared());

/// Same sum with an explicit photon cutoff and an uncached Bessel table of
/// that order; used to check truncation convergence.
double mdlz_rate_with_order(const TransitionChannel& channel, Waveform waveform, double omega, int order);

/// One-sided rate with J_n^2 replaced by its uniform Airy approximation.
/// Requires A/omega >= 10.
double airy_rate(const TransitionChannel& channel, double omega);

/// Three-term Airy estimate (resonances n = -1, 0, +1 about the detuning).
/// Qualitative only; it is never used by the rate equations.
double airy_three_term(const TransitionChannel& channel, double omega);

struct InterwellRates {
    double down = 0; ///< 1 -> 0
    double up = 0;   ///< 0 -> 1
};

InterwellRates interwell_rates(const FluxQubitModel& model, const DriveConfig& drive,
                               Method method,
                               InterwellActivation activation = InterwellActivation::ShiftedGap);

double interwell_up_rate(const FluxQubitModel& model, const DriveConfig& drive, Method method,
                         InterwellActivation activation = InterwellActivation::ShiftedGap);

/// All rates entering the four-level rate equations, rad·GHz.
struct RateSet {
    double w01 = 0, w12 = 0, w03 = 0, w23 = 0;
    double gamma20 = 0, gamma31 = 0;
    double gamma10_inter = 0; ///< 1 -> 0
    double gamma01_inter = 0; ///< 0 -> 1
    Method method = Method::Ordinary;

    double max_rate() const;
};

/// dp/dt = g * p for p = (p00, p11, p22, p33). Columns sum to zero.
struct GeneratorMatrix {
    std::array<std::array<double, 4>, 4> g{};

    double operator()(int row, int col) const { return g[row][col]; }
    double max_abs() const;
    double column_sum(int col) const;
};

GeneratorMatrix generator_from_rates(const RateSet& rates);

struct AssembledGenerator {
    GeneratorMatrix generator;
    RateSet rates;
};

/// Builds every channel rate for the drive's waveform plus intrawell and
/// interwell relaxation, and fills the generator.
AssembledGenerator assemble_generator(const FluxQubitModel& model, const DriveConfig& drive,
                                      InterwellActivation activation = InterwellActivation::ShiftedGap,
                                      BesselCache& cache = BesselCache::shared());

} // namespace fluxcool
