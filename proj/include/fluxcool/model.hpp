#pragma once

#include <array>
#include <numbers>

namespace fluxcool {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Boltzmann constant over Planck constant, GHz per kelvin.
inline constexpr double kBoltzmannOverPlanck = 20.8366;

/// Device and environment parameters of the four-level flux qubit.
///
/// Energies and rates are angular frequencies in rad·GHz (hbar = k_B = 1),
/// flux is in units of mPhi0. States 1 and 3 live in the left well, 0 and 2
/// in the right well. The crossings are placed at 0 (for 1-0 and 3-2),
/// +phi_c (1-2) and -phi_c (3-0).
struct FluxQubitModel {
    double m0 = 0, m1 = 0, m2 = 0, m3 = 0; ///< level slopes, rad·GHz per mPhi0
    double gap01 = 0, gap12 = 0, gap03 = 0, gap23 = 0;
    double phi_c = 0;         ///< side-crossing flux position, mPhi0
    double gamma20 = 0;       ///< intrawell relaxation 2 -> 0
    double gamma31 = 0;       ///< intrawell relaxation 3 -> 1
    double gamma10_inter = 0; ///< interwell relaxation from the upper to the lower qubit state
    double gamma2 = 0;        ///< dephasing
    double temperature = 0;   ///< bath temperature as an angular frequency

    /// Throws Error(Config) naming the offending field.
    void validate() const;

    /// Energy of level 2 above level 0 at zero detuning.
    double offset2() const { return (m1 + m2) * phi_c; }
    /// Energy of level 3 above level 1 at zero detuning.
    double offset3() const { return (m0 + m3) * phi_c; }

    /// Mirror symmetry of the two wells (slopes, side gaps, intrawell rates).
    bool mirror_symmetric() const {
        return m0 == m1 && m2 == m3 && gamma20 == gamma31 && gap12 == gap03;
    }
};

/// Parameters of the reference experiment: slopes 1.44 / 1.09 GHz per mPhi0,
/// gaps 0.013 / 0.09 / 0.09 / 0.5 GHz, crossings at +-8.4 mPhi0,
/// dephasing 0.06 GHz, intrawell 0.1 GHz, interwell 5e-5 GHz, T = 50 mK.
FluxQubitModel default_model();

enum class Waveform { Symmetric, OneSided };

/// Flux drive. Symmetric: dc + rf*sin(wt). OneSided: dc + rf*(1 + sin(wt)),
/// which only moves toward the +phi_c crossing.
struct DriveConfig {
    Waveform waveform = Waveform::Symmetric;
    double phi_rf = 0;      ///< mPhi0
    double omega = 0;       ///< rad·GHz
    double detuning_dc = 0; ///< mPhi0

    void validate() const;

    double flux_at_phase(double phase) const;
};

enum class Channel { C10 = 0, C12 = 1, C30 = 2, C32 = 3 };

inline constexpr std::array<Channel, 4> kAllChannels = {Channel::C10, Channel::C12,
                                                        Channel::C30, Channel::C32};

/// One interwell pair (left state, right state).
struct TransitionChannel {
    Channel id = Channel::C10;
    int left_state = 1;
    int right_state = 0;
    double gap = 0;    ///< tunnelling gap
    double eps = 0;    ///< dc detuning eps_left - eps_right
    double amp = 0;    ///< drive energy amplitude (|m_l| + |m_r|) * phi_rf
    double width = 0;  ///< gamma2 plus the mean intrawell decay of the pair
    double slope = 0;  ///< |m_l| + |m_r|
    double crossing_flux = 0; ///< dc flux where eps vanishes
};

std::array<TransitionChannel, 4> build_channels(const FluxQubitModel& model,
                                                const DriveConfig& drive);

TransitionChannel build_channel(const FluxQubitModel& model, const DriveConfig& drive,
                                Channel id);

/// Bath temperature in millikelvin to rad·GHz.
double temperature_from_millikelvin(double t_mk);

} // namespace fluxcool
