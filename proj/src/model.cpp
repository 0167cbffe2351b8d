#include "fluxcool/model.hpp"

#include <cmath>
#include <string>

#include "fluxcool/error.hpp"

namespace fluxcool {

namespace {

void require_nonnegative(double value, const char* name) {
    if (!std::isfinite(value) || value < 0.0) {
        throw Error(ErrorKind::Config,
                    std::string("model.") + name + " must be finite and >= 0");
    }
}

} // namespace

void FluxQubitModel::validate() const {
    require_nonnegative(m0, "m0");
    require_nonnegative(m1, "m1");
    require_nonnegative(m2, "m2");
    require_nonnegative(m3, "m3");
    require_nonnegative(gap01, "gap01");
    require_nonnegative(gap12, "gap12");
    require_nonnegative(gap03, "gap03");
    require_nonnegative(gap23, "gap23");
    require_nonnegative(gamma20, "gamma20");
    require_nonnegative(gamma31, "gamma31");
    require_nonnegative(gamma10_inter, "gamma10_inter");
    require_nonnegative(gamma2, "gamma2");
    if (!std::isfinite(phi_c) || phi_c <= 0.0) {
        throw Error(ErrorKind::Config, "model.phi_c must be finite and > 0");
    }
    if (!std::isfinite(temperature) || temperature <= 0.0) {
        throw Error(ErrorKind::Config, "model.temperature must be finite and > 0");
    }
}

FluxQubitModel default_model() {
    FluxQubitModel m;
    m.m0 = kTwoPi * 1.44;
    m.m1 = kTwoPi * 1.44;
    m.m2 = kTwoPi * 1.09;
    m.m3 = kTwoPi * 1.09;
    m.gap01 = kTwoPi * 0.013;
    m.gap12 = kTwoPi * 0.09;
    m.gap03 = kTwoPi * 0.09;
    m.gap23 = kTwoPi * 0.5;
    m.phi_c = 8.4;
    m.gamma20 = kTwoPi * 0.1;
    m.gamma31 = kTwoPi * 0.1;
    m.gamma10_inter = kTwoPi * 0.00005;
    m.gamma2 = kTwoPi * 0.06;
    m.temperature = temperature_from_millikelvin(50.0);
    return m;
}

void DriveConfig::validate() const {
    if (!std::isfinite(phi_rf) || phi_rf < 0.0) {
        throw Error(ErrorKind::Config, "drive.phi_rf must be finite and >= 0");
    }
    if (!std::isfinite(omega) || omega <= 0.0) {
        throw Error(ErrorKind::Config, "drive.omega must be finite and > 0");
    }
    if (!std::isfinite(detuning_dc)) {
        throw Error(ErrorKind::Config, "drive.detuning_dc must be finite");
    }
}

double DriveConfig::flux_at_phase(double phase) const {
    const double s = std::sin(phase);
    return waveform == Waveform::Symmetric ? detuning_dc + phi_rf * s
                                           : detuning_dc + phi_rf * (1.0 + s);
}

TransitionChannel build_channel(const FluxQubitModel& model, const DriveConfig& drive,
                                Channel id) {
    TransitionChannel c;
    c.id = id;
    const double d = drive.detuning_dc;
    switch (id) {
    case Channel::C10:
        c.left_state = 1;
        c.right_state = 0;
        c.gap = model.gap01;
        c.slope = model.m0 + model.m1;
        c.eps = c.slope * d;
        c.width = model.gamma2;
        c.crossing_flux = 0.0;
        break;
    case Channel::C12:
        c.left_state = 1;
        c.right_state = 2;
        c.gap = model.gap12;
        c.slope = model.m1 + model.m2;
        c.eps = c.slope * (d - model.phi_c);
        c.width = model.gamma2 + 0.5 * model.gamma20;
        c.crossing_flux = model.phi_c;
        break;
    case Channel::C30:
        c.left_state = 3;
        c.right_state = 0;
        c.gap = model.gap03;
        c.slope = model.m0 + model.m3;
        c.eps = c.slope * (d + model.phi_c);
        c.width = model.gamma2 + 0.5 * model.gamma31;
        c.crossing_flux = -model.phi_c;
        break;
    case Channel::C32: {
        c.left_state = 3;
        c.right_state = 2;
        c.gap = model.gap23;
        c.slope = model.m2 + model.m3;
        const double offset = model.offset3() - model.offset2();
        c.eps = c.slope * d + offset;
        c.width = model.gamma2 + 0.5 * (model.gamma20 + model.gamma31);
        c.crossing_flux = c.slope > 0.0 ? -offset / c.slope : 0.0;
        break;
    }
    }
    c.amp = c.slope * drive.phi_rf;
    return c;
}

std::array<TransitionChannel, 4> build_channels(const FluxQubitModel& model,
                                                const DriveConfig& drive) {
    std::array<TransitionChannel, 4> out;
    for (Channel id : kAllChannels) {
        out[static_cast<int>(id)] = build_channel(model, drive, id);
    }
    return out;
}

double temperature_from_millikelvin(double t_mk) {
    if (!std::isfinite(t_mk) || t_mk <= 0.0) {
        throw Error(ErrorKind::Domain, "temperature must be > 0 mK");
    }
    return kTwoPi * kBoltzmannOverPlanck * t_mk / 1000.0;
}

} // namespace fluxcool
