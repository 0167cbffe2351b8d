#include "fluxcool/rates.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numbers>

#include "fluxcool/error.hpp"

namespace fluxcool {

std::string to_string(Method method) {
    return method == Method::Ordinary ? "ordinary" : "new";
}

std::string to_string(InterwellActivation activation) {
    return activation == InterwellActivation::ShiftedGap ? "shifted-gap" : "literal-paper";
}

namespace {

inline double lorentzian(double detuning, double width) {
    const double den = detuning * detuning + width * width;
    if (den == 0.0) {
        throw Error(ErrorKind::Singular, "zero decoherence width exactly on resonance");
    }
    return width / den;
}

double center_detuning(const TransitionChannel& c, Waveform waveform) {
    return waveform == Waveform::Symmetric ? c.eps : c.eps + c.amp;
}

void require_positive_omega(double omega) {
    if (!std::isfinite(omega) || omega <= 0.0) {
        throw Error(ErrorKind::Domain, "drive frequency must be finite and > 0");
    }
}

} // namespace

LzResult lz_probability(const DriveConfig& drive, const TransitionChannel& channel) {
    const double mean = drive.waveform == Waveform::Symmetric ? drive.detuning_dc
                                                              : drive.detuning_dc + drive.phi_rf;
    const double offset = channel.crossing_flux - mean;
    LzResult r;
    double sine = 0.0;
    if (drive.phi_rf == 0.0) {
        if (offset != 0.0) {
            throw Error(ErrorKind::NotReached, "undriven system is not at the crossing");
        }
    } else {
        sine = offset / drive.phi_rf;
        if (std::abs(sine) > 1.0) {
            throw Error(ErrorKind::NotReached, "drive excursion does not reach the crossing");
        }
    }
    const double a = std::asin(sine);
    r.crossing_phase = a >= 0.0 ? a : std::numbers::pi - a;
    const double cosine = std::sqrt(std::max(0.0, 1.0 - sine * sine));
    r.sweep_rate = channel.slope * drive.omega * drive.phi_rf * cosine;
    if (channel.gap == 0.0) {
        r.probability = 0.0;
    } else if (r.sweep_rate == 0.0) {
        r.probability = 1.0;
        r.adiabatic_limit = true;
    } else {
        r.probability = -std::expm1(-channel.gap * channel.gap / (4.0 * r.sweep_rate));
    }
    return r;
}

double static_rate(const TransitionChannel& c) {
    if (c.width == 0.0 && c.eps == 0.0) {
        throw Error(ErrorKind::Singular, "static_rate: zero width on resonance");
    }
    return 0.5 * c.gap * c.gap * lorentzian(c.eps, c.width);
}

int truncation_order(const TransitionChannel& c, double omega) {
    require_positive_omega(omega);
    const double x = c.amp / omega;
    const double n = std::ceil((std::abs(c.eps) + c.amp) / omega) + std::ceil(10.0 * std::cbrt(x)) +
                     50.0 * std::ceil(c.width / omega) + 100.0;
    return n >= static_cast<double>(INT_MAX / 2) ? INT_MAX / 2 : static_cast<int>(n);
}

std::string truncation_rule_description() {
    return "N=ceil((|eps|+A)/w)+ceil(10*(A/w)^(1/3))+50*ceil(width/w)+100;"
           "bessel_order=ceil(x)+12*ceil(x^(1/3))+20";
}

namespace {

double bessel_lorentz_sum(const TransitionChannel& c, double center, double omega, const BesselTable& table,
                          int n_top) {
    const std::vector<double>& j = table.values;
    double sum = j[0] * j[0] * lorentzian(center, c.width);
    // Pairing +n and -n keeps the symmetric-drive rate exactly even in eps.
    for (int n = 1; n <= n_top; ++n) {
        const double jn = j[static_cast<std::size_t>(n)];
        const double shift = n * omega;
        sum += jn * jn * (lorentzian(center - shift, c.width) + lorentzian(center + shift, c.width));
    }
    return 0.5 * c.gap * c.gap * sum;
}

} // namespace

double mdlz_rate(const TransitionChannel& c, Waveform waveform, double omega, BesselCache& cache) {
    require_positive_omega(omega);
    if (c.gap == 0.0) return 0.0;
    const double center = center_detuning(c, waveform);
    const double x = c.amp / omega;
    if (x == 0.0) return 0.5 * c.gap * c.gap * lorentzian(center, c.width);
    const auto table = cache.get(x);
    return bessel_lorentz_sum(c, center, omega, *table, std::min(truncation_order(c, omega), table->n_max));
}

double mdlz_rate_with_order(const TransitionChannel& c, Waveform waveform, double omega, int order) {
    require_positive_omega(omega);
    if (order < 1) throw Error(ErrorKind::Domain, "photon cutoff must be >= 1");
    if (c.gap == 0.0) return 0.0;
    const double center = center_detuning(c, waveform);
    const double x = c.amp / omega;
    if (x == 0.0) return 0.5 * c.gap * c.gap * lorentzian(center, c.width);
    return bessel_lorentz_sum(c, center, omega, bessel_j_array(x, order), order);
}

namespace {

void require_airy_regime(const TransitionChannel& c, double omega) {
    require_positive_omega(omega);
    if (!(c.amp / omega >= 10.0)) {
        throw Error(ErrorKind::Validity, "Airy approximation needs A/omega >= 10");
    }
    if (c.width <= 0.0) {
        throw Error(ErrorKind::Singular, "Airy approximation needs a nonzero width");
    }
}

} // namespace

double airy_rate(const TransitionChannel& c, double omega) {
    require_airy_regime(c, omega);
    if (c.gap == 0.0) return 0.0;
    const double x = c.amp / omega;
    const double s = std::cbrt(2.0 * omega / c.amp);
    const double weight = s * s;
    const double center = c.eps + c.amp;
    const int n_top = truncation_order(c, omega);
    double sum = 0.0;
    for (int n = -n_top; n <= n_top; ++n) {
        const double ai = airy_ai(s * (n - x));
        if (ai == 0.0) continue;
        const double d = center - n * omega;
        sum += weight * ai * ai / (d * d / c.width + c.width);
    }
    return 0.5 * c.gap * c.gap * sum;
}

double airy_three_term(const TransitionChannel& c, double omega) {
    require_airy_regime(c, omega);
    const double gap2 = c.gap * c.gap;
    const double a = c.amp;
    const double w = c.width;
    const double s = std::cbrt(2.0 * omega / a);
    const double ai0 = airy_ai(s * c.eps / omega);
    const double aim = airy_ai(s * (c.eps - omega) / omega);
    const double aip = airy_ai(s * (c.eps + omega) / omega);
    const double side_den = std::pow(omega, 4.0 / 3.0) / w + w / std::pow(omega, 2.0 / 3.0);
    const double side_pref = gap2 * std::cbrt(1.0 / (2.0 * a * a));
    return gap2 * std::cbrt(omega * omega / (2.0 * a * a)) * ai0 * ai0 / w +
           side_pref * aim * aim / side_den + side_pref * aip * aip / side_den;
}

InterwellRates interwell_rates(const FluxQubitModel& model, const DriveConfig& drive,
                               Method method, InterwellActivation activation) {
    if (!(model.temperature > 0.0)) {
        throw Error(ErrorKind::Domain, "interwell rates need a positive temperature");
    }
    const TransitionChannel c10 = build_channel(model, drive, Channel::C10);
    InterwellRates r;
    if (method == Method::NewMethod && activation == InterwellActivation::LiteralPaper) {
        const TransitionChannel c12 = build_channel(model, drive, Channel::C12);
        r.down = model.gamma10_inter;
        r.up = model.gamma10_inter * std::exp(-(c12.eps - c12.amp) / model.temperature);
        return r;
    }
    // Detailed balance with the effective 1-0 splitting; the faster direction
    // always runs downhill at the bare interwell rate.
    const double splitting = method == Method::Ordinary ? c10.eps : c10.eps + c10.amp;
    const double boltzmann = std::exp(-std::abs(splitting) / model.temperature);
    if (splitting >= 0.0) {
        r.down = model.gamma10_inter;
        r.up = model.gamma10_inter * boltzmann;
    } else {
        r.up = model.gamma10_inter;
        r.down = model.gamma10_inter * boltzmann;
    }
    return r;
}

double interwell_up_rate(const FluxQubitModel& model, const DriveConfig& drive, Method method,
                         InterwellActivation activation) {
    return interwell_rates(model, drive, method, activation).up;
}

double RateSet::max_rate() const {
    return std::max({w01, w12, w03, w23, gamma20, gamma31, gamma10_inter, gamma01_inter});
}

double GeneratorMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& row : g) {
        for (double v : row) m = std::max(m, std::abs(v));
    }
    return m;
}

double GeneratorMatrix::column_sum(int col) const {
    return g[0][col] + g[1][col] + g[2][col] + g[3][col];
}

GeneratorMatrix generator_from_rates(const RateSet& r) {
    GeneratorMatrix m;
    auto& g = m.g;
    // state 0
    g[0][0] = -(r.gamma01_inter + r.w03 + r.w01);
    g[0][1] = r.gamma10_inter + r.w01;
    g[0][2] = r.gamma20;
    g[0][3] = r.w03;
    // state 1
    g[1][0] = r.gamma01_inter + r.w01;
    g[1][1] = -(r.gamma10_inter + r.w12 + r.w01);
    g[1][2] = r.w12;
    g[1][3] = r.gamma31;
    // state 2
    g[2][1] = r.w12;
    g[2][2] = -(r.gamma20 + r.w12 + r.w23);
    g[2][3] = r.w23;
    // state 3, completed by conservation
    g[3][0] = r.w03;
    g[3][2] = r.w23;
    g[3][3] = -(r.w03 + r.gamma31 + r.w23);
    return m;
}

AssembledGenerator assemble_generator(const FluxQubitModel& model, const DriveConfig& drive,
                                      InterwellActivation activation, BesselCache& cache) {
    const auto channels = build_channels(model, drive);
    const Method method = method_for(drive.waveform);
    RateSet r;
    r.method = method;
    r.w01 = mdlz_rate(channels[static_cast<int>(Channel::C10)], drive.waveform, drive.omega, cache);
    r.w12 = mdlz_rate(channels[static_cast<int>(Channel::C12)], drive.waveform, drive.omega, cache);
    r.w03 = mdlz_rate(channels[static_cast<int>(Channel::C30)], drive.waveform, drive.omega, cache);
    r.w23 = mdlz_rate(channels[static_cast<int>(Channel::C32)], drive.waveform, drive.omega, cache);
    r.gamma20 = model.gamma20;
    r.gamma31 = model.gamma31;
    const InterwellRates inter = interwell_rates(model, drive, method, activation);
    r.gamma10_inter = inter.down;
    r.gamma01_inter = inter.up;
    return {generator_from_rates(r), r};
}

} // namespace fluxcool
