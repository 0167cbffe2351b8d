#include "fluxcool/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <limits>
#include <set>

#include "fluxcool/parallel.hpp"

namespace fluxcool {

std::string axis_name(Axis axis) {
    switch (axis) {
    case Axis::DetuningDc: return "detuning_dc";
    case Axis::PhiRf: return "phi_rf";
    case Axis::Omega: return "omega";
    case Axis::Gamma2: return "gamma2";
    }
    return "?";
}

std::string axis_unit(Axis axis) {
    switch (axis) {
    case Axis::DetuningDc:
    case Axis::PhiRf: return "mPhi0";
    case Axis::Omega:
    case Axis::Gamma2: return "GHz/2pi";
    }
    return "";
}

double axis_to_external(Axis axis, double value) {
    return (axis == Axis::Omega || axis == Axis::Gamma2) ? value / kTwoPi : value;
}

double axis_from_external(Axis axis, double value) {
    return (axis == Axis::Omega || axis == Axis::Gamma2) ? value * kTwoPi : value;
}

std::optional<Axis> parse_axis(const std::string& name) {
    for (Axis a : {Axis::DetuningDc, Axis::PhiRf, Axis::Omega, Axis::Gamma2})
        if (axis_name(a) == name) return a;
    return std::nullopt;
}

double SweepPoint::get(Axis axis) const {
    switch (axis) {
    case Axis::DetuningDc: return detuning_dc;
    case Axis::PhiRf: return phi_rf;
    case Axis::Omega: return omega;
    case Axis::Gamma2: return gamma2;
    }
    return 0;
}

void SweepPoint::set(Axis axis, double value) {
    switch (axis) {
    case Axis::DetuningDc: detuning_dc = value; break;
    case Axis::PhiRf: phi_rf = value; break;
    case Axis::Omega: omega = value; break;
    case Axis::Gamma2: gamma2 = value; break;
    }
}

void SweepGrid::validate() const {
    std::set<Axis> seen;
    for (const auto& ax : axes) {
        const std::string name = "sweep.axes." + axis_name(ax.axis);
        if (!seen.insert(ax.axis).second) throw Error(ErrorKind::Config, name + ": axis listed twice");
        if (ax.values.empty()) throw Error(ErrorKind::Config, name + ": no values");
        for (std::size_t k = 0; k < ax.values.size(); ++k) {
            const double v = ax.values[k];
            if (!std::isfinite(v)) throw Error(ErrorKind::Config, name + ": non-finite value");
            if (k > 0 && !(v > ax.values[k - 1]))
                throw Error(ErrorKind::Config, name + ": values must be strictly increasing");
            if (ax.axis == Axis::Omega && !(v > 0)) throw Error(ErrorKind::Config, name + ": must be > 0");
            if ((ax.axis == Axis::PhiRf || ax.axis == Axis::Gamma2) && v < 0)
                throw Error(ErrorKind::Config, name + ": must be >= 0");
        }
    }
    if (!seen.count(Axis::Omega) && !(fixed.omega > 0)) throw Error(ErrorKind::Config, "drive.omega: must be > 0");
    if (!seen.count(Axis::PhiRf) && !(fixed.phi_rf >= 0)) throw Error(ErrorKind::Config, "drive.phi_rf: must be >= 0");
    if (!seen.count(Axis::Gamma2) && !(fixed.gamma2 >= 0)) throw Error(ErrorKind::Config, "model.gamma2: must be >= 0");
}

std::vector<std::size_t> SweepGrid::shape() const {
    std::vector<std::size_t> s;
    for (const auto& ax : axes) s.push_back(ax.values.size());
    return s;
}

std::size_t SweepGrid::size() const {
    std::size_t n = 1;
    for (const auto& ax : axes) n *= ax.values.size();
    return n;
}

SweepPoint SweepGrid::point(std::size_t flat) const {
    SweepPoint p = fixed;
    for (std::size_t k = axes.size(); k-- > 0;) {
        const auto& ax = axes[k];
        p.set(ax.axis, ax.values[flat % ax.values.size()]);
        flat /= ax.values.size();
    }
    return p;
}

std::vector<double> linear_values(double start, double stop, double step) {
    if (!(step > 0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start)
        throw Error(ErrorKind::Config, "linear range needs finite start <= stop and step > 0");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> v(count);
    for (std::size_t k = 0; k < count; ++k) v[k] = start + static_cast<double>(k) * step;
    return v;
}

std::vector<double> log_values(double start, double stop, int per_decade) {
    if (!(start > 0) || !(stop >= start) || per_decade < 1)
        throw Error(ErrorKind::Config, "log range needs 0 < start <= stop and per_decade >= 1");
    const double l0 = std::log10(start);
    const double l1 = std::log10(stop);
    const auto count = static_cast<std::size_t>(std::floor((l1 - l0) * per_decade + 1e-9)) + 1;
    std::vector<double> v;
    for (std::size_t k = 0; k < count; ++k)
        v.push_back(std::pow(10.0, l0 + static_cast<double>(k) / per_decade));
    if (v.back() < stop * (1 - 1e-12)) v.push_back(stop);
    else v.back() = stop;
    return v;
}

std::string model_hash(const FluxQubitModel& m) {
    std::uint64_t h = 1469598103934665603ull;
    for (double v : {m.m0, m.m1, m.m2, m.m3, m.gap01, m.gap12, m.gap03, m.gap23, m.phi_c, m.gamma20,
                     m.gamma31, m.gamma10_inter, m.gamma2, m.temperature}) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

double population_p11(const FluxQubitModel& model, const SweepPoint& point, Method method,
                      InterwellActivation activation) {
    FluxQubitModel m = model;
    m.gamma2 = point.gamma2;
    DriveConfig drive{waveform_for(method), point.phi_rf, point.omega, point.detuning_dc};
    drive.validate();
    const auto assembled = assemble_generator(m, drive, activation);
    return steady_state(assembled.generator).p[1];
}

SweepResult run_sweep(const FluxQubitModel& model, const SweepGrid& grid, unsigned threads) {
    model.validate();
    grid.validate();
    SweepResult r;
    r.grid = grid;
    r.p11.assign(grid.size(), kNaN);
    std::vector<std::optional<CellFailure>> failed(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        try {
            r.p11[i] = population_p11(model, grid.point(i), grid.method, grid.activation);
        } catch (const Error& e) {
            failed[i] = CellFailure{i, e.kind(), e.what()};
        }
    });
    for (auto& f : failed)
        if (f) r.failures.push_back(std::move(*f));
    r.model_hash = model_hash(model);
    r.truncation_rule = truncation_rule_description();
    r.timestamp = utc_timestamp();
    return r;
}

double predicted_optimal_amplitude(const FluxQubitModel& model, double detuning_dc, Method method) {
    const double reach = model.phi_c - detuning_dc;
    return method == Method::Ordinary ? reach : 0.5 * reach + 0.1;
}

std::vector<double> default_amplitude_grid(const FluxQubitModel& model, double detuning_dc,
                                           Method method, double lo, double hi) {
    const double pred = predicted_optimal_amplitude(model, detuning_dc, method);
    lo = std::max(lo, 0.0);
    std::vector<double> v;
    const auto k0 = static_cast<long>(std::ceil(lo * 100 - 1e-9));
    const auto k1 = static_cast<long>(std::floor(hi * 100 + 1e-9));
    for (long k = k0; k <= k1; ++k) {
        const double a = static_cast<double>(k) / 100.0;
        if (k % 5 == 0 || std::abs(a - pred) <= 0.5 + 1e-9) v.push_back(a);
    }
    return v;
}

OptimalPoint optimal_amplitude_on(const FluxQubitModel& model, double detuning_dc, double omega,
                                  Method method, const std::vector<double>& amplitudes,
                                  InterwellActivation activation, unsigned threads) {
    if (amplitudes.empty()) throw Error(ErrorKind::Config, "optimize: amplitude range is empty");
    std::vector<double> p(amplitudes.size(), kNaN);
    std::vector<std::optional<Error>> errs(amplitudes.size());
    parallel_for(amplitudes.size(), threads, [&](std::size_t i) {
        try {
            p[i] = population_p11(model, {detuning_dc, amplitudes[i], omega, model.gamma2}, method, activation);
        } catch (const Error& e) {
            errs[i] = e;
        }
    });
    OptimalPoint best;
    best.omega_star = omega;
    std::optional<std::size_t> arg;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (std::isnan(p[i])) {
            ++best.failed_cells;
            continue;
        }
        if (!arg || p[i] < p[*arg]) arg = i;
    }
    if (!arg) throw *errs.front();
    best.phi_rf_star = amplitudes[*arg];
    best.p11_star = p[*arg];
    best.at_lower_edge = *arg == 0;
    best.at_upper_edge = *arg + 1 == amplitudes.size();
    return best;
}

OptimalPoint optimal_amplitude(const FluxQubitModel& model, double detuning_dc, double omega,
                               Method method, double amp_lo, double amp_hi, double amp_step,
                               InterwellActivation activation, unsigned threads) {
    return optimal_amplitude_on(model, detuning_dc, omega, method, linear_values(amp_lo, amp_hi, amp_step),
                                activation, threads);
}

OptimalPoint optimal_amplitude_default(const FluxQubitModel& model, double detuning_dc, double omega,
                                       Method method, InterwellActivation activation, unsigned threads) {
    const double pred = predicted_optimal_amplitude(model, detuning_dc, method);
    return optimal_amplitude_on(model, detuning_dc, omega, method,
                                default_amplitude_grid(model, detuning_dc, method, pred - 1.0, pred + 0.6),
                                activation, threads);
}

AmplitudeFit fit_line(std::vector<AmplitudeFitPoint> points) {
    if (points.size() < 2) throw Error(ErrorKind::Config, "fit needs at least 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : points) {
        sx += p.detuning_dc;
        sy += p.phi_rf_star;
        sxx += p.detuning_dc * p.detuning_dc;
        sxy += p.detuning_dc * p.phi_rf_star;
    }
    const double n = static_cast<double>(points.size());
    AmplitudeFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    for (auto& p : points) {
        p.residual = p.phi_rf_star - (fit.intercept + fit.slope * p.detuning_dc);
        fit.max_residual = std::max(fit.max_residual, std::abs(p.residual));
    }
    fit.points = std::move(points);
    return fit;
}

AmplitudeFit fit_amplitude_condition(const FluxQubitModel& model, std::vector<double> detunings,
                                     double omega, Method method, InterwellActivation activation,
                                     unsigned threads) {
    std::sort(detunings.begin(), detunings.end());
    detunings.erase(std::unique(detunings.begin(), detunings.end()), detunings.end());
    if (detunings.size() < 3) throw Error(ErrorKind::Config, "fit needs at least 3 distinct detunings");
    std::vector<AmplitudeFitPoint> points;
    for (double d : detunings) {
        const auto o = optimal_amplitude_default(model, d, omega, method, activation, threads);
        points.push_back({d, o.phi_rf_star, o.p11_star, 0.0, o.interior()});
    }
    return fit_line(std::move(points));
}

namespace {

double one_sided_w12(const FluxQubitModel& model, double detuning_dc, double phi_rf, double omega) {
    const DriveConfig drive{Waveform::OneSided, phi_rf, omega, detuning_dc};
    return mdlz_rate(build_channel(model, drive, Channel::C12), Waveform::OneSided, omega);
}

} // namespace

EnvelopePoint max_w12_over_amplitude(const FluxQubitModel& model, double detuning_dc, double omega) {
    const double centre = 0.5 * (model.phi_c - detuning_dc);
    EnvelopePoint best{omega, -1.0, 0.0};
    auto scan = [&](double lo, double hi, double step) {
        const auto k1 = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
        for (long k = 0; k <= k1; ++k) {
            const double a = lo + static_cast<double>(k) * step;
            if (a < 0) continue;
            const double w = one_sided_w12(model, detuning_dc, a, omega);
            if (w > best.w12_max) {
                best.w12_max = w;
                best.phi_rf_at_max = a;
            }
        }
    };
    scan(centre - 1.0, centre + 1.5, 0.02);
    const double coarse = best.phi_rf_at_max;
    scan(coarse - 0.02, coarse + 0.02, 0.001);
    return best;
}

PeakFrequency peak_w12_frequency(const FluxQubitModel& model, double detuning_dc, double gamma2,
                                 const std::vector<double>& omegas, unsigned threads) {
    if (omegas.empty()) throw Error(ErrorKind::Config, "peak frequency: omega range is empty");
    FluxQubitModel m = model;
    m.gamma2 = gamma2;
    m.validate();
    PeakFrequency r;
    r.envelope.resize(omegas.size());
    parallel_for(omegas.size(), threads,
                 [&](std::size_t i) { r.envelope[i] = max_w12_over_amplitude(m, detuning_dc, omegas[i]); });
    r.w12_peak = -1;
    for (const auto& e : r.envelope) {
        if (e.w12_max > r.w12_peak) {
            r.w12_peak = e.w12_max;
            r.omega_peak = e.omega;
            r.phi_rf_at_peak = e.phi_rf_at_max;
        }
    }
    return r;
}

double incoherent_frequency_limit(const FluxQubitModel& model, double gamma2) {
    return gamma2 + 0.5 * model.gamma20;
}

} // namespace fluxcool
