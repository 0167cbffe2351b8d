#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fluxcool/dynamics.hpp"
#include "fluxcool/error.hpp"

namespace fluxcool {

enum class Axis { DetuningDc, PhiRf, Omega, Gamma2 };

std::string axis_name(Axis axis);
/// Unit of the value as written to data files (omega and gamma2 divided by 2pi).
std::string axis_unit(Axis axis);
/// Converts an internal value to the unit reported by axis_unit.
double axis_to_external(Axis axis, double value);
double axis_from_external(Axis axis, double value);
std::optional<Axis> parse_axis(const std::string& name);

/// A full parameter point; omega and gamma2 in rad·GHz.
struct SweepPoint {
    double detuning_dc = 0;
    double phi_rf = 0;
    double omega = 0;
    double gamma2 = 0;

    double get(Axis axis) const;
    void set(Axis axis, double value);
};

struct GridAxis {
    Axis axis = Axis::DetuningDc;
    std::vector<double> values; ///< internal units, strictly increasing
};

struct SweepGrid {
    std::vector<GridAxis> axes; ///< row-major: the last axis varies fastest
    SweepPoint fixed;
    Method method = Method::Ordinary;
    InterwellActivation activation = InterwellActivation::ShiftedGap;

    void validate() const;
    std::vector<std::size_t> shape() const;
    std::size_t size() const;
    SweepPoint point(std::size_t flat_index) const;
};

/// Evenly spaced values start, start+step, ... up to stop (inclusive within
/// a 1e-9 step tolerance). Computed as start + k*step.
std::vector<double> linear_values(double start, double stop, double step);
/// Log-spaced values with a fixed number of points per decade, endpoints included.
std::vector<double> log_values(double start, double stop, int per_decade);

struct CellFailure {
    std::size_t index = 0;
    ErrorKind kind = ErrorKind::Domain;
    std::string message;
};

struct SweepResult {
    SweepGrid grid;
    std::vector<double> p11; ///< NaN where the cell failed
    std::vector<CellFailure> failures;
    std::string model_hash;
    std::string truncation_rule;
    std::string timestamp; ///< UTC, ISO 8601
};

std::string utc_timestamp();

/// Hex digest of the model parameters (bit patterns), used for provenance.
std::string model_hash(const FluxQubitModel& model);

/// Steady-state p11 at a single parameter point.
double population_p11(const FluxQubitModel& model, const SweepPoint& point, Method method,
                      InterwellActivation activation = InterwellActivation::ShiftedGap);

/// p11 on every grid cell. Cell errors are recorded, not thrown. The result
/// is identical for any worker count.
SweepResult run_sweep(const FluxQubitModel& model, const SweepGrid& grid, unsigned threads = 1);

struct OptimalPoint {
    double phi_rf_star = 0;
    double omega_star = 0;
    double p11_star = 0;
    bool at_lower_edge = false;
    bool at_upper_edge = false;
    std::size_t failed_cells = 0;

    bool interior() const { return !at_lower_edge && !at_upper_edge; }
};

/// Amplitude that is expected to minimise p11: the excursion just reaching
/// the 1-2 crossing (ordinary) or its one-sided counterpart.
double predicted_optimal_amplitude(const FluxQubitModel& model, double detuning_dc, Method method);

/// Step 0.01 within +-0.5 of the predicted optimum, 0.05 elsewhere in [lo, hi].
std::vector<double> default_amplitude_grid(const FluxQubitModel& model, double detuning_dc,
                                           Method method, double lo, double hi);

/// Minimum of p11 over the listed amplitudes; ties go to the smaller amplitude.
OptimalPoint optimal_amplitude_on(const FluxQubitModel& model, double detuning_dc, double omega,
                                  Method method, const std::vector<double>& amplitudes,
                                  InterwellActivation activation = InterwellActivation::ShiftedGap,
                                  unsigned threads = 1);

/// Uniform scan of [amp_lo, amp_hi] with amp_step.
OptimalPoint optimal_amplitude(const FluxQubitModel& model, double detuning_dc, double omega,
                               Method method, double amp_lo, double amp_hi, double amp_step,
                               InterwellActivation activation = InterwellActivation::ShiftedGap,
                               unsigned threads = 1);

/// Optimum over the default amplitude grid on [pred - 1, pred + 0.6].
OptimalPoint optimal_amplitude_default(const FluxQubitModel& model, double detuning_dc, double omega,
                                       Method method,
                                       InterwellActivation activation = InterwellActivation::ShiftedGap,
                                       unsigned threads = 1);

struct AmplitudeFitPoint {
    double detuning_dc = 0;
    double phi_rf_star = 0;
    double p11_star = 0;
    double residual = 0;
    bool interior = true;
};

struct AmplitudeFit {
    double slope = 0;
    double intercept = 0;
    double max_residual = 0;
    std::vector<AmplitudeFitPoint> points;
};

/// Least-squares line through the points; fills the residuals.
AmplitudeFit fit_line(std::vector<AmplitudeFitPoint> points);

/// Least-squares line through (detuning, optimal amplitude). Duplicate
/// detunings are dropped before fitting.
AmplitudeFit fit_amplitude_condition(const FluxQubitModel& model, std::vector<double> detunings,
                                     double omega, Method method,
                                     InterwellActivation activation = InterwellActivation::ShiftedGap,
                                     unsigned threads = 1);

struct EnvelopePoint {
    double omega = 0;
    double w12_max = 0;
    double phi_rf_at_max = 0;
};

struct PeakFrequency {
    double omega_peak = 0;
    double w12_peak = 0;
    double phi_rf_at_peak = 0;
    std::vector<EnvelopePoint> envelope;
};

/// Largest one-sided W12 over amplitude at fixed omega (coarse scan with step
/// 0.02 then a 0.001 refinement).
EnvelopePoint max_w12_over_amplitude(const FluxQubitModel& model, double detuning_dc, double omega);

/// For each omega, maximises the one-sided W12 over amplitude; returns the
/// omega with the largest maximum, plus the whole envelope.
PeakFrequency peak_w12_frequency(const FluxQubitModel& model, double detuning_dc, double gamma2,
                                 const std::vector<double>& omegas, unsigned threads = 1);

/// Upper end of the incoherent region for the 1-2 channel: its decoherence
/// width gamma2 + gamma20/2.
double incoherent_frequency_limit(const FluxQubitModel& model, double gamma2);

} // namespace fluxcool
