#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fluxcool/config.hpp"
#include "fluxcool/dynamics.hpp"
#include "fluxcool/figures.hpp"
#include "fluxcool/sweep.hpp"

namespace py = pybind11;
using namespace fluxcool;

namespace {

py::dict rates_dict(const RateSet& r) {
    py::dict d;
    d["w01"] = r.w01;
    d["w12"] = r.w12;
    d["w03"] = r.w03;
    d["w23"] = r.w23;
    d["gamma20"] = r.gamma20;
    d["gamma31"] = r.gamma31;
    d["gamma10_inter"] = r.gamma10_inter;
    d["gamma01_inter"] = r.gamma01_inter;
    return d;
}

std::vector<std::vector<double>> matrix(const GeneratorMatrix& g) {
    std::vector<std::vector<double>> out(4, std::vector<double>(4));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r][c] = g(r, c);
    return out;
}

} // namespace

PYBIND11_MODULE(_fluxcool, m) {
    m.doc() = "Driven sideband cooling of a four-level flux qubit";

    static py::exception<Error> error(m, "FluxcoolError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
        }
    });

    m.attr("TWO_PI") = kTwoPi;

    py::enum_<Waveform>(m, "Waveform").value("SYMMETRIC", Waveform::Symmetric).value("ONE_SIDED", Waveform::OneSided);
    py::enum_<Method>(m, "Method").value("ORDINARY", Method::Ordinary).value("NEW", Method::NewMethod);
    py::enum_<Channel>(m, "Channel")
        .value("C10", Channel::C10)
        .value("C12", Channel::C12)
        .value("C30", Channel::C30)
        .value("C32", Channel::C32);
    py::enum_<InterwellActivation>(m, "Activation")
        .value("SHIFTED_GAP", InterwellActivation::ShiftedGap)
        .value("LITERAL_PAPER", InterwellActivation::LiteralPaper);

    py::class_<FluxQubitModel>(m, "Model")
        .def(py::init(&default_model))
        .def_readwrite("m0", &FluxQubitModel::m0)
        .def_readwrite("m1", &FluxQubitModel::m1)
        .def_readwrite("m2", &FluxQubitModel::m2)
        .def_readwrite("m3", &FluxQubitModel::m3)
        .def_readwrite("gap01", &FluxQubitModel::gap01)
        .def_readwrite("gap12", &FluxQubitModel::gap12)
        .def_readwrite("gap03", &FluxQubitModel::gap03)
        .def_readwrite("gap23", &FluxQubitModel::gap23)
        .def_readwrite("phi_c", &FluxQubitModel::phi_c)
        .def_readwrite("gamma20", &FluxQubitModel::gamma20)
        .def_readwrite("gamma31", &FluxQubitModel::gamma31)
        .def_readwrite("gamma10_inter", &FluxQubitModel::gamma10_inter)
        .def_readwrite("gamma2", &FluxQubitModel::gamma2)
        .def_readwrite("temperature", &FluxQubitModel::temperature)
        .def("validate", &FluxQubitModel::validate)
        .def("mirror_symmetric", &FluxQubitModel::mirror_symmetric);

    py::class_<DriveConfig>(m, "Drive")
        .def(py::init([](Waveform w, double phi_rf, double omega, double detuning_dc) {
                 return DriveConfig{w, phi_rf, omega, detuning_dc};
             }),
             py::arg("waveform"), py::arg("phi_rf"), py::arg("omega"), py::arg("detuning_dc"))
        .def_readwrite("waveform", &DriveConfig::waveform)
        .def_readwrite("phi_rf", &DriveConfig::phi_rf)
        .def_readwrite("omega", &DriveConfig::omega)
        .def_readwrite("detuning_dc", &DriveConfig::detuning_dc);

    py::class_<TransitionChannel>(m, "TransitionChannel")
        .def_readonly("id", &TransitionChannel::id)
        .def_readonly("gap", &TransitionChannel::gap)
        .def_readonly("eps", &TransitionChannel::eps)
        .def_readonly("amp", &TransitionChannel::amp)
        .def_readonly("width", &TransitionChannel::width);

    m.def("temperature_from_millikelvin", &temperature_from_millikelvin, py::arg("t_mk"));
    m.def("build_channel", &build_channel, py::arg("model"), py::arg("drive"), py::arg("channel"));
    m.def("static_rate", &static_rate, py::arg("channel"));
    m.def(
        "mdlz_rate",
        [](const TransitionChannel& c, Waveform w, double omega) { return mdlz_rate(c, w, omega); },
        py::arg("channel"), py::arg("waveform"), py::arg("omega"));
    m.def(
        "lz_probability", [](const DriveConfig& d, const TransitionChannel& c) { return lz_probability(d, c).probability; },
        py::arg("drive"), py::arg("channel"));
    m.def(
        "rates",
        [](const FluxQubitModel& model, const DriveConfig& drive, InterwellActivation act) {
            return rates_dict(assemble_generator(model, drive, act).rates);
        },
        py::arg("model"), py::arg("drive"), py::arg("activation") = InterwellActivation::ShiftedGap);
    m.def(
        "generator",
        [](const FluxQubitModel& model, const DriveConfig& drive, InterwellActivation act) {
            return matrix(assemble_generator(model, drive, act).generator);
        },
        py::arg("model"), py::arg("drive"), py::arg("activation") = InterwellActivation::ShiftedGap);
    m.def(
        "steady_state",
        [](const FluxQubitModel& model, const DriveConfig& drive, InterwellActivation act) {
            const auto s = steady_state(assemble_generator(model, drive, act).generator,
                                        (model.m0 + model.m1) * drive.detuning_dc);
            py::dict d;
            d["p"] = s.p;
            d["residual"] = s.residual;
            d["t_eff"] = s.t_eff ? py::cast(*s.t_eff) : py::none();
            return d;
        },
        py::arg("model"), py::arg("drive"), py::arg("activation") = InterwellActivation::ShiftedGap);
    m.def("equilibrium_p11", &equilibrium_p11, py::arg("model"), py::arg("detuning_dc"));
    m.def(
        "optimal_amplitude",
        [](const FluxQubitModel& model, double detuning_dc, double omega, Method method, InterwellActivation act,
           unsigned threads) {
            py::gil_scoped_release release;
            const auto o = optimal_amplitude_default(model, detuning_dc, omega, method, act, threads);
            return std::make_tuple(o.phi_rf_star, o.p11_star, o.interior());
        },
        py::arg("model"), py::arg("detuning_dc"), py::arg("omega"), py::arg("method"),
        py::arg("activation") = InterwellActivation::ShiftedGap, py::arg("threads") = 1);
    m.def("figure_presets", [] {
        std::vector<std::string> names;
        for (const auto& p : figure_presets()) names.push_back(p.name);
        return names;
    });
}
