#include "doctest.h"

#include <cmath>
#include <cstring>

#include "fluxcool/sweep.hpp"

using namespace fluxcool;

namespace {

SweepGrid small_grid() {
    SweepGrid g;
    g.fixed = {0.05, 8.35, kTwoPi * 0.005, kTwoPi * 0.06};
    g.axes = {{Axis::DetuningDc, linear_values(-0.5, 0.5, 0.25)},
              {Axis::Omega, log_values(kTwoPi * 0.001, kTwoPi * 1.0, 3)}};
    return g;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_CASE("linear and log grids") {
    const auto lin = linear_values(0.0, 1.0, 0.1);
    REQUIRE(lin.size() == 11);
    CHECK(lin[3] == 0.0 + 3 * 0.1);
    CHECK(lin.back() == doctest::Approx(1.0));
    const auto lg = log_values(1.0, 1000.0, 2);
    REQUIRE(lg.size() == 7);
    CHECK(lg.front() == 1.0);
    CHECK(lg.back() == 1000.0);
    CHECK(lg[1] == doctest::Approx(std::sqrt(10.0)));
    CHECK_THROWS_AS(linear_values(1.0, 0.0, 0.1), Error);
    CHECK_THROWS_AS(log_values(0.0, 1.0, 3), Error);
}

TEST_CASE("grid shape and row-major ordering") {
    const auto g = small_grid();
    CHECK(g.shape() == std::vector<std::size_t>{5, 10});
    CHECK(g.size() == 50);
    const auto p = g.point(13);
    CHECK(p.detuning_dc == g.axes[0].values[1]);
    CHECK(p.omega == g.axes[1].values[3]);
    CHECK(p.phi_rf == 8.35);
}

TEST_CASE("grid validation") {
    auto g = small_grid();
    g.axes.push_back({Axis::DetuningDc, {1.0}});
    CHECK_THROWS_AS(g.validate(), Error);
    g = small_grid();
    g.axes[1].values = {kTwoPi * 0.01, kTwoPi * 0.001};
    CHECK_THROWS_AS(g.validate(), Error);
    g.axes[1].values = {0.0};
    try {
        g.validate();
        FAIL("expected a config error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Config);
        CHECK(std::string(e.what()).find("omega") != std::string::npos);
    }
}

TEST_CASE("a 1x1 sweep matches the single-point solver") {
    const auto m = default_model();
    SweepGrid g;
    g.fixed = {0.05, 8.35, kTwoPi * 0.005, m.gamma2};
    g.axes = {{Axis::DetuningDc, {0.05}}, {Axis::PhiRf, {8.35}}};
    const auto r = run_sweep(m, g, 1);
    REQUIRE(r.p11.size() == 1);
    CHECK(r.failures.empty());
    CHECK(r.p11[0] == population_p11(m, g.point(0), Method::Ordinary));
    CHECK(r.model_hash == model_hash(m));
    CHECK_FALSE(r.truncation_rule.empty());
}

TEST_CASE("sweep results do not depend on the worker count") {
    const auto m = default_model();
    const auto g = small_grid();
    const auto one = run_sweep(m, g, 1);
    const auto many = run_sweep(m, g, 8);
    REQUIRE(one.p11.size() == many.p11.size());
    for (std::size_t k = 0; k < one.p11.size(); ++k) CHECK(bit_equal(one.p11[k], many.p11[k]));
}

TEST_CASE("failing cells are recorded and the rest are computed") {
    const auto m = default_model();
    SweepGrid g;
    g.fixed = {0.0, 0.0, kTwoPi * 0.005, 0.0};
    g.axes = {{Axis::Gamma2, {0.0, kTwoPi * 0.06}}};
    const auto r = run_sweep(m, g, 2);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].index == 0);
    CHECK(r.failures[0].kind == ErrorKind::Singular);
    CHECK(std::isnan(r.p11[0]));
    CHECK(std::isfinite(r.p11[1]));
}

TEST_CASE("half-step refinement never raises the optimum") {
    const auto m = default_model();
    for (double det : {0.05, 1.0, 2.0}) {
        const double omega = kTwoPi * 0.005;
        const auto coarse = optimal_amplitude(m, det, omega, Method::Ordinary, 5.0, 9.0, 0.04);
        const auto fine = optimal_amplitude(m, det, omega, Method::Ordinary, 5.0, 9.0, 0.02);
        CAPTURE(det);
        CHECK(fine.p11_star <= coarse.p11_star);
    }
}

TEST_CASE("optimum ties go to the smaller amplitude") {
    auto m = default_model();
    m.gap01 = m.gap12 = m.gap03 = m.gap23 = 0; // p11 no longer depends on the amplitude
    const auto opt = optimal_amplitude_on(m, 0.05, kTwoPi * 0.005, Method::Ordinary, {1.0, 2.0, 3.0});
    CHECK(opt.phi_rf_star == 1.0);
    CHECK(opt.at_lower_edge);
}

TEST_CASE("fit ignores duplicated detunings") {
    const auto m = default_model();
    const double omega = kTwoPi * 0.005;
    const auto a = fit_amplitude_condition(m, {0.5, 1.0, 1.5}, omega, Method::Ordinary);
    const auto b = fit_amplitude_condition(m, {1.5, 0.5, 1.0, 1.0, 0.5}, omega, Method::Ordinary);
    CHECK(a.slope == b.slope);
    CHECK(a.intercept == b.intercept);
    CHECK(b.points.size() == 3);
    CHECK_THROWS_AS(fit_amplitude_condition(m, {1.0, 1.0, 2.0}, omega, Method::Ordinary), Error);
}

TEST_CASE("fit_line is exact on a line") {
    std::vector<AmplitudeFitPoint> pts;
    for (double x : {0.0, 1.0, 2.0, 3.0}) pts.push_back({x, 8.4 - x, 0.1, 0, true});
    const auto f = fit_line(pts);
    CHECK(f.slope == doctest::Approx(-1.0));
    CHECK(f.intercept == doctest::Approx(8.4));
    CHECK(f.max_residual < 1e-12);
}

TEST_CASE("10 MHz cools better than 5 MHz at 0.5 mPhi0 detuning") {
    const auto m = default_model();
    const SweepPoint p5{0.5, 8.4, kTwoPi * 0.005, m.gamma2};
    const SweepPoint p10{0.5, 8.4, kTwoPi * 0.010, m.gamma2};
    CHECK(population_p11(m, p10, Method::Ordinary) < population_p11(m, p5, Method::Ordinary));
}

TEST_CASE("strong decoherence: ordinary optimum stays near equilibrium") {
    auto m = default_model();
    m.gamma2 = kTwoPi * 1.0;
    const auto opt = optimal_amplitude_default(m, 0.05, kTwoPi * 0.005, Method::Ordinary);
    CHECK(opt.p11_star >= 0.8 * equilibrium_p11(m, 0.05));
}

TEST_CASE("incoherent frequency limit") {
    const auto m = default_model();
    CHECK(incoherent_frequency_limit(m, kTwoPi * 0.05) == doctest::Approx(kTwoPi * 0.05 + m.gamma20 / 2));
}
