#include "doctest.h"

#include <cmath>
#include <limits>
#include <thread>

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "fluxcool/error.hpp"
#include "fluxcool/specfun.hpp"
#include "oracles.hpp"

using namespace fluxcool;

namespace {

long double sum_rule(const BesselTable& t) {
    long double s = 0;
    for (int n = 0; n <= t.n_max; ++n) s += (n ? 2.0L : 1.0L) * t[n] * t[n];
    return s;
}

} // namespace

TEST_CASE("J_n at zero argument") {
    const auto t = bessel_j_array(0.0, 5);
    CHECK(t[0] == 1.0);
    for (int n = 1; n <= t.n_max; ++n) CHECK(t[n] == 0.0);
}

TEST_CASE("J0(1) against the power series") {
    const long double ref = oracle::j0_series(1.0L);
    CHECK(std::fabs(static_cast<long double>(bessel_j_array(1.0, 1)[0]) - ref) < 1e-10L);
    CHECK(std::fabs(ref - 0.7651976866L) < 1e-10L);
}

TEST_CASE("table order covers the turning point") {
    for (double x : {0.1, 1.0, 50.0, 4250.0}) {
        const auto t = bessel_j_array(x, 1);
        CHECK(t.n_max >= std::ceil(x) + 12 * std::ceil(std::cbrt(x)) + 20);
        CHECK(t.n_max == min_bessel_order(x));
    }
    CHECK(bessel_j_array(3.0, 500).n_max == 500);
}

TEST_CASE("sum rule") {
    for (double x : {0.1, 1.0, 50.0, 4250.0}) {
        CAPTURE(x);
        CHECK(std::fabs(sum_rule(bessel_j_array(x, 1)) - 1.0L) < 1e-10L);
    }
}

TEST_CASE("agreement with Boost across orders") {
    for (double x : {0.7, 13.0, 333.3, 4250.0}) {
        const auto t = bessel_j_array(x, 1);
        double worst = 0;
        for (int n = 0; n <= t.n_max; n += 7)
            worst = std::max(worst, std::abs(t[n] - boost::math::cyl_bessel_j(n, x)));
        CAPTURE(x);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("three-term recurrence") {
    for (double x : {2.5, 50.0, 700.0}) {
        const auto t = bessel_j_array(x, 1);
        for (int n = 1; n < t.n_max - 1; n += 3) {
            const double jn = t[n];
            if (std::abs(jn) < 1e-3) continue; // stay away from zeros
            const double lhs = t[n - 1] + t[n + 1];
            const double rhs = 2.0 * n / x * jn;
            CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(rhs));
        }
    }
}

TEST_CASE("negative orders and beyond-table orders") {
    const auto t = bessel_j_array(10.0, 1);
    CHECK(t.squared(-4) == t.squared(4));
    CHECK(t.squared(t.n_max + 1) == 0.0);
}

TEST_CASE("bessel domain errors") {
    CHECK_THROWS_AS(bessel_j_array(-1.0, 5), Error);
    CHECK_THROWS_AS(bessel_j_array(std::numeric_limits<double>::infinity(), 5), Error);
    CHECK_THROWS_AS(bessel_j_array(std::nan(""), 5), Error);
    CHECK_THROWS_AS(bessel_j_array(1.0, 0), Error);
}

TEST_CASE("cache returns the uncached values, bounded by capacity") {
    BesselCache cache(4);
    for (int i = 0; i < 10; ++i) cache.get(1.0 + i);
    CHECK(cache.size() == 4);
    const auto a = cache.get(9.0);
    CHECK(cache.hits() == 1);
    const auto fresh = bessel_j_array(9.0, 1);
    CHECK(a->values == fresh.values);
    cache.get(2.0); // evicted long ago
    CHECK(cache.misses() == 11);
    cache.clear();
    CHECK(cache.size() == 0);
}

TEST_CASE("cache under concurrent access") {
    BesselCache cache(8);
    std::vector<std::thread> pool;
    std::vector<int> bad(8, 0);
    for (int t = 0; t < 8; ++t) {
        pool.emplace_back([&, t] {
            for (int i = 0; i < 200; ++i) {
                const double x = 5.0 + (i * 7 + t) % 13;
                const auto got = cache.get(x);
                if (got->values != bessel_j_array(x, 1).values) ++bad[t];
            }
        });
    }
    for (auto& th : pool) th.join();
    for (int b : bad) CHECK(b == 0);
}

TEST_CASE("Ai(0)") {
    const double ref = 1.0 / (std::pow(3.0, 2.0 / 3.0) * std::tgamma(2.0 / 3.0));
    CHECK(std::abs(airy_ai(0.0) - ref) < 1e-12);
    CHECK(std::abs(airy_ai(0.0) - 0.3550280539) < 1e-10);
}

TEST_CASE("Ai accuracy on [-20, 10]") {
    double worst = 0;
    for (double z = -20.0; z <= 10.0; z += 0.0137) worst = std::max(worst, std::abs(airy_ai(z) - boost::math::airy_ai(z)));
    CHECK(worst < 1e-9);
}

TEST_CASE("Ai decays on the right") {
    double prev = airy_ai(2.0);
    for (double z : {4.0, 6.0, 8.0}) {
        const double v = airy_ai(z);
        CHECK(v < prev);
        CHECK(v > 0.0);
        prev = v;
    }
    CHECK(airy_ai(200.0) == 0.0);
    CHECK_THROWS_AS(airy_ai(std::nan("")), Error);
}

TEST_CASE("uniform Airy form of J_n near the turning point") {
    const double x = 500.0;
    const auto t = bessel_j_array(x, 1);
    const double s = std::cbrt(2.0 / x);
    for (int n = 490; n <= 520; ++n) {
        const double approx = s * airy_ai(s * (n - x));
        if (std::abs(t[n]) < 1e-3) continue; // relative error is meaningless at a zero
        CAPTURE(n);
        CHECK(std::abs(approx - t[n]) <= 0.05 * std::abs(t[n]));
    }
}
