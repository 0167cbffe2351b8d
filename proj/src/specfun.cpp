#include "fluxcool/specfun.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "fluxcool/error.hpp"

namespace fluxcool {

namespace {

constexpr double kRescaleAbove = 1e200;
constexpr double kRescaleBy = 1e-200;

} // namespace

int min_bessel_order(double x) {
    const double cx = std::ceil(x);
    const double cr = std::ceil(std::cbrt(x));
    return static_cast<int>(cx + 12.0 * cr + 20.0);
}

BesselTable bessel_j_array(double x, int n_max) {
    if (!std::isfinite(x) || x < 0.0) {
        throw Error(ErrorKind::Domain, "bessel_j_array: x must be finite and >= 0");
    }
    if (n_max < 1) {
        throw Error(ErrorKind::Domain, "bessel_j_array: n_max must be >= 1");
    }
    BesselTable table;
    table.x = x;
    table.n_max = std::max(n_max, min_bessel_order(x));
    table.values.assign(static_cast<std::size_t>(table.n_max) + 1, 0.0);
    if (x == 0.0) {
        table.values[0] = 1.0;
        return table;
    }

    // Start far enough above the turning point that the seed error has
    // decayed below double precision by the time n_max is reached.
    const int start = table.n_max + 20 + static_cast<int>(std::ceil(std::cbrt(x)));
    std::vector<double>& v = table.values;
    double upper = 0.0;  // J_{n+1}
    double current = 1e-30; // J_n, n = start
    const double two_over_x = 2.0 / x;
    for (int n = start; n > 0; --n) {
        const double lower = n * two_over_x * current - upper;
        upper = current;
        current = lower;
        if (n - 1 <= table.n_max) v[static_cast<std::size_t>(n - 1)] = current;
        if (n <= table.n_max) v[static_cast<std::size_t>(n)] = upper;
        if (std::abs(current) > kRescaleAbove) {
            current *= kRescaleBy;
            upper *= kRescaleBy;
            for (int k = n - 1; k <= table.n_max; ++k) {
                v[static_cast<std::size_t>(k)] *= kRescaleBy;
            }
        }
    }

    // Magnitude from the sum of squares, sign from J_0 + 2 sum J_{2k} = 1.
    long double squares = static_cast<long double>(v[0]) * v[0];
    long double even_sum = v[0];
    for (int n = 1; n <= table.n_max; ++n) {
        const long double t = v[static_cast<std::size_t>(n)];
        squares += 2.0L * t * t;
        if (n % 2 == 0) even_sum += 2.0L * t;
    }
    double scale = static_cast<double>(1.0L / std::sqrt(squares));
    if (even_sum < 0) scale = -scale;
    for (double& value : v) value *= scale;
    return table;
}

BesselCache::BesselCache(std::size_t capacity) : capacity_(capacity == 0 ? 1 : capacity) {}

std::shared_ptr<const BesselTable> BesselCache::get(double x) {
    const auto key = std::bit_cast<std::uint64_t>(x);
    {
        std::lock_guard lock(mutex_);
        if (auto it = index_.find(key); it != index_.end()) {
            order_.splice(order_.begin(), order_, it->second);
            ++hits_;
            return it->second->second;
        }
        ++misses_;
    }
    // Computed outside the lock; a concurrent miss on the same key produces
    // an identical table, so whichever insert wins is fine.
    auto table = std::make_shared<const BesselTable>(bessel_j_array(x, 1));
    std::lock_guard lock(mutex_);
    if (auto it = index_.find(key); it != index_.end()) {
        order_.splice(order_.begin(), order_, it->second);
        return it->second->second;
    }
    order_.emplace_front(key, table);
    index_[key] = order_.begin();
    while (order_.size() > capacity_) {
        index_.erase(order_.back().first);
        order_.pop_back();
    }
    return table;
}

std::size_t BesselCache::size() const {
    std::lock_guard lock(mutex_);
    return order_.size();
}

std::size_t BesselCache::hits() const {
    std::lock_guard lock(mutex_);
    return hits_;
}

std::size_t BesselCache::misses() const {
    std::lock_guard lock(mutex_);
    return misses_;
}

void BesselCache::clear() {
    std::lock_guard lock(mutex_);
    order_.clear();
    index_.clear();
    hits_ = 0;
    misses_ = 0;
}

BesselCache& BesselCache::shared() {
    static BesselCache cache(64);
    return cache;
}

namespace {

constexpr double kAiryAtZero = 0.355028053887817239260063186004;
constexpr double kMinusAiryPrimeAtZero = 0.258819403792806798405183560189;

// Series is used on [kSeriesLow, kSeriesHigh]; it is summed in long double
// so cancellation on the oscillatory side stays below 1e-12.
constexpr double kSeriesLow = -8.0;
constexpr double kSeriesHigh = 5.0;

double airy_series(double z) {
    const long double z3 = static_cast<long double>(z) * z * z;
    long double f_term = 1.0L;
    long double g_term = z;
    long double f = f_term;
    long double g = g_term;
    for (int k = 0; k < 200; ++k) {
        const long double a = 3.0L * k;
        f_term *= z3 / ((a + 2.0L) * (a + 3.0L));
        g_term *= z3 / ((a + 3.0L) * (a + 4.0L));
        f += f_term;
        g += g_term;
        if (std::abs(f_term) < 1e-21L * std::abs(f) && std::abs(g_term) < 1e-21L * std::abs(g) + 1e-300L) {
            break;
        }
    }
    return static_cast<double>(kAiryAtZero * f - kMinusAiryPrimeAtZero * g);
}

// u_k coefficients of the Airy asymptotic expansion.
double next_u(double u_prev, int k) {
    const double kk = k;
    return u_prev * (6.0 * kk - 5.0) * (6.0 * kk - 3.0) * (6.0 * kk - 1.0) /
           ((2.0 * kk - 1.0) * 216.0 * kk);
}

double airy_positive_tail(double z) {
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    double sum = 1.0;
    double u = 1.0;
    double zeta_pow = 1.0;
    double last = 1.0;
    for (int k = 1; k < 60; ++k) {
        u = next_u(u, k);
        zeta_pow *= zeta;
        const double term = u / zeta_pow;
        if (term > last) break; // asymptotic series starts diverging
        sum += (k % 2 ? -term : term);
        last = term;
        if (term < 1e-17) break;
    }
    return std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi) * std::sqrt(std::sqrt(z))) * sum;
}

double airy_negative_tail(double z) {
    const double x = -z;
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    double p = 1.0; // even u terms
    double q = 0.0; // odd u terms
    double u = 1.0;
    double zeta_pow = 1.0;
    double last = 1.0;
    for (int k = 1; k < 60; ++k) {
        u = next_u(u, k);
        zeta_pow *= zeta;
        const double term = u / zeta_pow;
        if (term > last) break;
        last = term;
        // k odd -> q gets (-1)^((k-1)/2) u_k/zeta^k; k even -> p gets (-1)^(k/2)
        if (k % 2 == 1) {
            q += ((k / 2) % 2 ? -term : term);
        } else {
            p += ((k / 2) % 2 ? -term : term);
        }
        if (term < 1e-17) break;
    }
    const double phase = zeta + std::numbers::pi / 4.0;
    return (std::sin(phase) * p - std::cos(phase) * q) /
           (std::sqrt(std::numbers::pi) * std::sqrt(std::sqrt(x)));
}

} // namespace

double airy_ai(double z) {
    if (!std::isfinite(z)) {
        throw Error(ErrorKind::Domain, "airy_ai: argument must be finite");
    }
    if (z > kSeriesHigh) {
        if (z > 110.0) return 0.0; // below the smallest normal double
        return airy_positive_tail(z);
    }
    if (z < kSeriesLow) return airy_negative_tail(z);
    return airy_series(z);
}

} // namespace fluxcool
