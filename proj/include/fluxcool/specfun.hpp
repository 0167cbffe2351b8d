#pragma once

#include <cstddef>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

namespace fluxcool {

/// J_n(x) for n = 0..n_max. Negative orders follow from J_{-n}^2 = J_n^2.
struct BesselTable {
    double x = 0;
    int n_max = 0;
    std::vector<double> values;

    double operator[](int n) const { return values[static_cast<std::size_t>(n)]; }

    /// J_n(x)^2 for any integer n; zero beyond the table.
    double squared(int n) const {
        const int k = n < 0 ? -n : n;
        if (k > n_max) return 0.0;
        const double v = values[static_cast<std::size_t>(k)];
        return v * v;
    }
};

/// Smallest table order that covers the turning-point region of J_n(x).
int min_bessel_order(double x);

/// Downward (Miller) recurrence normalised by the sum rule
/// J_0^2 + 2 sum J_n^2 = 1. The returned table has
/// n_max >= max(n_max, min_bessel_order(x)).
BesselTable bessel_j_array(double x, int n_max);

/// Bounded LRU cache of Bessel tables keyed on the exact bit pattern of x.
/// Thread safe; a hit returns the same values as a fresh computation.
class BesselCache {
public:
    explicit BesselCache(std::size_t capacity = 64);

    std::shared_ptr<const BesselTable> get(double x);

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const;
    std::size_t hits() const;
    std::size_t misses() const;
    void clear();

    /// Process-wide cache used by the rate formulas.
    static BesselCache& shared();

private:
    using Entry = std::pair<std::uint64_t, std::shared_ptr<const BesselTable>>;

    std::size_t capacity_;
    mutable std::mutex mutex_;
    std::list<Entry> order_; // front = most recent
    std::unordered_map<std::uint64_t, std::list<Entry>::iterator> index_;
    std::size_t hits_ = 0;
    std::size_t misses_ = 0;
};

/// Airy function Ai(z): power series near the origin, asymptotic expansions
/// on both tails.
double airy_ai(double z);

} // namespace fluxcool
