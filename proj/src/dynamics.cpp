#include "fluxcool/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "fluxcool/error.hpp"

namespace fluxcool {

namespace {

constexpr double kPivotTolerance = 1e-13;
constexpr double kClampTolerance = 1e-12;

using Matrix4 = std::array<std::array<double, 4>, 4>;

// Closed communicating classes of the chain defined by the off-diagonal
// entries (g[to][from] > 0 is a transition from -> to).
std::vector<std::vector<int>> closed_classes(const GeneratorMatrix& gen) {
    bool reach[4][4] = {};
    for (int i = 0; i < 4; ++i) {
        reach[i][i] = true;
        for (int j = 0; j < 4; ++j) {
            if (i != j && gen(j, i) > 0.0) reach[i][j] = true;
        }
    }
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;

    std::vector<std::vector<int>> classes;
    bool seen[4] = {};
    for (int i = 0; i < 4; ++i) {
        if (seen[i]) continue;
        std::vector<int> cls;
        for (int j = 0; j < 4; ++j) {
            if (reach[i][j] && reach[j][i]) {
                cls.push_back(j);
                seen[j] = true;
            }
        }
        bool closed = true;
        for (int a : cls)
            for (int b = 0; b < 4; ++b)
                if (reach[a][b] && std::find(cls.begin(), cls.end(), b) == cls.end()) closed = false;
        if (closed) classes.push_back(cls);
    }
    return classes;
}

[[noreturn]] void throw_degenerate(const GeneratorMatrix& gen) {
    std::ostringstream msg;
    msg << "degenerate chain: no unique stationary state; closed classes";
    for (const auto& cls : closed_classes(gen)) {
        msg << " {";
        for (std::size_t k = 0; k < cls.size(); ++k) msg << (k ? "," : "") << cls[k];
        msg << "}";
    }
    throw Error(ErrorKind::DegenerateChain, msg.str());
}

} // namespace

SteadyState steady_state(const GeneratorMatrix& gen, double eps10) {
    for (const auto& row : gen.g)
        for (double v : row)
            if (!std::isfinite(v)) throw Error(ErrorKind::Domain, "generator has non-finite entries");
    if (closed_classes(gen).size() != 1) throw_degenerate(gen);

    // Replace the equation with the largest diagonal by the normalisation.
    int replaced = 0;
    for (int k = 1; k < 4; ++k) {
        if (std::abs(gen(k, k)) > std::abs(gen(replaced, replaced))) replaced = k;
    }
    Matrix4 a = gen.g;
    std::array<double, 4> b{};
    for (int c = 0; c < 4; ++c) a[replaced][c] = 1.0;
    b[replaced] = 1.0;

    const double scale = std::max(1.0, gen.max_abs());
    std::array<int, 4> perm{0, 1, 2, 3};
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::abs(a[perm[r]][col]) > std::abs(a[perm[pivot]][col])) pivot = r;
        }
        std::swap(perm[col], perm[pivot]);
        const double p = a[perm[col]][col];
        if (std::abs(p) < kPivotTolerance * scale) throw_degenerate(gen);
        for (int r = col + 1; r < 4; ++r) {
            const double f = a[perm[r]][col] / p;
            if (f == 0.0) continue;
            for (int c = col; c < 4; ++c) a[perm[r]][c] -= f * a[perm[col]][c];
            b[perm[r]] -= f * b[perm[col]];
        }
    }
    Populations x{};
    for (int col = 3; col >= 0; --col) {
        double s = b[perm[col]];
        for (int c = col + 1; c < 4; ++c) s -= a[perm[col]][c] * x[c];
        x[col] = s / a[perm[col]][col];
    }

    double total = 0.0;
    for (double& v : x) {
        if (v < -kClampTolerance) {
            throw Error(ErrorKind::DegenerateChain, "stationary solve produced a negative population");
        }
        v = std::max(v, 0.0);
        total += v;
    }
    for (double& v : x) v /= total;

    SteadyState s;
    s.p = x;
    for (int r = 0; r < 4; ++r) {
        double acc = 0.0;
        for (int c = 0; c < 4; ++c) acc += gen(r, c) * x[c];
        s.residual = std::max(s.residual, std::abs(acc));
    }
    if (x[0] > 0.0 && x[1] > 0.0 && x[0] < 1.0 && x[1] < 1.0) {
        s.t_eff = effective_temperature(x[1], x[0], eps10);
    }
    return s;
}

Populations time_evolve(const GeneratorMatrix& gen, const Populations& p0, double t_final,
                        double dt) {
    if (!(dt > 0.0) || !(t_final >= 0.0)) {
        throw Error(ErrorKind::Domain, "time_evolve: dt must be > 0 and t_final >= 0");
    }
    double max_diag = 0.0;
    for (int k = 0; k < 4; ++k) max_diag = std::max(max_diag, std::abs(gen(k, k)));
    if (dt * max_diag >= 0.1) {
        throw Error(ErrorKind::Domain, "time_evolve: step too large for the generator");
    }
    auto rhs = [&](const Populations& p) {
        Populations d{};
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) d[r] += gen(r, c) * p[c];
        return d;
    };
    auto axpy = [](const Populations& p, const Populations& k, double h) {
        Populations out;
        for (int i = 0; i < 4; ++i) out[i] = p[i] + h * k[i];
        return out;
    };
    Populations p = p0;
    const auto steps = static_cast<long long>(std::ceil(t_final / dt));
    const double h = steps > 0 ? t_final / static_cast<double>(steps) : 0.0;
    for (long long s = 0; s < steps; ++s) {
        const Populations k1 = rhs(p);
        const Populations k2 = rhs(axpy(p, k1, 0.5 * h));
        const Populations k3 = rhs(axpy(p, k2, 0.5 * h));
        const Populations k4 = rhs(axpy(p, k3, h));
        for (int i = 0; i < 4; ++i) p[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return p;
}

std::optional<double> effective_temperature(double p11, double p00, double eps10) {
    if (!(p11 > 0.0 && p11 < 1.0 && p00 > 0.0 && p00 < 1.0)) {
        throw Error(ErrorKind::Domain, "effective_temperature: populations must lie in (0, 1)");
    }
    if (p00 == p11 || eps10 == 0.0) return std::nullopt;
    return eps10 / std::log(p00 / p11);
}

double reduced_p11_with_backflow(double w12, double w03, double g10, double g01) {
    const double den = g10 + g01 + w12 + w03;
    if (!(den > 0.0) || w12 < 0 || w03 < 0 || g10 < 0 || g01 < 0) {
        throw Error(ErrorKind::Domain, "reduced p11: rates must be >= 0 with a positive sum");
    }
    return (g01 + w03) / den;
}

double reduced_p11_one_sided(double w12, double g10, double g01_new) {
    return reduced_p11_with_backflow(w12, 0.0, g10, g01_new);
}

double equilibrium_p11(const FluxQubitModel& model, double detuning_dc) {
    const double ratio = std::exp(-(model.m0 + model.m1) * detuning_dc / model.temperature);
    return ratio / (1.0 + ratio);
}

} // namespace fluxcool
