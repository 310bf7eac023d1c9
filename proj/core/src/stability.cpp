#include "hbeam/stability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hbeam/common.hpp"

namespace hbeam {

namespace {

void require_ordered(double lambda, double nu) {
    if (!(lambda > 0.0 && nu > lambda))
        throw std::invalid_argument("mode pair needs 0 < lambda < nu");
}

double agm(double a, double b) {
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
        double m = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = m;
    }
    return 0.5 * (a + b);
}

using State6 = std::array<double, 6>;

State6 hill_rhs(const State6& y, double lambda, double nu) {
    const double w2 = y[0] * y[0];
    const double q = nu + w2;
    return {y[1], -lambda * y[0] - w2 * y[0], y[3], -q * y[2], y[5], -q * y[4]};
}

template <class State, class F>
State rk4_step(const State& y, double h, F&& f) {
    auto axpy = [](const State& a, const State& b, double s) {
        State r;
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
        return r;
    };
    State k1 = f(y);
    State k2 = f(axpy(y, k1, 0.5 * h));
    State k3 = f(axpy(y, k2, 0.5 * h));
    State k4 = f(axpy(y, k3, h));
    State r;
    for (std::size_t i = 0; i < y.size(); ++i)
        r[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return r;
}

double half_period_trace(double lambda, double nu, double zeta, double half, std::size_t n) {
    State6 y{zeta, 0.0, 1.0, 0.0, 0.0, 1.0};
    const double h = half / static_cast<double>(n);
    auto f = [&](const State6& s) { return hill_rhs(s, lambda, nu); };
    for (std::size_t i = 0; i < n; ++i) y = rk4_step(y, h, f);
    return y[2] + y[5];
}

}  // namespace

double critical_amplitude(double lambda, double nu) {
    require_ordered(lambda, nu);
    return std::sqrt(2.0 * (nu - lambda));
}

double critical_energy(double lambda, double nu) {
    require_ordered(lambda, nu);
    const double e = (nu / lambda - 1.0) * lambda * nu;
    const double d2 = 2.0 * (nu - lambda);
    const double alt = 0.5 * lambda * d2 + 0.25 * d2 * d2;
    // Relative agreement to 1e-12, widened by the condition number of nu/lambda - 1.
    const double cond = 1.0 + nu / (nu - lambda);
    if (std::abs(e - alt) > 1e-12 * cond * std::abs(alt))
        throw NumericalError("critical energy forms disagree");
    return e;
}

StabilityReport threshold(std::span<const double> eigenvalues) {
    if (eigenvalues.size() < threshold_modes)
        throw std::invalid_argument("threshold needs at least 12 eigenvalues");
    StabilityReport r{};
    for (std::size_t j = 0; j + 1 < threshold_modes; ++j) {
        const double l = eigenvalues[j];
        const double n = eigenvalues[j + 1];
        if (!(n > l)) throw NumericalError("eigenvalues are not strictly increasing");
        r.pairs.push_back({j + 1, l, n, critical_amplitude(l, n), critical_energy(l, n), n / l});
    }
    r.argmin = 0;
    for (std::size_t k = 1; k < r.pairs.size(); ++k)
        if (r.pairs[k].energy < r.pairs[r.argmin].energy) r.argmin = k;
    r.energy_threshold = r.pairs[r.argmin].energy;
    for (std::size_t k = 0; k < r.pairs.size(); ++k) {
        if (k == r.argmin) continue;
        if (r.pairs[k].energy < 1.01 * r.energy_threshold &&
            (!r.near_tie || r.pairs[k].energy < r.pairs[*r.near_tie].energy))
            r.near_tie = k;
    }
    return r;
}

double duffing_period(double lambda, double zeta) {
    if (!(lambda > 0.0) || !(zeta >= 0.0))
        throw std::invalid_argument("duffing_period needs lambda > 0 and zeta >= 0");
    const double b = std::sqrt(lambda + zeta * zeta);
    const double gamma = zeta / (b * std::sqrt(2.0));
    const double K = pi / (2.0 * agm(1.0, std::sqrt(1.0 - gamma * gamma)));
    return 4.0 / b * K;
}

std::vector<double> duffing_orbit(double lambda, double zeta, std::span<const double> t_grid) {
    std::vector<double> out(t_grid.size(), 0.0);
    if (zeta == 0.0) {
        (void)duffing_period(lambda, zeta);
        return out;
    }
    const double T = duffing_period(lambda, zeta);
    const double hmax = T / 4096.0;
    using State2 = std::array<double, 2>;
    auto f = [&](const State2& y) { return State2{y[1], -lambda * y[0] - y[0] * y[0] * y[0]}; };
    auto energy = [&](const State2& y) {
        return 0.5 * y[1] * y[1] + 0.5 * lambda * y[0] * y[0] + 0.25 * y[0] * y[0] * y[0] * y[0];
    };
    State2 y{zeta, 0.0};
    const double e0 = energy(y);
    double t = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double target = t_grid[i];
        if (target < t) throw std::invalid_argument("time grid must be nondecreasing and >= 0");
        const double span = target - t;
        const auto n = static_cast<std::size_t>(std::ceil(span / hmax));
        for (std::size_t s = 0; s < n; ++s) y = rk4_step(y, span / static_cast<double>(n), f);
        t = target;
        out[i] = y[0];
    }
    const double periods = std::max(1.0, t / T);
    if (std::abs(energy(y) - e0) > 1e-10 * e0 * periods)
        throw NumericalError("Duffing orbit energy drift exceeded");
    return out;
}

const char* to_string(HillClass c) {
    switch (c) {
        case HillClass::stable: return "stable";
        case HillClass::unstable: return "unstable";
        default: return "marginal";
    }
}

HillResult hill_monodromy(double lambda, double nu, double zeta) {
    if (!(lambda > 0.0 && nu > 0.0 && zeta > 0.0))
        throw std::invalid_argument("hill_monodromy needs lambda, nu, zeta > 0");
    const double half = 0.5 * duffing_period(lambda, zeta);
    std::size_t n = 4096;
    double tr = half_period_trace(lambda, nu, zeta, half, n);
    for (;;) {
        if (n > (std::size_t{1} << 22)) throw NumericalError("monodromy trace did not converge");
        n *= 2;
        double refined = half_period_trace(lambda, nu, zeta, half, n);
        bool done = std::abs(refined - tr) < 1e-8;
        tr = refined;
        if (done) break;
    }
    HillResult r{tr, tr * tr - 2.0, HillClass::marginal, n};
    const double excess = std::abs(tr) - 2.0;
    if (excess > marginal_band)
        r.classification = HillClass::unstable;
    else if (excess < -marginal_band)
        r.classification = HillClass::stable;
    return r;
}

HillClass classify_analytic(double lambda, double nu, double zeta) {
    if (lambda == nu) throw std::invalid_argument("classify_analytic needs lambda != nu");
    if (!(lambda > 0.0 && nu > 0.0 && zeta > 0.0))
        throw std::invalid_argument("classify_analytic needs lambda, nu, zeta > 0");
    if (lambda > nu) return HillClass::stable;
    return zeta <= std::sqrt(2.0 * (nu - lambda)) ? HillClass::stable : HillClass::unstable;
}

}  // namespace hbeam
