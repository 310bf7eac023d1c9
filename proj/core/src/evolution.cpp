#include "hbeam/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "hbeam/stability.hpp"

namespace hbeam {

ModalSystem ModalSystem::from_spectrum(const WeightedSpectrum& spec, std::size_t n) {
    if (n < 1 || n > spec.modes.size()) throw std::invalid_argument("mode count out of range");
    ModalSystem sys{Eigen::VectorXd(static_cast<Eigen::Index>(n))};
    for (std::size_t j = 0; j < n; ++j) sys.lambda(static_cast<Eigen::Index>(j)) = spec.modes[j].lambda;
    return sys;
}

ModalState project_initial(const WeightedSpectrum& spec, std::size_t n,
                           const std::function<double(double)>& g,
                           const std::function<double(double)>& h) {
    if (n < 1 || n > spec.modes.size()) throw std::invalid_argument("mode count out of range");
    std::vector<double> pts{0.0, spec.layout.pier(), pi};
    for (double b : spec.density.breakpoints()) pts.push_back(b);
    pts = merge_points(std::move(pts));
    std::vector<double> all;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) all.push_back(-*it);
    all.insert(all.end(), pts.begin() + 1, pts.end());

    using quad = boost::math::quadrature::gauss<double, 30>;
    const auto N = static_cast<Eigen::Index>(n);
    ModalState s{Eigen::VectorXd::Zero(N), Eigen::VectorXd::Zero(N), 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        double cg = 0.0;
        double ch = 0.0;
        for (std::size_t i = 0; i + 1 < all.size(); ++i) {
            const double u = all[i];
            const double v = all[i + 1];
            const double w = spec.density.eval(0.5 * (u + v));
            cg += w * quad::integrate([&](double x) { return g(x) * spec.eval(j + 1, x); }, u, v);
            ch += w * quad::integrate([&](double x) { return h(x) * spec.eval(j + 1, x); }, u, v);
        }
        s.c(static_cast<Eigen::Index>(j)) = cg;
        s.cdot(static_cast<Eigen::Index>(j)) = ch;
    }
    return s;
}

ModalState project_initial(std::span<const double> g_weights, std::span<const double> h_weights,
                           std::size_t n) {
    if (g_weights.size() > n || h_weights.size() > n)
        throw std::invalid_argument("more weights than modes");
    const auto N = static_cast<Eigen::Index>(n);
    ModalState s{Eigen::VectorXd::Zero(N), Eigen::VectorXd::Zero(N), 0.0};
    for (std::size_t j = 0; j < g_weights.size(); ++j) s.c(static_cast<Eigen::Index>(j)) = g_weights[j];
    for (std::size_t j = 0; j < h_weights.size(); ++j) s.cdot(static_cast<Eigen::Index>(j)) = h_weights[j];
    return s;
}

namespace {

Eigen::VectorXd acceleration(const ModalSystem& sys, const Eigen::VectorXd& c) {
    const double r2 = c.squaredNorm();
    return -(sys.lambda.array() * c.array() + r2 * c.array()).matrix();
}

}  // namespace

ModalRates step_rhs(const ModalSystem& sys, const ModalState& s) {
    return {s.cdot, acceleration(sys, s.c)};
}

double total_energy(const ModalSystem& sys, const ModalState& s) {
    const double r2 = s.c.squaredNorm();
    return 0.5 * s.cdot.squaredNorm() + 0.5 * (sys.lambda.array() * s.c.array().square()).sum() +
           0.25 * r2 * r2;
}

Eigen::VectorXd mode_energies(const ModalSystem& sys, const ModalState& s) {
    return (0.5 * s.cdot.array().square() + 0.5 * sys.lambda.array() * s.c.array().square())
        .matrix();
}

void yoshida_step(const ModalSystem& sys, ModalState& s, double dt) {
    static const double cbrt2 = std::cbrt(2.0);
    static const double w1 = 1.0 / (2.0 - cbrt2);
    static const double w0 = -cbrt2 / (2.0 - cbrt2);
    for (double w : {w1, w0, w1}) {
        const double h = w * dt;
        s.cdot += 0.5 * h * acceleration(sys, s.c);
        s.c += h * s.cdot;
        s.cdot += 0.5 * h * acceleration(sys, s.c);
    }
    s.t += dt;
}

double default_time_step(const ModalSystem& sys, const ModalState& s) {
    // Along any orbit sum c^2 <= 2 sqrt(E), so the cubic term stiffens each
    // mode to at most lambda + 6 sqrt(E).
    const double E = total_energy(sys, s);
    const double omega2 = sys.lambda.maxCoeff() + 6.0 * std::sqrt(std::max(E, 0.0));
    return 2.0 * pi / std::sqrt(omega2) / 512.0;
}

Trajectory simulate(const ModalSystem& sys, const ModalState& s0, double t_end, double dt,
                    const SimulateOptions& options) {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    if (!(t_end >= s0.t)) throw std::invalid_argument("t_end precedes the initial time");
    if (s0.c.size() != sys.size() || s0.cdot.size() != sys.size())
        throw std::invalid_argument("state dimension does not match the system");
    const std::size_t every = std::max<std::size_t>(1, options.record_every);

    Trajectory tr;
    ModalState s = s0;
    const double e0 = total_energy(sys, s);
    auto record = [&] {
        tr.t.push_back(s.t);
        tr.c.push_back(s.c);
        tr.cdot.push_back(s.cdot);
        tr.energy.push_back(total_energy(sys, s));
        tr.mode_energy.push_back(mode_energies(sys, s));
    };
    record();
    const auto steps = static_cast<std::size_t>(std::ceil((t_end - s0.t) / dt - 1e-9));
    const double scale = std::max(std::abs(e0), 1e-300);
    for (std::size_t i = 1; i <= steps; ++i) {
        yoshida_step(sys, s, dt);
        s.t = s0.t + static_cast<double>(i) * dt;
        const double drift = std::abs(total_energy(sys, s) - e0) / scale;
        tr.max_relative_drift = std::max(tr.max_relative_drift, e0 == 0.0 ? 0.0 : drift);
        const bool stop = options.stop && options.stop(s);
        if (i % every == 0 || i == steps || stop) record();
        if (stop) break;
    }
    tr.final_state = s;
    if (options.check_drift && tr.max_relative_drift > options.drift_tolerance) {
        std::ostringstream os;
        os << "relative energy drift " << tr.max_relative_drift << " exceeds "
           << options.drift_tolerance;
        throw NumericalError(os.str());
    }
    return tr;
}

BimodalResult bimodal_experiment(double lambda, double nu, double zeta, double z0,
                                 double periods) {
    if (!(lambda > 0.0 && nu > 0.0 && lambda != nu))
        throw std::invalid_argument("bimodal_experiment needs distinct positive eigenvalues");
    if (!(zeta > 0.0)) throw std::invalid_argument("prevailing amplitude must be positive");
    if (!(z0 >= 0.0 && z0 <= 1e-3 * zeta))
        throw std::invalid_argument("residual amplitude must satisfy 0 <= z0 <= 1e-3 zeta");
    if (!(periods > 0.0)) throw std::invalid_argument("periods must be positive");

    ModalSystem sys{Eigen::Vector2d(lambda, nu)};
    ModalState s0{Eigen::Vector2d(zeta, z0), Eigen::Vector2d::Zero(), 0.0};
    const double T = duffing_period(lambda, zeta);
    const double dt = default_time_step(sys, s0);

    auto fraction = [&](const ModalState& s) {
        const double ez = 0.5 * s.cdot(1) * s.cdot(1) + 0.5 * nu * s.c(1) * s.c(1);
        return ez / total_energy(sys, s);
    };
    BimodalResult r{};
    r.initial_fraction = fraction(s0);
    double peak = r.initial_fraction;
    double max_z = std::abs(z0);
    SimulateOptions opt;
    opt.record_every = std::numeric_limits<std::size_t>::max();
    opt.stop = [&](const ModalState& s) {
        peak = std::max(peak, fraction(s));
        max_z = std::max(max_z, std::abs(s.c(1)));
        return z0 > 0.0 && peak >= 10.0 * r.initial_fraction;
    };
    Trajectory tr = simulate(sys, s0, periods * T, dt, opt);
    r.transfer = peak;
    r.growth = r.initial_fraction > 0.0 ? peak / r.initial_fraction : 0.0;
    r.periods_run = tr.final_state.t / T;
    r.grew = z0 > 0.0 && peak >= 10.0 * r.initial_fraction;
    r.max_relative_drift = tr.max_relative_drift;
    r.max_abs_z = max_z;
    return r;
}

}  // namespace hbeam
