#include "hbeam/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hbeam/parallel.hpp"

namespace hbeam {

GProfile g_profile(const WeightedSpectrum& spectrum, std::size_t pair) {
    if (pair < 1 || pair + 1 > spectrum.modes.size())
        throw std::out_of_range("g_profile: pair index out of range");
    const double ratio = spectrum.modes[pair].lambda / spectrum.modes[pair - 1].lambda;
    const Eigen::VectorXd lo = spectrum.sampled(pair);
    const Eigen::VectorXd hi = spectrum.sampled(pair + 1);

    GProfile p;
    p.x = profile_grid();
    p.g.resize(p.x.size());
    for (std::size_t i = 0; i < p.x.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        p.g[i] = ratio * (lo(k) * lo(k) - hi(k) * hi(k));
    }
    p.pair = pair;
    p.lower_parity = spectrum.modes[pair - 1].parity;
    p.upper_parity = spectrum.modes[pair].parity;
    auto exact = [&](double x) {
        double u = spectrum.eval(pair, x);
        double v = spectrum.eval(pair + 1, x);
        return ratio * (u * u - v * v);
    };
    p.at_zero = exact(0.0);
    p.at_pier = exact(spectrum.layout.pier());
    p.at_end = exact(pi);
    return p;
}

LevelSet superlevel_set(const GProfile& profile, double t) {
    const auto& x = profile.x;
    const auto& g = profile.g;
    LevelSet out{t, {}, 0.0};
    bool inside = g[0] >= t;
    double start = x[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double f0 = g[i - 1] - t;
        const double f1 = g[i] - t;
        if ((f0 >= 0.0) == (f1 >= 0.0)) continue;
        const double xc = x[i - 1] + (x[i] - x[i - 1]) * f0 / (f0 - f1);
        if (f1 >= 0.0) {
            start = xc;
        } else {
            out.heavy_set.push_back({start, xc});
        }
        inside = f1 >= 0.0;
    }
    if (inside) out.heavy_set.push_back({start, x.back()});
    for (const auto& iv : out.heavy_set) out.measure += iv.length();
    return out;
}

LevelSet level_threshold_measure(const GProfile& profile, double target) {
    if (!(target > 0.0)) throw std::invalid_argument("target measure must be positive");
    const auto [mn, mx] = std::minmax_element(profile.g.begin(), profile.g.end());
    if (target >= pi) return LevelSet{*mn, {{0.0, pi}}, pi};

    double lo = *mn;
    double hi = *mx;
    LevelSet best = superlevel_set(profile, lo);
    for (int it = 0; it < 200; ++it) {
        const double t = 0.5 * (lo + hi);
        if (t <= lo || t >= hi) break;
        LevelSet s = superlevel_set(profile, t);
        if (std::abs(s.measure - target) < std::abs(best.measure - target)) best = s;
        if (std::abs(s.measure - target) < 1e-13) break;
        if (s.measure > target)
            lo = t;
        else
            hi = t;
    }
    if (std::abs(best.measure - target) > level_measure_tolerance) {
        std::ostringstream os;
        os.precision(12);
        os << "no level of g has superlevel measure " << target << " (closest " << best.measure
           << " at t = " << best.t << "); g has a plateau at the critical level";
        throw PlateauError(os.str());
    }
    return best;
}

LevelSet level_threshold(const GProfile& profile, double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 1.0 && beta > 1.0))
        throw std::invalid_argument("level_threshold needs 0 < alpha < 1 < beta");
    return level_threshold_measure(profile, heavy_half_measure(alpha, beta));
}

namespace {

Density next_iterate(const WeightedSpectrum& spec, const StabilityReport& rep, double alpha,
                     double beta, GProfile* profile_out) {
    GProfile profile = g_profile(spec, rep.minimizer().j);
    LevelSet level = level_threshold(profile, alpha, beta);
    Density next = from_indicator(alpha, beta, level.heavy_set, level_measure_tolerance);
    if (profile_out) *profile_out = std::move(profile);
    return next;
}

bool same_layout(const Density& p, const Density& q, double tol) {
    if (p.values() != q.values()) return false;
    for (std::size_t i = 0; i < p.breakpoints().size(); ++i)
        if (std::abs(p.breakpoints()[i] - q.breakpoints()[i]) > tol) return false;
    return true;
}

}  // namespace

Density iterate_density(const Density& p, const PierLayout& layout, double alpha, double beta,
                        int N) {
    WeightedSpectrum spec = solve_weighted_spectrum(p, layout, N);
    StabilityReport rep = threshold(spec.eigenvalues());
    return next_iterate(spec, rep, alpha, beta, nullptr);
}

OptimizationResult optimize_density(const PierLayout& layout, double alpha, double beta,
                                    const OptimizerOptions& options) {
    auto basis = cached_basis(layout, options.N);
    std::vector<Density> seeds{Density::constant(alpha, beta)};
    const bool degenerate = alpha == 1.0 && beta == 1.0;
    if (!degenerate) {
        seeds.push_back(make_two_step(alpha, beta, Center::heavy));
        seeds.push_back(make_two_step(alpha, beta, Center::light));
    }

    OptimizationResult res{Density::constant(alpha, beta), 0.0, 0, 0, {}, {}};
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        Density p = seeds[s];
        for (int it = 0; it <= options.iterations; ++it) {
            try {
                WeightedSpectrum spec = solve_weighted_spectrum(p, basis);
                StabilityReport rep = threshold(spec.eigenvalues());
                IterateRecord rec{static_cast<int>(s), it, p, rep.energy_threshold,
                                  rep.minimizer().j};
                res.trace.push_back(rec);
                if (it == options.iterations || degenerate) {
                    if (options.on_iterate) options.on_iterate(rec, spec, rep, nullptr);
                    break;
                }
                GProfile profile;
                Density next = next_iterate(spec, rep, alpha, beta, &profile);
                if (options.on_iterate) options.on_iterate(rec, spec, rep, &profile);
                if (options.stop_at_fixed_point &&
                    same_layout(next, p, options.fixed_point_tolerance))
                    break;
                p = std::move(next);
            } catch (const NumericalError& e) {
                std::ostringstream os;
                os << "seed " << s << " iteration " << it << ": " << e.what();
                res.failures.push_back(os.str());
                break;
            }
        }
    }
    if (res.trace.empty()) {
        std::string msg = "no iterate could be evaluated";
        if (!res.failures.empty()) msg += ": " + res.failures.front();
        throw NumericalError(msg);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < res.trace.size(); ++i)
        if (res.trace[i].energy > res.trace[best].energy) best = i;
    res.best = res.trace[best].density;
    res.energy = res.trace[best].energy;
    res.jumps = res.best.jumps();
    res.pair = res.trace[best].pair;
    return res;
}

const char* to_string(SweepMode m) {
    switch (m) {
        case SweepMode::two_step_heavy: return "two-step-heavy";
        case SweepMode::two_step_light: return "two-step-light";
        default: return "optimize";
    }
}

const std::vector<double>& default_pier_grid() {
    static const std::vector<double> A{0.10, 0.20, 0.30, 0.35, 0.40, 0.45, 0.50,
                                       0.55, 0.60, 0.65, 0.70, 0.80, 0.90};
    return A;
}

const std::vector<double>& default_alpha_grid() {
    static const std::vector<double> s{5.0 / 6.0, 2.0 / 3.0, 1.0 / 2.0, 1.0 / 3.0};
    return s;
}

const std::vector<double>& default_beta_grid() {
    static const std::vector<double> s{1.5, 2.0, 2.5, 3.0};
    return s;
}

namespace {

SweepRow sweep_row(double alpha, double beta, double a, SweepMode mode,
                   const SweepOptions& options) {
    PierLayout layout(a);
    if (mode == SweepMode::full) {
        OptimizationResult r = optimize_density(layout, alpha, beta, options.optimizer);
        return {a, r.energy, r.pair, r.jumps, std::nullopt, r.best};
    }
    const Center c = mode == SweepMode::two_step_heavy ? Center::heavy : Center::light;
    Density p = make_two_step(alpha, beta, c);
    auto roots = find_eigenvalues(p, layout);
    if (options.on_two_step) options.on_two_step(p, layout, roots);
    std::vector<double> lambdas;
    for (const auto& r : roots) lambdas.push_back(r.lambda);
    StabilityReport rep = threshold(lambdas);
    return {a, rep.energy_threshold, rep.minimizer().j, p.jumps(), two_step_rho(alpha, beta, c), p};
}

std::size_t pick_best(const std::vector<SweepRow>& rows) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const auto& b = rows[best];
        if (r.energy > b.energy || (r.energy == b.energy && r.a < b.a)) best = i;
    }
    return best;
}

}  // namespace

SweepResult sweep_pier(double alpha, double beta, const std::vector<double>& A, SweepMode mode,
                       const SweepOptions& options) {
    auto cells = sweep_materials({alpha}, {beta}, A, mode, options);
    return std::move(cells.front());
}

std::vector<SweepResult> sweep_materials(const std::vector<double>& alphas,
                                         const std::vector<double>& betas,
                                         const std::vector<double>& A, SweepMode mode,
                                         const SweepOptions& options) {
    if (A.empty()) throw std::invalid_argument("pier grid is empty");
    if (alphas.empty() || betas.empty()) throw std::invalid_argument("material grid is empty");
    for (double a : A) PierLayout check(a);
    const std::size_t cells = alphas.size() * betas.size();
    std::vector<std::optional<SweepRow>> rows(cells * A.size());
    parallel_for(
        rows.size(),
        [&](std::size_t task) {
            const std::size_t cell = task / A.size();
            const double alpha = alphas[cell / betas.size()];
            const double beta = betas[cell % betas.size()];
            rows[task] = sweep_row(alpha, beta, A[task % A.size()], mode, options);
        },
        options.workers);

    std::vector<SweepResult> out;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        SweepResult r{alphas[cell / betas.size()], betas[cell % betas.size()], mode, {}, 0};
        for (std::size_t i = 0; i < A.size(); ++i) r.rows.push_back(std::move(*rows[cell * A.size() + i]));
        r.best = pick_best(r.rows);
        out.push_back(std::move(r));
    }
    return out;
}

std::size_t grand_optimum(const std::vector<SweepResult>& cells) {
    if (cells.empty()) throw std::invalid_argument("no cells");
    std::size_t best = 0;
    for (std::size_t i = 1; i < cells.size(); ++i)
        if (cells[i].optimum().energy > cells[best].optimum().energy) best = i;
    return best;
}

}  // namespace hbeam
