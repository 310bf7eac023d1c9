#include "hbeam_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hbeam/hbeam.hpp"
#include "hbeam_cli/reference.hpp"

namespace hbeam::cli {

namespace {

// Redirects to a file when a path is given, otherwise to the fallback stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot write " + path);
            os_ = &file_;
        }
        os_->precision(12);
    }
    std::ostream& operator*() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

std::string join_breakpoints(const Density& p) {
    std::ostringstream os;
    os.precision(12);
    for (std::size_t i = 0; i < p.breakpoints().size(); ++i) {
        if (i) os << ';';
        os << p.breakpoints()[i];
    }
    return os.str();
}

Density density_for(const RunConfig& c) {
    if (c.mode == "homogeneous") return Density::constant();
    if (c.mode == "two-step-heavy") return make_two_step(c.alpha, c.beta, Center::heavy);
    if (c.mode == "two-step-light") return make_two_step(c.alpha, c.beta, Center::light);
    if (c.mode == "optimize")
        return optimize_density(PierLayout(c.a), c.alpha, c.beta, {10, c.n, false, 1e-4, {}}).best;
    throw std::invalid_argument("unknown density mode " + c.mode);
}

void check_common(const RunConfig& c) {
    PierLayout check(c.a);
    if (c.n < 12) throw std::invalid_argument("truncation --n must be at least 12");
    if (c.mode != "homogeneous" && !(c.alpha > 0.0 && c.alpha < 1.0 && c.beta > 1.0))
        throw std::invalid_argument("densities need 0 < alpha < 1 < beta");
}

struct Spectrum {
    std::vector<double> lambda;
    std::vector<Parity> parity;
    std::vector<double> mu;
    std::vector<double> norm_error;
    std::optional<WeightedSpectrum> weighted;
};

Spectrum compute_spectrum(const RunConfig& c) {
    check_common(c);
    const Density p = density_for(c);
    const PierLayout layout(c.a);
    Spectrum s;
    const bool closed = c.solver == "closed-form" && c.mode != "optimize";
    if (c.solver != "closed-form" && c.solver != "galerkin")
        throw std::invalid_argument("unknown solver " + c.solver);
    if (closed) {
        auto roots = find_eigenvalues(p, layout);
        TwoStepParams q = p.is_homogeneous() ? TwoStepParams::homogeneous(c.a)
                                             : TwoStepParams::make(c.alpha, c.beta,
                                                                   c.mode == "two-step-heavy"
                                                                       ? Center::heavy
                                                                       : Center::light,
                                                                   c.a);
        for (const auto& r : roots) {
            auto e = eigenfunction_closed_form(r, q);
            s.lambda.push_back(r.lambda);
            s.parity.push_back(r.parity);
            s.mu.push_back(r.mu);
            s.norm_error.push_back(product_integral(e, 0, e, 0, &p) - 1.0);
        }
    } else {
        auto w = solve_weighted_spectrum(p, layout, c.n);
        for (const auto& m : w.modes) {
            Eigen::MatrixXd M = weighted_gram(p, *w.basis, m.parity);
            s.lambda.push_back(m.lambda);
            s.parity.push_back(m.parity);
            s.mu.push_back(std::pow(m.lambda, 0.25));
            s.norm_error.push_back(m.coeffs.dot(M * m.coeffs) - 1.0);
        }
        s.weighted = std::move(w);
    }
    return s;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
    Spectrum s = compute_spectrum(c);
    Sink sink(c.output, out);
    *sink << "index,parity,mu,lambda,norm_error\n";
    for (std::size_t i = 0; i < s.lambda.size(); ++i)
        *sink << i + 1 << ',' << to_string(s.parity[i]) << ',' << s.mu[i] << ',' << s.lambda[i]
              << ',' << s.norm_error[i] << '\n';
    return ok;
}

int cmd_threshold(const RunConfig& c, std::ostream& out, std::ostream& err) {
    Spectrum s = compute_spectrum(c);
    StabilityReport rep = threshold(s.lambda);
    Sink sink(c.output, out);
    *sink << "j,lambda,nu,ratio,amplitude,energy,minimizer\n";
    for (std::size_t k = 0; k < rep.pairs.size(); ++k) {
        const auto& r = rep.pairs[k];
        *sink << r.j << ',' << r.lambda << ',' << r.nu << ',' << r.ratio << ',' << r.amplitude
              << ',' << r.energy << ',' << (k == rep.argmin ? 1 : 0) << '\n';
    }
    err.precision(12);
    err << "threshold " << rep.energy_threshold << " attained by lambda_"
        << rep.minimizer().j + 1 << "/lambda_" << rep.minimizer().j << '\n';
    if (rep.near_tie) {
        const auto& t = rep.pairs[*rep.near_tie];
        err << "near tie: lambda_" << t.j + 1 << "/lambda_" << t.j << " gives " << t.energy
            << '\n';
    }
    return ok;
}

void write_sweep_rows(std::ostream& os, const std::vector<SweepResult>& cells, double unit) {
    os << "alpha,beta,a,energy,energy_scaled,ratio,jumps,rho,optimum,breakpoints\n";
    for (const auto& cell : cells) {
        for (std::size_t i = 0; i < cell.rows.size(); ++i) {
            const auto& r = cell.rows[i];
            os << cell.alpha << ',' << cell.beta << ',' << r.a << ',' << r.energy << ','
               << r.energy / unit << ',' << ratio_label(r.pair) << ',' << r.jumps << ',';
            if (r.rho) os << *r.rho;
            os << ',' << (i == cell.best ? 1 : 0) << ',' << join_breakpoints(r.best) << '\n';
        }
    }
}

void write_comparison(std::ostream& os, const ComparisonReport& rep) {
    os << "table,alpha,beta,a,quantity,computed,reference,deviation,gating,status\n";
    for (const auto& r : rep.rows) {
        os << r.table << ',' << r.alpha << ',' << r.beta << ',';
        if (!std::isnan(r.a)) os << r.a;
        os << ',' << r.quantity << ',' << r.computed << ',' << r.reference << ',';
        if (!std::isnan(r.deviation)) os << r.deviation;
        os << ',' << (r.gating ? 1 : 0) << ',' << (r.pass ? "pass" : "FAIL") << '\n';
    }
}

int cmd_reproduce(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const ReferenceData data = load_reference(c.data.empty() ? default_reference_path() : c.data);
    const ReferenceTable& ref = data.table(c.table);
    const std::vector<double>& A = c.a_grid.empty() ? default_pier_grid() : c.a_grid;
    SweepOptions opt;
    opt.workers = c.workers;
    opt.optimizer.N = c.n;

    std::vector<SweepResult> cells;
    ComparisonReport rep;
    switch (ref.kind) {
        case TableKind::two_step: {
            SweepMode m = ref.center == Center::heavy ? SweepMode::two_step_heavy
                                                      : SweepMode::two_step_light;
            cells = sweep_materials(default_alpha_grid(), default_beta_grid(), A, m, opt);
            rep = compare_two_step(ref, cells, data.energy_unit);
            break;
        }
        case TableKind::pier_profile: {
            std::vector<double> betas;
            for (const auto& col : ref.columns) betas.push_back(col.beta);
            cells = sweep_materials({ref.alpha}, betas, A, SweepMode::full, opt);
            rep = compare_profile(ref, cells, data.energy_unit);
            break;
        }
        case TableKind::optimized:
            cells = sweep_materials(default_alpha_grid(), default_beta_grid(), A, SweepMode::full,
                                    opt);
            rep = compare_optimized(ref, cells, data.energy_unit);
            break;
    }

    const std::filesystem::path dir = c.output.empty() ? "." : c.output;
    std::filesystem::create_directories(dir);
    {
        Sink s((dir / (ref.id + "_computed.csv")).string(), out);
        write_sweep_rows(*s, cells, data.energy_unit);
    }
    {
        Sink s((dir / (ref.id + "_comparison.csv")).string(), out);
        write_comparison(*s, rep);
    }
    out.precision(12);
    std::size_t gating = 0;
    for (const auto& r : rep.rows) gating += r.gating ? 1 : 0;
    out << ref.id << ": " << gating - rep.failures() << "/" << gating
        << " gated comparisons within tolerance (" << ref.provenance << ")\n";
    for (const auto& r : rep.rows)
        if (!r.pass)
            (r.gating ? err : out) << (r.gating ? "FAIL " : "note ") << r.quantity
                                   << " alpha=" << r.alpha << " beta=" << r.beta
                                   << (std::isnan(r.a) ? "" : " a=" + std::to_string(r.a))
                                   << " computed=" << r.computed << " reference=" << r.reference
                                   << '\n';
    if (ref.kind != TableKind::pier_profile) {
        const auto& g = cells[grand_optimum(cells)];
        out << "grand optimum alpha=" << g.alpha << " beta=" << g.beta << " a=" << g.a_opt()
            << " energy=" << g.optimum().energy << '\n';
    }
    return rep.all_pass() ? ok : numerical_failure;
}

int cmd_optimize(const RunConfig& c, std::ostream& out, std::ostream& err) {
    check_common(c);
    OptimizerOptions o;
    o.N = c.n;
    auto r = optimize_density(PierLayout(c.a), c.alpha, c.beta, o);
    Sink sink(c.output, out);
    *sink << "seed,iteration,energy,ratio,jumps,breakpoints\n";
    for (const auto& t : r.trace)
        *sink << t.seed << ',' << t.iteration << ',' << t.energy << ',' << ratio_label(t.pair)
              << ',' << t.density.jumps() << ',' << join_breakpoints(t.density) << '\n';
    err.precision(12);
    err << "best energy " << r.energy << " with " << r.jumps << " jumps, ratio "
        << ratio_label(r.pair) << '\n';
    for (const auto& f : r.failures) err << "iterate failure: " << f << '\n';
    return ok;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
    SweepMode m;
    if (c.mode == "two-step-heavy")
        m = SweepMode::two_step_heavy;
    else if (c.mode == "two-step-light")
        m = SweepMode::two_step_light;
    else if (c.mode == "optimize")
        m = SweepMode::full;
    else
        throw std::invalid_argument("sweep needs --mode two-step-heavy, two-step-light or optimize");
    if (!(c.alpha > 0.0 && c.alpha < 1.0 && c.beta > 1.0))
        throw std::invalid_argument("densities need 0 < alpha < 1 < beta");
    SweepOptions opt;
    opt.workers = c.workers;
    opt.optimizer.N = c.n;
    const std::vector<double>& A = c.a_grid.empty() ? default_pier_grid() : c.a_grid;
    auto cells = sweep_materials({c.alpha}, {c.beta}, A, m, opt);
    Sink sink(c.output, out);
    write_sweep_rows(*sink, cells, 100.0);
    err.precision(12);
    err << "a_opt " << cells[0].a_opt() << " energy " << cells[0].optimum().energy << '\n';
    return ok;
}

int cmd_simulate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.dt && !(*c.dt > 0.0)) throw std::invalid_argument("--dt must be positive");
    if (!(c.periods > 0.0)) throw std::invalid_argument("--periods must be positive");
    if (c.record_every < 1) throw std::invalid_argument("--record-every must be >= 1");
    if (!(c.zeta_rel > 0.0)) throw std::invalid_argument("--zeta-rel must be positive");
    if (!(c.z0_rel >= 0.0 && c.z0_rel <= 1e-3))
        throw std::invalid_argument("--z0-rel must lie in [0, 1e-3]");
    check_common(c);
    const Density p = density_for(c);
    const auto spec = solve_weighted_spectrum(p, PierLayout(c.a), c.n);
    if (c.modes < 2 || c.modes > 12) throw std::invalid_argument("--modes must lie in [2, 12]");
    const auto lambdas = spec.eigenvalues();
    const std::size_t j =
        c.pair > 0 ? static_cast<std::size_t>(c.pair) : threshold(lambdas).minimizer().j;
    if (j + 1 > static_cast<std::size_t>(c.modes))
        throw std::invalid_argument("--pair must leave room for the next mode within --modes");

    const auto n = static_cast<std::size_t>(c.modes);
    ModalSystem sys = ModalSystem::from_spectrum(spec, n);
    const double zeta = c.zeta_rel * critical_amplitude(lambdas[j - 1], lambdas[j]);
    std::vector<double> g(j + 1, 0.0);
    g[j - 1] = zeta;
    g[j] = c.z0_rel * zeta;
    ModalState s0 = project_initial(g, {}, n);
    const double T = duffing_period(lambdas[j - 1], zeta);
    const double dt = c.dt ? *c.dt : default_time_step(sys, s0);
    SimulateOptions so;
    so.record_every = static_cast<std::size_t>(c.record_every);
    so.check_drift = false;
    Trajectory tr = simulate(sys, s0, c.periods * T, dt, so);

    Sink sink(c.output, out);
    *sink << 't';
    for (std::size_t i = 1; i <= n; ++i) *sink << ",c_" << i;
    for (std::size_t i = 1; i <= n; ++i) *sink << ",cdot_" << i;
    *sink << ",E_total";
    for (std::size_t i = 1; i <= n; ++i) *sink << ",E_mode_" << i;
    *sink << '\n';
    double transfer = 0.0;
    for (std::size_t k = 0; k < tr.t.size(); ++k) {
        *sink << tr.t[k];
        for (auto v : tr.c[k]) *sink << ',' << v;
        for (auto v : tr.cdot[k]) *sink << ',' << v;
        *sink << ',' << tr.energy[k];
        for (auto v : tr.mode_energy[k]) *sink << ',' << v;
        *sink << '\n';
        transfer = std::max(transfer, tr.mode_energy[k](static_cast<Eigen::Index>(j)) / tr.energy[k]);
    }
    err.precision(12);
    err << "prevailing mode " << j << ", zeta " << zeta << ", period " << T << ", dt " << dt
        << ", relative drift " << tr.max_relative_drift << ", max residual fraction " << transfer
        << '\n';
    if (tr.max_relative_drift > 1e-6) {
        err << "energy drift exceeds 1e-6\n";
        return numerical_failure;
    }
    return ok;
}

void add_common(CLI::App* sub, RunConfig& c) {
    sub->add_option("--alpha", c.alpha, "lower density bound");
    sub->add_option("--beta", c.beta, "upper density bound");
    sub->add_option("--a", c.a, "pier position parameter in (0, 1)");
    sub->add_option("--mode", c.mode, "homogeneous | two-step-heavy | two-step-light | optimize");
    sub->add_option("--n", c.n, "basis size per parity");
    sub->add_option("--output,-o", c.output, "output file (directory for reproduce)");
    sub->add_option("--workers", c.workers, "worker threads (default HBEAM_WORKERS)");
    sub->add_option("--config", "key = value file; its entries override flags");
}

// Pulls --config out of the arguments and appends its entries so they win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    CLI::ConfigTOML parser;
    for (const auto& item : parser.from_config(in)) {
        if (item.name == "--" || item.name.empty()) continue;
        std::string key = item.fullname();
        std::replace(key.begin(), key.end(), '_', '-');
        if (key == "config") continue;
        args.push_back("--" + key);
        for (const auto& v : item.inputs) args.push_back(v);
    }
    return args;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Spectra, stability thresholds and density optimization for hinged beams"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    auto* spectrum = app.add_subcommand("spectrum", "first 12 eigenvalues");
    add_common(spectrum, c);
    spectrum->add_option("--solver", c.solver, "closed-form | galerkin");

    auto* thr = app.add_subcommand("threshold", "critical energies of consecutive mode pairs");
    add_common(thr, c);
    thr->add_option("--solver", c.solver, "closed-form | galerkin");

    auto* rep = app.add_subcommand("reproduce", "regenerate a reference table and compare");
    add_common(rep, c);
    rep->add_option("--table", c.table, "T1 | T2 | T3 | T4 | T5")->required();
    rep->add_option("--data", c.data, "reference value file");
    rep->add_option("--a-grid", c.a_grid, "pier grid override")->multi_option_policy(
        CLI::MultiOptionPolicy::TakeAll);

    auto* opt = app.add_subcommand("optimize", "iterative density optimization at one pier");
    add_common(opt, c);

    auto* sw = app.add_subcommand("sweep", "threshold against pier position");
    add_common(sw, c);
    sw->add_option("--a-grid", c.a_grid, "pier grid override")->multi_option_policy(
        CLI::MultiOptionPolicy::TakeAll);

    auto* sim = app.add_subcommand("simulate", "modal time integration");
    add_common(sim, c);
    sim->add_option("--modes", c.modes, "number of modes kept");
    sim->add_option("--pair", c.pair, "prevailing mode index (default: minimizing pair)");
    sim->add_option("--zeta-rel", c.zeta_rel, "prevailing amplitude relative to the critical one");
    sim->add_option("--z0-rel", c.z0_rel, "residual amplitude relative to the prevailing one");
    sim->add_option("--periods", c.periods, "duration in prevailing Duffing periods");
    sim->add_option("--dt", c.dt, "time step (default: shortest period / 512)");
    sim->add_option("--record-every", c.record_every, "output every k-th step");

    try {
        std::vector<std::string> args = expand_config(raw_args);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    }

    try {
        if (c.workers > 0) setenv("HBEAM_WORKERS", std::to_string(c.workers).c_str(), 1);
        if (spectrum->parsed()) return cmd_spectrum(c, out);
        if (thr->parsed()) return cmd_threshold(c, out, err);
        if (rep->parsed()) return cmd_reproduce(c, out, err);
        if (opt->parsed()) return cmd_optimize(c, out, err);
        if (sw->parsed()) return cmd_sweep(c, out, err);
        if (sim->parsed()) return cmd_simulate(c, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return numerical_failure;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return numerical_failure;
    }
    return config_error;
}

}  // namespace hbeam::cli
