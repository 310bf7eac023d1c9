#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hbeam/closed_form.hpp"
#include "hbeam/common.hpp"
#include "hbeam/density.hpp"
#include "hbeam/galerkin.hpp"
#include "hbeam/stability.hpp"

namespace hbeam {

// g(x) = (lambda_{k+1} / lambda_k) (u_k^2 - u_{k+1}^2) on the half-beam.
struct GProfile {
    std::vector<double> x;
    std::vector<double> g;
    std::size_t pair;  // 1-based index k of the lower mode
    Parity lower_parity;
    Parity upper_parity;
    double at_zero;
    double at_pier;
    double at_end;
};

GProfile g_profile(const WeightedSpectrum& spectrum, std::size_t pair);

// No level of g has a superlevel set of the requested measure: g is flat on
// a set of positive measure at the critical level.
class PlateauError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

struct LevelSet {
    double t;
    std::vector<Interval> heavy_set;
    double measure;
};

inline constexpr double level_measure_tolerance = 1e-6;

// Level t whose superlevel set {g >= t} in (0, pi) has half-measure
// pi (1 - alpha) / (beta - alpha); crossings located by linear interpolation.
LevelSet level_threshold(const GProfile& profile, double alpha, double beta);
LevelSet level_threshold_measure(const GProfile& profile, double target);

// Measure and intervals of {g >= t} for the interpolated profile.
LevelSet superlevel_set(const GProfile& profile, double t);

struct IterateRecord {
    int seed;       // 0: p = 1, 1: heavy centre, 2: light centre
    int iteration;  // 0 = seed itself
    Density density;
    double energy;
    std::size_t pair;  // 1-based lower index of the minimizing pair
};

struct OptimizerOptions {
    int iterations = 10;
    int N = default_truncation;
    bool stop_at_fixed_point = false;
    double fixed_point_tolerance = 1e-4;
    // Called for every evaluated iterate, possibly from several threads.
    // profile is null when no next iterate is formed from this one.
    std::function<void(const IterateRecord&, const WeightedSpectrum&, const StabilityReport&,
                       const GProfile*)>
        on_iterate;
};

struct OptimizationResult {
    Density best;
    double energy;
    std::size_t jumps;
    std::size_t pair;
    std::vector<IterateRecord> trace;
    std::vector<std::string> failures;
};

// One level-set update p -> beta on {g >= t} + alpha elsewhere.
Density iterate_density(const Density& p, const PierLayout& layout, double alpha, double beta,
                        int N = default_truncation);

OptimizationResult optimize_density(const PierLayout& layout, double alpha, double beta,
                                    const OptimizerOptions& options = {});

enum class SweepMode { two_step_heavy, two_step_light, full };

const char* to_string(SweepMode m);

struct SweepRow {
    double a;
    double energy;
    std::size_t pair;
    std::size_t jumps;
    std::optional<double> rho;
    Density best;
};

struct SweepResult {
    double alpha;
    double beta;
    SweepMode mode;
    std::vector<SweepRow> rows;
    std::size_t best;  // index into rows

    double a_opt() const { return rows[best].a; }
    const SweepRow& optimum() const { return rows[best]; }
};

struct SweepOptions {
    OptimizerOptions optimizer;
    unsigned workers = 0;
    // Two-step mode: called with each density and its closed-form roots.
    std::function<void(const Density&, const PierLayout&, const std::vector<EigenRoot>&)>
        on_two_step;
};

const std::vector<double>& default_pier_grid();
const std::vector<double>& default_alpha_grid();
const std::vector<double>& default_beta_grid();

// Largest threshold over the pier grid; ties go to the smaller a.
SweepResult sweep_pier(double alpha, double beta, const std::vector<double>& A, SweepMode mode,
                       const SweepOptions& options = {});

std::vector<SweepResult> sweep_materials(const std::vector<double>& alphas,
                                         const std::vector<double>& betas,
                                         const std::vector<double>& A, SweepMode mode,
                                         const SweepOptions& options = {});

// Index of the cell with the largest optimum threshold.
std::size_t grand_optimum(const std::vector<SweepResult>& cells);

}  // namespace hbeam
