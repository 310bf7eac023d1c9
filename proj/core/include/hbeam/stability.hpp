#pragma once

#include <optional>
#include <span>
#include <vector>

namespace hbeam {

double critical_amplitude(double lambda, double nu);
// (nu/lambda - 1) lambda nu; cross-checked against lambda D^2/2 + D^4/4.
double critical_energy(double lambda, double nu);

struct PairRecord {
    std::size_t j;  // 1-based index of the lower eigenvalue
    double lambda;
    double nu;
    double amplitude;
    double energy;
    double ratio;
};

struct StabilityReport {
    std::vector<PairRecord> pairs;
    double energy_threshold;
    std::size_t argmin;  // 0-based into pairs
    // Another pair whose energy is within 1% of the minimum, if any.
    std::optional<std::size_t> near_tie;

    const PairRecord& minimizer() const { return pairs[argmin]; }
};

inline constexpr std::size_t threshold_modes = 12;

// Minimum of E over consecutive pairs among the first 12 eigenvalues.
StabilityReport threshold(std::span<const double> eigenvalues);

// Period of W'' + lambda W + W^3 = 0 with W(0) = zeta, W'(0) = 0.
double duffing_period(double lambda, double zeta);

// W sampled on a nondecreasing grid of times >= 0.
std::vector<double> duffing_orbit(double lambda, double zeta, std::span<const double> t_grid);

enum class HillClass { stable, unstable, marginal };
const char* to_string(HillClass c);

struct HillResult {
    // Monodromy over the coefficient period T/2, where |trace| decides.
    double trace;
    // Monodromy over the full Duffing period T: trace^2 - 2.
    double trace_full;
    HillClass classification;
    std::size_t steps;
};

inline constexpr double marginal_band = 1e-6;

// Floquet analysis of xi'' + (nu + W^2) xi = 0 along the Duffing orbit of
// amplitude zeta in the lambda mode.
HillResult hill_monodromy(double lambda, double nu, double zeta);

HillClass classify_analytic(double lambda, double nu, double zeta);

}  // namespace hbeam
