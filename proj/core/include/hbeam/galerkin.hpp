#pragma once

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hbeam/common.hpp"
#include "hbeam/density.hpp"
#include "hbeam/piecewise.hpp"

namespace hbeam {

struct BasisFunction {
    double mu;
    double Lambda;
    PiecewiseFunction eta;
};

// Eigenpairs of the homogeneous beam with the same piers, normalized in the
// unweighted L2 norm.
inline constexpr int profile_samples = 4096;

struct HomogeneousBasis {
    double a;
    int N;
    std::vector<BasisFunction> even;
    std::vector<BasisFunction> odd;
    // Row i holds eta_i at x_k = k pi / profile_samples, k = 0..profile_samples.
    Eigen::MatrixXd even_samples;
    Eigen::MatrixXd odd_samples;

    const std::vector<BasisFunction>& of(Parity p) const { return p == Parity::even ? even : odd; }
    const Eigen::MatrixXd& samples(Parity p) const {
        return p == Parity::even ? even_samples : odd_samples;
    }
};

std::vector<double> profile_grid();

inline constexpr int default_truncation = 14;

HomogeneousBasis build_homogeneous_basis(const PierLayout& layout, int N = default_truncation);

// Shared, lazily built basis keyed by (a, N).
std::shared_ptr<const HomogeneousBasis> cached_basis(const PierLayout& layout,
                                                     int N = default_truncation);

// M_ij = integral of p eta_i eta_j over (-pi, pi), from exact antiderivatives.
Eigen::MatrixXd weighted_gram(const Density& p, const HomogeneousBasis& basis, Parity parity);

struct WeightedMode {
    double lambda;
    Parity parity;
    Eigen::VectorXd coeffs;
};

struct WeightedSpectrum {
    Density density;
    PierLayout layout;
    std::shared_ptr<const HomogeneousBasis> basis;
    std::vector<WeightedMode> modes;

    std::vector<double> eigenvalues() const;
    // j is 1-based; d-th derivative.
    double eval(std::size_t j, double x, int d = 0) const;
    void eval(std::size_t j, std::span<const double> xs, std::span<double> out, int d = 0) const;
    // Values on profile_grid().
    Eigen::VectorXd sampled(std::size_t j) const;
};

// First `count` eigenpairs of e'''' = lambda p e, merged over both parities.
WeightedSpectrum solve_weighted_spectrum(const Density& p, const PierLayout& layout,
                                         int N = default_truncation, std::size_t count = 12);
WeightedSpectrum solve_weighted_spectrum(const Density& p,
                                         std::shared_ptr<const HomogeneousBasis> basis,
                                         std::size_t count = 12);

double eigenfunction_eval(const WeightedSpectrum& spec, std::size_t j, double x, int d = 0);

}  // namespace hbeam
