#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "hbeam/common.hpp"
#include "hbeam/density.hpp"
#include "hbeam/piecewise.hpp"

namespace hbeam {

// One interval of the half-beam on which the density is constant.
struct BeamPiece {
    double x0;
    double x1;
    double p;
};

// Pieces of [0, pi] cut at the density breakpoints and at the pier.
std::vector<BeamPiece> beam_pieces(const Density& p, const PierLayout& layout);

// Gluing conditions for e'''' = mu^4 p e on the half-beam, four unknowns per
// piece in the anchored local basis. Rows are scaled to unit max-norm.
Eigen::MatrixXd gluing_matrix(double mu, const std::vector<BeamPiece>& pieces, double pier,
                              Parity parity);

double gluing_determinant(double mu, const std::vector<BeamPiece>& pieces, double pier,
                          Parity parity);

// Mode at an eigenvalue mu from the null vector of the gluing system,
// normalized so that the integral of p e^2 over (-pi, pi) is 1 and e(0) > 0
// (even) or e'(0) > 0 (odd).
PiecewiseFunction gluing_mode(double mu, const std::vector<BeamPiece>& pieces, double pier,
                              Parity parity);

struct RootScan {
    double step = 0.01;
    double mu_max = 50.0;
    double tolerance = 1e-12;
    double min_separation = 1e-8;
};

struct BracketedRoot {
    double mu;
    Parity parity;
};

// Scans both parity functions on one uniform grid until `count` roots in
// total have been bracketed, then refines them by bisection. Result is
// sorted by mu. Throws NumericalError if the ceiling is reached first or two
// roots are closer than min_separation.
std::vector<BracketedRoot> scan_roots(const std::function<double(double)>& even_fn,
                                      const std::function<double(double)>& odd_fn,
                                      std::size_t count, const RootScan& scan = {});

// Same, for a single function and a single parity.
std::vector<double> scan_roots(const std::function<double(double)>& fn, std::size_t count,
                               const RootScan& scan = {});

double bisect_root(const std::function<double(double)>& fn, double lo, double hi, double flo,
                   double tolerance);

}  // namespace hbeam
