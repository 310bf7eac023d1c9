#pragma once

#include <complex>
#include <span>
#include <vector>

#include "hbeam/common.hpp"
#include "hbeam/density.hpp"

namespace hbeam {

// c * exp(s * (x - anchor)); real functions are stored as conjugate pairs.
struct ExpTerm {
    std::complex<double> c;
    std::complex<double> s;
    double anchor;
};

struct FunctionPiece {
    double x0;
    double x1;
    std::vector<ExpTerm> terms;
};

// Local basis on one piece: cos(k y), sin(k y), exp(-k y), exp(-k (L - y)),
// with y = x - x0 and L = x1 - x0. Both exponentials stay bounded by 1.
FunctionPiece anchored_piece(double x0, double x1, double k, double A, double B, double C,
                             double D);

// Function on [-pi, pi] given on the half-beam and extended by parity.
class PiecewiseFunction {
public:
    PiecewiseFunction() = default;
    PiecewiseFunction(Parity parity, std::vector<FunctionPiece> pieces);

    Parity parity() const { return parity_; }
    const std::vector<FunctionPiece>& pieces() const { return pieces_; }

    // d-th derivative at x in [-pi, pi]; derivatives at 0 use the right side.
    double eval(double x, int d = 0) const;
    void eval(std::span<const double> xs, std::span<double> out, int d = 0) const;

    void scale(double factor);
    // this += w * other; both must share the same piece boundaries.
    void add(const PiecewiseFunction& other, double w);

private:
    const FunctionPiece& piece_at(double ax) const;

    Parity parity_ = Parity::even;
    std::vector<FunctionPiece> pieces_;
};

// Exact integral of w(x) f^(df)(x) g^(dg)(x) over [u, v] for single pieces
// whose domains contain [u, v].
double segment_integral(const FunctionPiece& f, int df, const FunctionPiece& g, int dg, double u,
                        double v);

// Exact integral over (-pi, pi) of p f^(df) g^(dg); p = 1 when weight is null.
double product_integral(const PiecewiseFunction& f, int df, const PiecewiseFunction& g, int dg,
                        const Density* weight = nullptr);

// Sorted union of piece boundaries, density breakpoints and extra points,
// with near-duplicates (within tol) collapsed.
std::vector<double> merge_points(std::vector<double> points, double tol = 1e-13);

}  // namespace hbeam
