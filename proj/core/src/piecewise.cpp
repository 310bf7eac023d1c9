#include "hbeam/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hbeam {

namespace {

using cplx = std::complex<double>;

cplx power(cplx s, int d) {
    cplx r = 1.0;
    for (int i = 0; i < d; ++i) r *= s;
    return r;
}

// (e^z - 1) / z without cancellation near 0.
cplx phi(cplx z) {
    if (std::abs(z) < 1e-3) return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
    double x = z.real();
    double y = z.imag();
    double sh = std::sin(0.5 * y);
    cplx em1(std::expm1(x) * std::cos(y) - 2.0 * sh * sh, std::exp(x) * std::sin(y));
    return em1 / z;
}

}  // namespace

FunctionPiece anchored_piece(double x0, double x1, double k, double A, double B, double C,
                             double D) {
    const cplx ik(0.0, k);
    FunctionPiece p{x0, x1, {}};
    p.terms.reserve(4);
    p.terms.push_back({cplx(0.5 * A, -0.5 * B), ik, x0});
    p.terms.push_back({cplx(0.5 * A, 0.5 * B), -ik, x0});
    p.terms.push_back({cplx(C, 0.0), cplx(-k, 0.0), x0});
    p.terms.push_back({cplx(D, 0.0), cplx(k, 0.0), x1});
    return p;
}

PiecewiseFunction::PiecewiseFunction(Parity parity, std::vector<FunctionPiece> pieces)
    : parity_(parity), pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw std::invalid_argument("piecewise function needs at least one piece");
}

const FunctionPiece& PiecewiseFunction::piece_at(double ax) const {
    for (const auto& p : pieces_)
        if (ax <= p.x1) return p;
    return pieces_.back();
}

double PiecewiseFunction::eval(double x, int d) const {
    double ax = std::abs(x);
    const FunctionPiece& p = piece_at(ax);
    cplx sum = 0.0;
    for (const auto& t : p.terms) sum += t.c * power(t.s, d) * std::exp(t.s * (ax - t.anchor));
    double v = sum.real();
    return x < 0.0 ? reflection_sign(parity_, d) * v : v;
}

void PiecewiseFunction::eval(std::span<const double> xs, std::span<double> out, int d) const {
    if (xs.size() != out.size()) throw std::invalid_argument("eval: size mismatch");
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = eval(xs[i], d);
}

void PiecewiseFunction::scale(double factor) {
    for (auto& p : pieces_)
        for (auto& t : p.terms) t.c *= factor;
}

void PiecewiseFunction::add(const PiecewiseFunction& other, double w) {
    if (other.pieces_.size() != pieces_.size())
        throw std::invalid_argument("add: piece structures differ");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        for (ExpTerm t : other.pieces_[i].terms) {
            t.c *= w;
            pieces_[i].terms.push_back(t);
        }
    }
}

double segment_integral(const FunctionPiece& f, int df, const FunctionPiece& g, int dg, double u,
                        double v) {
    const double L = v - u;
    if (L <= 0.0) return 0.0;
    cplx sum = 0.0;
    for (const auto& a : f.terms) {
        cplx ca = a.c * power(a.s, df);
        for (const auto& b : g.terms) {
            cplx S = a.s + b.s;
            // Expand from the endpoint where the product is largest.
            const double x = S.real() > 0.0 ? v : u;
            cplx e = std::exp(a.s * (x - a.anchor) + b.s * (x - b.anchor));
            cplx q = S.real() > 0.0 ? phi(-S * L) : phi(S * L);
            sum += ca * b.c * power(b.s, dg) * e * L * q;
        }
    }
    return sum.real();
}

std::vector<double> merge_points(std::vector<double> points, double tol) {
    std::sort(points.begin(), points.end());
    std::vector<double> out;
    for (double x : points) {
        if (out.empty() || x - out.back() > tol) out.push_back(x);
    }
    return out;
}

double product_integral(const PiecewiseFunction& f, int df, const PiecewiseFunction& g, int dg,
                        const Density* weight) {
    if (reflection_sign(f.parity(), df) * reflection_sign(g.parity(), dg) < 0.0) return 0.0;
    std::vector<double> pts{0.0, pi};
    for (const auto& p : f.pieces()) pts.push_back(p.x1);
    for (const auto& p : g.pieces()) pts.push_back(p.x1);
    if (weight)
        for (double b : weight->breakpoints()) pts.push_back(b);
    pts = merge_points(std::move(pts));

    double total = 0.0;
    std::size_t fi = 0;
    std::size_t gi = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double u = pts[i];
        double v = pts[i + 1];
        double mid = 0.5 * (u + v);
        while (fi + 1 < f.pieces().size() && f.pieces()[fi].x1 < mid) ++fi;
        while (gi + 1 < g.pieces().size() && g.pieces()[gi].x1 < mid) ++gi;
        double w = weight ? weight->eval(mid) : 1.0;
        total += w * segment_integral(f.pieces()[fi], df, g.pieces()[gi], dg, u, v);
    }
    return 2.0 * total;
}

}  // namespace hbeam
