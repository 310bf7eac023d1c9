#include "hbeam/beam_system.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace hbeam {

namespace {

constexpr double joint_tol = 1e-12;

// Anchored basis and its d-th derivative at x, divided by k^d.
std::array<double, 4> local_row(double k, double x0, double x1, double x, int d) {
    double y = x - x0;
    double c = std::cos(k * y);
    double s = std::sin(k * y);
    std::array<double, 4> r{};
    switch (d) {
        case 0: r[0] = c; r[1] = s; break;
        case 1: r[0] = -s; r[1] = c; break;
        case 2: r[0] = -c; r[1] = -s; break;
        default: r[0] = s; r[1] = -c; break;
    }
    r[2] = ((d % 2) ? -1.0 : 1.0) * std::exp(-k * y);
    r[3] = std::exp(-k * (x1 - x));
    return r;
}

void put(Eigen::MatrixXd& M, Eigen::Index row, Eigen::Index col, const std::array<double, 4>& v,
         double factor) {
    for (int i = 0; i < 4; ++i) M(row, col + i) = factor * v[static_cast<std::size_t>(i)];
}

}  // namespace

std::vector<BeamPiece> beam_pieces(const Density& p, const PierLayout& layout) {
    std::vector<double> pts{0.0, pi, layout.pier()};
    for (double b : p.breakpoints()) pts.push_back(b);
    pts = merge_points(std::move(pts), joint_tol);
    std::vector<BeamPiece> out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double mid = 0.5 * (pts[i] + pts[i + 1]);
        out.push_back({pts[i], pts[i + 1], p.eval(mid)});
    }
    return out;
}

Eigen::MatrixXd gluing_matrix(double mu, const std::vector<BeamPiece>& pieces, double pier,
                              Parity parity) {
    const auto P = static_cast<Eigen::Index>(pieces.size());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(4 * P, 4 * P);
    std::vector<double> k(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) k[i] = mu * std::pow(pieces[i].p, 0.25);

    Eigen::Index r = 0;
    const auto& first = pieces.front();
    const int d0 = parity == Parity::even ? 1 : 0;
    put(M, r++, 0, local_row(k[0], first.x0, first.x1, 0.0, d0), 1.0);
    put(M, r++, 0, local_row(k[0], first.x0, first.x1, 0.0, d0 + 2), 1.0);

    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        const auto& L = pieces[i];
        const auto& R = pieces[i + 1];
        const double x = L.x1;
        const auto cl = static_cast<Eigen::Index>(4 * i);
        const auto cr = cl + 4;
        int dmin = 0;
        int dmax = 3;
        if (std::abs(x - pier) < joint_tol) {
            put(M, r++, cl, local_row(k[i], L.x0, L.x1, x, 0), 1.0);
            put(M, r++, cr, local_row(k[i + 1], R.x0, R.x1, x, 0), 1.0);
            dmin = 1;
            dmax = 2;
        }
        for (int d = dmin; d <= dmax; ++d) {
            put(M, r, cl, local_row(k[i], L.x0, L.x1, x, d), std::pow(k[i] / mu, d));
            put(M, r, cr, local_row(k[i + 1], R.x0, R.x1, x, d), -std::pow(k[i + 1] / mu, d));
            ++r;
        }
    }
    const auto& last = pieces.back();
    const auto cl = 4 * (P - 1);
    put(M, r++, cl, local_row(k.back(), last.x0, last.x1, pi, 0), 1.0);
    put(M, r++, cl, local_row(k.back(), last.x0, last.x1, pi, 2), 1.0);

    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        double m = M.row(i).cwiseAbs().maxCoeff();
        if (m > 0.0) M.row(i) /= m;
    }
    return M;
}

double gluing_determinant(double mu, const std::vector<BeamPiece>& pieces, double pier,
                          Parity parity) {
    return gluing_matrix(mu, pieces, pier, parity).partialPivLu().determinant();
}

PiecewiseFunction gluing_mode(double mu, const std::vector<BeamPiece>& pieces, double pier,
                              Parity parity) {
    Eigen::MatrixXd M = gluing_matrix(mu, pieces, pier, parity);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const Eigen::Index n = sv.size();
    if (sv(n - 2) < 1e-8 * sv(0)) {
        std::ostringstream os;
        os << "two-dimensional null space at mu = " << mu;
        throw NumericalError(os.str());
    }
    Eigen::VectorXd v = svd.matrixV().col(n - 1);

    std::vector<FunctionPiece> fp;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& bp = pieces[i];
        const double k = mu * std::pow(bp.p, 0.25);
        const auto c = static_cast<Eigen::Index>(4 * i);
        fp.push_back(anchored_piece(bp.x0, bp.x1, k, v(c), v(c + 1), v(c + 2), v(c + 3)));
    }
    PiecewiseFunction e(parity, std::move(fp));

    std::vector<double> bps;
    std::vector<double> vals{pieces.front().p};
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (pieces[i].p != vals.back()) {
            bps.push_back(pieces[i].x0);
            vals.push_back(pieces[i].p);
        }
    }
    Density w = Density::unchecked(1.0, 1.0, bps, vals);
    double norm2 = product_integral(e, 0, e, 0, &w);
    double s0 = e.eval(0.0, parity == Parity::even ? 0 : 1);
    e.scale((s0 < 0.0 ? -1.0 : 1.0) / std::sqrt(norm2));
    return e;
}

double bisect_root(const std::function<double(double)>& fn, double lo, double hi, double flo,
                   double tolerance) {
    while (hi - lo > tolerance) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = fn(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

struct ScanState {
    const std::function<double(double)>* fn;
    Parity parity;
    double f0;
};

void check_separation(const std::vector<BracketedRoot>& roots, double min_sep) {
    for (std::size_t i = 1; i < roots.size(); ++i) {
        if (roots[i].mu - roots[i - 1].mu < min_sep) {
            std::ostringstream os;
            os.precision(15);
            os << "roots at mu = " << roots[i - 1].mu << " and " << roots[i].mu
               << " are not separated; eigenvalue simplicity is in doubt";
            throw NumericalError(os.str());
        }
    }
}

}  // namespace

std::vector<BracketedRoot> scan_roots(const std::function<double(double)>& even_fn,
                                      const std::function<double(double)>& odd_fn,
                                      std::size_t count, const RootScan& scan) {
    std::vector<BracketedRoot> roots;
    std::array<ScanState, 2> st{ScanState{&even_fn, Parity::even, 0.0},
                                ScanState{&odd_fn, Parity::odd, 0.0}};
    std::size_t i = 1;
    double mu = scan.step;
    for (auto& s : st) s.f0 = (*s.fn)(mu);
    while (roots.size() < count) {
        if (mu >= scan.mu_max) {
            std::ostringstream os;
            os << "found only " << roots.size() << " of " << count
               << " eigenvalues below mu = " << scan.mu_max;
            throw NumericalError(os.str());
        }
        double next = scan.step * static_cast<double>(++i);
        for (auto& s : st) {
            double f1 = (*s.fn)(next);
            if (s.f0 == 0.0) {
                roots.push_back({mu, s.parity});
            } else if ((s.f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
                roots.push_back({bisect_root(*s.fn, mu, next, s.f0, scan.tolerance), s.parity});
            }
            s.f0 = f1;
        }
        mu = next;
    }
    std::sort(roots.begin(), roots.end(),
              [](const BracketedRoot& l, const BracketedRoot& r) { return l.mu < r.mu; });
    check_separation(roots, scan.min_separation);
    roots.resize(count);
    return roots;
}

std::vector<double> scan_roots(const std::function<double(double)>& fn, std::size_t count,
                               const RootScan& scan) {
    std::vector<BracketedRoot> roots;
    std::size_t i = 1;
    double mu = scan.step;
    double f0 = fn(mu);
    while (roots.size() < count) {
        if (mu >= scan.mu_max) {
            std::ostringstream os;
            os << "found only " << roots.size() << " of " << count
               << " roots below mu = " << scan.mu_max;
            throw NumericalError(os.str());
        }
        double next = scan.step * static_cast<double>(++i);
        double f1 = fn(next);
        if (f0 == 0.0) {
            roots.push_back({mu, Parity::even});
        } else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
            roots.push_back({bisect_root(fn, mu, next, f0, scan.tolerance), Parity::even});
        }
        f0 = f1;
        mu = next;
    }
    check_separation(roots, scan.min_separation);
    std::vector<double> out;
    for (const auto& r : roots) out.push_back(r.mu);
    return out;
}

}  // namespace hbeam
