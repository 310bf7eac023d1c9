#include "hbeam/closed_form.hpp"

#include <cmath>
#include <stdexcept>

namespace hbeam {

const char* to_string(JumpCase c) {
    switch (c) {
        case JumpCase::rho_eq_a: return "rho=a";
        case JumpCase::rho_gt_a: return "rho>a";
        default: return "rho<a";
    }
}

TwoStepParams TwoStepParams::make(double alpha, double beta, Center center, double a) {
    PierLayout layout(a);
    TwoStepParams q{};
    q.alpha = alpha;
    q.beta = beta;
    q.center = center;
    q.rho = two_step_rho(alpha, beta, center);
    double outer = center == Center::heavy ? alpha : beta;
    double inner = center == Center::heavy ? beta : alpha;
    q.sigma = std::pow(outer, 0.25);
    q.tau = std::pow(inner, 0.25);
    q.delta = q.tau / q.sigma;
    q.a = layout.a;
    return q;
}

TwoStepParams TwoStepParams::homogeneous(double a, double rho) {
    PierLayout layout(a);
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
    return TwoStepParams{1.0, 1.0, Center::heavy, 1.0, 1.0, 1.0, rho, layout.a};
}

JumpCase TwoStepParams::jump_case() const {
    if (std::abs(rho - a) < coincidence_tolerance) return JumpCase::rho_eq_a;
    return rho > a ? JumpCase::rho_gt_a : JumpCase::rho_lt_a;
}

Density TwoStepParams::density() const {
    if (alpha == 1.0 && beta == 1.0) return Density::constant();
    return make_two_step(alpha, beta, center);
}

std::vector<BeamPiece> TwoStepParams::pieces() const {
    const double inner = tau * tau * tau * tau;
    const double outer = sigma * sigma * sigma * sigma;
    std::vector<double> pts = merge_points({0.0, rho * pi, a * pi, pi}, coincidence_tolerance);
    std::vector<BeamPiece> out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double mid = 0.5 * (pts[i] + pts[i + 1]);
        out.push_back({pts[i], pts[i + 1], mid < rho * pi ? inner : outer});
    }
    return out;
}

namespace {

// Coincident jump and pier: scalar relations multiplied through by cosh so
// that no poles remain.
double coincident_even(double mu, const TwoStepParams& q) {
    double s = mu * pi * q.sigma * (1.0 - q.rho);
    double t = mu * pi * q.tau * q.rho;
    double outer = std::sin(s) - std::cos(s) * std::tanh(s);
    return (std::sin(t) + std::cos(t) * std::tanh(t)) * std::sin(s) * std::tanh(s) +
           q.delta * std::cos(t) * outer;
}

double coincident_odd(double mu, const TwoStepParams& q) {
    double s = mu * pi * q.sigma * (1.0 - q.rho);
    double t = mu * pi * q.tau * q.rho;
    double outer = std::sin(s) - std::cos(s) * std::tanh(s);
    return -(std::cos(t) * std::tanh(t) - std::sin(t)) * std::sin(s) * std::tanh(s) +
           q.delta * std::sin(t) * std::tanh(t) * outer;
}

double general_det(double mu, const TwoStepParams& q, Parity parity) {
    return gluing_determinant(mu, q.pieces(), q.a * pi, parity);
}

Eigen::Matrix4d scaled(Eigen::Matrix4d M) {
    for (int i = 0; i < 4; ++i) M.row(i) /= M.row(i).cwiseAbs().maxCoeff();
    return M;
}

void require_split(const TwoStepParams& q) {
    if (q.jump_case() == JumpCase::rho_eq_a)
        throw std::invalid_argument("4x4 system is only defined for rho != a");
}

// Rows shared by both parities: jump gluing when rho > a.
void jump_rows_outer(Eigen::Matrix4d& M, double R, double Q, double d) {
    using std::cos, std::sin, std::cosh, std::sinh;
    const double m = 1.0 - d * d;
    const double p = 1.0 + d * d;
    M.row(2) << m * (cos(R) * cosh(Q) + d * sin(R) * sinh(Q)),
        m * (sin(R) * cosh(Q) - d * cos(R) * sinh(Q)),
        p * (cosh(R) * cosh(Q) - d * sinh(R) * sinh(Q)),
        p * (sinh(R) * cosh(Q) - d * cosh(R) * sinh(Q));
    M.row(3) << p * (cos(R) * cos(Q) + d * sin(R) * sin(Q)),
        p * (sin(R) * cos(Q) - d * cos(R) * sin(Q)),
        m * (cosh(R) * cos(Q) - d * sinh(R) * sin(Q)),
        m * (sinh(R) * cos(Q) - d * cosh(R) * sin(Q));
}

// Pier rows shared by both parities when rho < a.
void pier_rows_inner(Eigen::Matrix4d& M, double A, double B) {
    using std::cos, std::sin, std::cosh, std::sinh;
    M.row(0) << cos(A), sin(A), cosh(A), sinh(A);
    M.row(1) << cos(A) * cos(B) * sinh(B) - cos(A) * cosh(B) * sin(B) + sin(A) * sin(B) * sinh(B),
        sin(A) * cos(B) * sinh(B) - sin(A) * cosh(B) * sin(B) - cos(A) * sin(B) * sinh(B),
        -sinh(A) * sin(B) * sinh(B), -cosh(A) * sin(B) * sinh(B);
}

}  // namespace

double det_even(double mu, const TwoStepParams& params) {
    if (params.jump_case() == JumpCase::rho_eq_a) return coincident_even(mu, params);
    return general_det(mu, params, Parity::even);
}

double det_odd(double mu, const TwoStepParams& params) {
    if (params.jump_case() == JumpCase::rho_eq_a) return coincident_odd(mu, params);
    return general_det(mu, params, Parity::odd);
}

Eigen::Matrix4d printed_system_even(double mu, const TwoStepParams& q) {
    using std::cos, std::sin, std::cosh, std::sinh;
    require_split(q);
    const double d = q.delta;
    Eigen::Matrix4d M;
    if (q.jump_case() == JumpCase::rho_gt_a) {
        const double A = mu * q.tau * q.a * pi;
        const double R = mu * q.tau * q.rho * pi;
        const double Q = mu * q.sigma * (q.rho - 1.0) * pi;
        M.row(0) << cos(A) * cos(A) * sinh(A), cosh(A) + sin(A) * cos(A) * sinh(A),
            cos(A) * sinh(A) * cosh(A), cos(A) * cosh(A) * cosh(A);
        M.row(1) << cos(A), sin(A), cosh(A), sinh(A);
        jump_rows_outer(M, R, Q, d);
    } else {
        const double A = mu * q.sigma * q.a * pi;
        const double B = mu * q.sigma * (q.a - 1.0) * pi;
        const double R = mu * q.sigma * q.rho * pi;
        const double T = mu * q.tau * q.rho * pi;
        const double m = 1.0 - d * d;
        const double p = 1.0 + d * d;
        pier_rows_inner(M, A, B);
        M.row(2) << m * (sin(R) * cosh(T) + d * cos(R) * sinh(T)),
            -m * (cos(R) * cosh(T) - d * sin(R) * sinh(T)),
            p * (sinh(R) * cosh(T) - d * cosh(R) * sinh(T)),
            p * (cosh(R) * cosh(T) - d * sinh(R) * sinh(T));
        M.row(3) << p * (sin(R) * cos(T) - d * cos(R) * sin(T)),
            -p * (cos(R) * cos(T) + d * sin(R) * sin(T)),
            m * (sinh(R) * cos(T) + d * cosh(R) * sin(T)),
            m * (cosh(R) * cos(T) + d * sinh(R) * sin(T));
    }
    return scaled(M);
}

Eigen::Matrix4d printed_system_odd(double mu, const TwoStepParams& q) {
    using std::cos, std::sin, std::cosh, std::sinh;
    require_split(q);
    const double d = q.delta;
    Eigen::Matrix4d M;
    if (q.jump_case() == JumpCase::rho_gt_a) {
        const double A = mu * q.tau * q.a * pi;
        const double R = mu * q.tau * q.rho * pi;
        const double Q = mu * q.sigma * (q.rho - 1.0) * pi;
        M.row(0) << sinh(A) - sin(A) * cos(A) * cosh(A), -sin(A) * sin(A) * cosh(A),
            -sin(A) * sinh(A) * sinh(A), -sin(A) * sinh(A) * cosh(A);
        M.row(1) << cos(A), sin(A), cosh(A), sinh(A);
        jump_rows_outer(M, R, Q, d);
    } else {
        const double A = mu * q.sigma * q.a * pi;
        const double B = mu * q.sigma * (q.a - 1.0) * pi;
        const double R = mu * q.sigma * q.rho * pi;
        const double T = mu * q.tau * q.rho * pi;
        const double m = 1.0 - d * d;
        const double p = 1.0 + d * d;
        pier_rows_inner(M, A, B);
        M.row(2) << m * (sin(R) * sinh(T) + d * cos(R) * cosh(T)),
            -m * (cos(R) * sinh(T) - d * sin(R) * cosh(T)),
            p * (sinh(R) * sinh(T) - d * cosh(R) * cosh(T)),
            p * (cosh(R) * sinh(T) - d * sinh(R) * cosh(T));
        M.row(3) << p * (-sin(R) * sin(T) - d * cos(R) * cos(T)),
            p * (cos(R) * sin(T) - d * sin(R) * cos(T)),
            m * (-sinh(R) * sin(T) + d * cosh(R) * cos(T)),
            m * (-cosh(R) * sin(T) + d * sinh(R) * cos(T));
    }
    return scaled(M);
}

std::vector<EigenRoot> find_eigenvalues(const TwoStepParams& params, std::size_t count,
                                        const RootScan& scan) {
    auto fe = [&](double mu) { return det_even(mu, params); };
    auto fo = [&](double mu) { return det_odd(mu, params); };
    auto roots = scan_roots(fe, fo, count, scan);
    std::vector<EigenRoot> out;
    out.reserve(roots.size());
    for (const auto& r : roots) {
        double l = r.mu * r.mu;
        out.push_back({r.mu, l * l, r.parity, params.jump_case()});
    }
    return out;
}

std::vector<EigenRoot> find_eigenvalues(const Density& p, const PierLayout& layout,
                                        std::size_t count, const RootScan& scan) {
    if (p.is_homogeneous()) return find_eigenvalues(TwoStepParams::homogeneous(layout.a), count, scan);
    if (p.jumps() != 1 || !p.is_bang_bang())
        throw std::invalid_argument("closed-form spectrum needs a two-step density");
    Center c = p.values()[0] == p.beta() ? Center::heavy : Center::light;
    TwoStepParams q = TwoStepParams::make(p.alpha(), p.beta(), c, layout.a);
    if (std::abs(q.rho * pi - p.breakpoints()[0]) > 1e-9)
        throw std::invalid_argument("density breakpoint does not satisfy the mass constraint");
    return find_eigenvalues(q, count, scan);
}

PiecewiseFunction eigenfunction_closed_form(const EigenRoot& root, const TwoStepParams& params) {
    return gluing_mode(root.mu, params.pieces(), params.a * pi, root.parity);
}

}  // namespace hbeam
