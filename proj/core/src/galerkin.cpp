#include "hbeam/galerkin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "hbeam/beam_system.hpp"
#include "hbeam/closed_form.hpp"

namespace hbeam {

std::vector<double> profile_grid() {
    std::vector<double> x(profile_samples + 1);
    for (int k = 0; k <= profile_samples; ++k) x[static_cast<std::size_t>(k)] = pi * k / profile_samples;
    x.back() = pi;
    return x;
}

HomogeneousBasis build_homogeneous_basis(const PierLayout& layout, int N) {
    if (N < 1) throw std::invalid_argument("basis size must be positive");
    const Density one = Density::constant();
    const auto pieces = beam_pieces(one, layout);
    const auto grid = profile_grid();
    HomogeneousBasis basis{layout.a, N, {}, {}, {}, {}};
    for (Parity par : {Parity::even, Parity::odd}) {
        auto fn = [&](double mu) { return gluing_determinant(mu, pieces, layout.pier(), par); };
        auto mus = scan_roots(fn, static_cast<std::size_t>(N));
        auto& dst = par == Parity::even ? basis.even : basis.odd;
        for (double mu : mus) {
            double l = mu * mu;
            dst.push_back({mu, l * l, gluing_mode(mu, pieces, layout.pier(), par)});
        }
        Eigen::MatrixXd S(N, static_cast<Eigen::Index>(grid.size()));
        for (Eigen::Index i = 0; i < N; ++i)
            for (Eigen::Index k = 0; k < S.cols(); ++k)
                S(i, k) = dst[static_cast<std::size_t>(i)].eta.eval(grid[static_cast<std::size_t>(k)]);
        (par == Parity::even ? basis.even_samples : basis.odd_samples) = std::move(S);
    }
    return basis;
}

std::shared_ptr<const HomogeneousBasis> cached_basis(const PierLayout& layout, int N) {
    using Key = std::pair<std::uint64_t, int>;
    static std::shared_mutex mutex;
    static std::map<Key, std::shared_ptr<const HomogeneousBasis>> cache;
    const Key key{std::bit_cast<std::uint64_t>(layout.a), N};
    {
        std::shared_lock lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto built = std::make_shared<const HomogeneousBasis>(build_homogeneous_basis(layout, N));
    std::unique_lock lock(mutex);
    auto [it, inserted] = cache.emplace(key, std::move(built));
    return it->second;
}

Eigen::MatrixXd weighted_gram(const Density& p, const HomogeneousBasis& basis, Parity parity) {
    const auto& fns = basis.of(parity);
    const auto n = static_cast<Eigen::Index>(fns.size());
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    if (fns.empty()) return M;

    const auto& ref = fns.front().eta.pieces();
    std::vector<double> pts{0.0, pi};
    for (const auto& piece : ref) pts.push_back(piece.x1);
    for (double b : p.breakpoints()) pts.push_back(b);
    pts = merge_points(std::move(pts));

    std::size_t pi_idx = 0;
    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        const double u = pts[s];
        const double v = pts[s + 1];
        const double mid = 0.5 * (u + v);
        while (pi_idx + 1 < ref.size() && ref[pi_idx].x1 < mid) ++pi_idx;
        const double w = 2.0 * p.eval(mid);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto& fi = fns[static_cast<std::size_t>(i)].eta.pieces()[pi_idx];
            for (Eigen::Index j = i; j < n; ++j) {
                const auto& fj = fns[static_cast<std::size_t>(j)].eta.pieces()[pi_idx];
                M(i, j) += w * segment_integral(fi, 0, fj, 0, u, v);
            }
        }
    }
    M.triangularView<Eigen::StrictlyLower>() = M.transpose();
    return M;
}

std::vector<double> WeightedSpectrum::eigenvalues() const {
    std::vector<double> out;
    out.reserve(modes.size());
    for (const auto& m : modes) out.push_back(m.lambda);
    return out;
}

double WeightedSpectrum::eval(std::size_t j, double x, int d) const {
    if (j < 1 || j > modes.size()) throw std::out_of_range("eigenfunction index out of range");
    const auto& m = modes[j - 1];
    const auto& fns = basis->of(m.parity);
    double sum = 0.0;
    for (std::size_t i = 0; i < fns.size(); ++i)
        sum += m.coeffs(static_cast<Eigen::Index>(i)) * fns[i].eta.eval(x, d);
    return sum;
}

void WeightedSpectrum::eval(std::size_t j, std::span<const double> xs, std::span<double> out,
                            int d) const {
    if (xs.size() != out.size()) throw std::invalid_argument("eval: size mismatch");
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = eval(j, xs[i], d);
}

Eigen::VectorXd WeightedSpectrum::sampled(std::size_t j) const {
    if (j < 1 || j > modes.size()) throw std::out_of_range("eigenfunction index out of range");
    const auto& m = modes[j - 1];
    return basis->samples(m.parity).transpose() * m.coeffs;
}

WeightedSpectrum solve_weighted_spectrum(const Density& p, const PierLayout& layout, int N,
                                         std::size_t count) {
    return solve_weighted_spectrum(p, cached_basis(layout, N), count);
}

WeightedSpectrum solve_weighted_spectrum(const Density& p,
                                         std::shared_ptr<const HomogeneousBasis> basis,
                                         std::size_t count) {
    if (!basis) throw std::invalid_argument("missing basis");
    WeightedSpectrum spec{p, PierLayout(basis->a), basis, {}};
    for (Parity par : {Parity::even, Parity::odd}) {
        const auto& fns = basis->of(par);
        const auto n = static_cast<Eigen::Index>(fns.size());
        Eigen::VectorXd lam(n);
        for (Eigen::Index i = 0; i < n; ++i) lam(i) = fns[static_cast<std::size_t>(i)].Lambda;
        Eigen::MatrixXd M = weighted_gram(p, *basis, par);
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
            lam.asDiagonal().toDenseMatrix(), M, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
        if (solver.info() != Eigen::Success)
            throw NumericalError("weighted Gram matrix is not positive definite");
        for (Eigen::Index j = 0; j < n; ++j) {
            Eigen::VectorXd c = solver.eigenvectors().col(j);
            double s0 = 0.0;
            const int d = par == Parity::even ? 0 : 1;
            for (Eigen::Index i = 0; i < n; ++i)
                s0 += c(i) * fns[static_cast<std::size_t>(i)].eta.eval(0.0, d);
            if (s0 < 0.0) c = -c;
            spec.modes.push_back({solver.eigenvalues()(j), par, std::move(c)});
        }
    }
    std::sort(spec.modes.begin(), spec.modes.end(),
              [](const WeightedMode& l, const WeightedMode& r) { return l.lambda < r.lambda; });
    if (spec.modes.size() < count) {
        std::ostringstream os;
        os << "basis of size " << basis->N << " cannot deliver " << count << " modes";
        throw std::invalid_argument(os.str());
    }
    spec.modes.resize(count);
    return spec;
}

double eigenfunction_eval(const WeightedSpectrum& spec, std::size_t j, double x, int d) {
    return spec.eval(j, x, d);
}

}  // namespace hbeam
