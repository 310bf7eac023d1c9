#include <cmath>

#include <gtest/gtest.h>

#include "hbeam/closed_form.hpp"
#include "hbeam/galerkin.hpp"
#include "hbeam/optimizer.hpp"
#include "oracles.hpp"

using namespace hbeam;

namespace {

std::vector<double> lambdas(const std::vector<EigenRoot>& roots) {
    std::vector<double> out;
    for (const auto& r : roots) out.push_back(r.lambda);
    return out;
}

struct Config {
    double alpha;
    double beta;
    Center center;
    double a;
};

const Config split_cases[] = {
    {0.5, 2.0, Center::heavy, 0.2},   {0.5, 2.0, Center::heavy, 0.6},
    {0.5, 2.0, Center::light, 0.3},   {0.5, 2.0, Center::light, 0.8},
    {1.0 / 3.0, 3.0, Center::heavy, 0.5}, {1.0 / 3.0, 3.0, Center::heavy, 0.1},
    {5.0 / 6.0, 1.5, Center::light, 0.45},
};

}  // namespace

TEST(ClosedForm, ParamsFollowCaseTable) {
    auto q = TwoStepParams::make(1.0 / 3.0, 3.0, Center::heavy, 0.5);
    EXPECT_DOUBLE_EQ(q.sigma, std::pow(1.0 / 3.0, 0.25));
    EXPECT_DOUBLE_EQ(q.tau, std::pow(3.0, 0.25));
    EXPECT_EQ(q.delta, q.tau / q.sigma);
    EXPECT_EQ(q.jump_case(), JumpCase::rho_lt_a);
    auto l = TwoStepParams::make(1.0 / 3.0, 2.0, Center::light, 0.5);
    EXPECT_DOUBLE_EQ(l.sigma, std::pow(2.0, 0.25));
    EXPECT_NEAR(l.rho, 0.6, 1e-15);
    EXPECT_EQ(l.jump_case(), JumpCase::rho_gt_a);
    EXPECT_EQ(TwoStepParams::make(1.0 / 3.0, 3.0, Center::heavy, 0.25).jump_case(),
              JumpCase::rho_eq_a);
}

TEST(ClosedForm, HomogeneousOddModesAreSines) {
    // sin(m x) for even m solves the problem with piers at +-pi/2.
    auto r = find_eigenvalues(Density::constant(), PierLayout(0.5));
    EXPECT_NEAR(r[1].lambda, 16.0, 1e-10 * 16.0);
    EXPECT_NEAR(r[5].lambda, 256.0, 1e-10 * 256.0);
    EXPECT_NEAR(r[9].lambda, 1296.0, 1e-10 * 1296.0);
    EXPECT_EQ(r[1].parity, Parity::odd);
}

TEST(ClosedForm, HomogeneousMatchesGalerkinIdentityCase) {
    for (double a : {0.3, 0.5, 0.7}) {
        auto roots = find_eigenvalues(Density::constant(), PierLayout(a));
        auto spec = solve_weighted_spectrum(Density::constant(), PierLayout(a));
        for (std::size_t j = 0; j < 12; ++j) {
            EXPECT_NEAR(roots[j].lambda, spec.modes[j].lambda, 1e-10 * roots[j].lambda);
            EXPECT_EQ(roots[j].parity, spec.modes[j].parity);
        }
    }
}

TEST(ClosedForm, FiniteNearZero) {
    for (const auto& c : split_cases) {
        auto q = TwoStepParams::make(c.alpha, c.beta, c.center, c.a);
        EXPECT_TRUE(std::isfinite(det_even(1e-6, q)));
        EXPECT_TRUE(std::isfinite(det_odd(1e-6, q)));
    }
    auto q = TwoStepParams::make(1.0 / 3.0, 3.0, Center::heavy, 0.25);
    EXPECT_TRUE(std::isfinite(det_even(1e-6, q)));
    EXPECT_TRUE(std::isfinite(det_odd(1e-6, q)));
}

TEST(ClosedForm, CoincidentRelationsAreContinuousAcrossTheCaseSwitch) {
    for (auto [al, be, c] : {std::tuple{1.0 / 3.0, 3.0, Center::heavy},
                             std::tuple{0.5, 2.0, Center::light},
                             std::tuple{2.0 / 3.0, 1.5, Center::heavy}}) {
        const double rho = two_step_rho(al, be, c);
        auto on = find_eigenvalues(TwoStepParams::make(al, be, c, rho));
        auto below = find_eigenvalues(TwoStepParams::make(al, be, c, rho - 1e-6));
        auto above = find_eigenvalues(TwoStepParams::make(al, be, c, rho + 1e-6));
        ASSERT_EQ(on.front().jump_case, JumpCase::rho_eq_a);
        for (std::size_t j = 0; j < 12; ++j) {
            EXPECT_EQ(on[j].parity, below[j].parity);
            EXPECT_EQ(on[j].parity, above[j].parity);
            EXPECT_NEAR(on[j].lambda, below[j].lambda, 1e-4 * on[j].lambda);
            // Smooth in a: the coincident root sits at the midpoint.
            EXPECT_NEAR(on[j].lambda, 0.5 * (below[j].lambda + above[j].lambda),
                        1e-8 * on[j].lambda);
        }
        // Coincident roots against the gluing system with jump and pier merged.
        auto q = TwoStepParams::make(al, be, c, rho);
        auto pieces = q.pieces();
        for (std::size_t j = 0; j < 12; ++j) {
            auto fn = [&](double mu) { return gluing_determinant(mu, pieces, rho * pi, on[j].parity); };
            const double h = 1e-7 * on[j].mu;
            EXPECT_LT(fn(on[j].mu - h) * fn(on[j].mu + h), 0.0) << j;
        }
    }
}

TEST(ClosedForm, PrintedSystemsAgreeWhereWellConditioned) {
    for (const auto& c : split_cases) {
        auto q = TwoStepParams::make(c.alpha, c.beta, c.center, c.a);
        auto roots = find_eigenvalues(q, 12);
        for (const auto& r : roots) {
            if (r.mu * q.sigma * pi > 8.0) continue;
            auto f = [&](double mu) {
                return (r.parity == Parity::even ? printed_system_even(mu, q)
                                                 : printed_system_odd(mu, q))
                    .determinant();
            };
            const double h = 1e-6 * r.mu;
            EXPECT_LT(f(r.mu - h) * f(r.mu + h), 0.0)
                << c.alpha << " " << c.beta << " a=" << c.a << " mu=" << r.mu;
        }
    }
    EXPECT_THROW(printed_system_even(1.0, TwoStepParams::make(1.0 / 3.0, 3.0, Center::heavy, 0.25)),
                 std::invalid_argument);
}

TEST(ClosedForm, EachBracketHoldsOneRoot) {
    auto q = TwoStepParams::make(0.5, 2.0, Center::light, 0.8);
    auto roots = find_eigenvalues(q, 12);
    for (const auto& r : roots) {
        auto f = [&](double mu) { return r.parity == Parity::even ? det_even(mu, q) : det_odd(mu, q); };
        int changes = 0;
        double prev = f(r.mu - 0.01);
        for (int i = 1; i <= 200; ++i) {
            double cur = f(r.mu - 0.01 + i * 1e-4);
            if ((cur < 0.0) != (prev < 0.0)) ++changes;
            prev = cur;
        }
        EXPECT_EQ(changes, 1) << r.mu;
    }
}

TEST(ClosedForm, SpectrumInvariantsOnTableGrid) {
    std::vector<std::vector<double>> homogeneous;
    for (double a : default_pier_grid())
        homogeneous.push_back(lambdas(find_eigenvalues(Density::constant(), PierLayout(a))));
    for (Center c : {Center::heavy, Center::light})
        for (double al : default_alpha_grid())
            for (double be : default_beta_grid())
                for (std::size_t ia = 0; ia < default_pier_grid().size(); ++ia) {
                    const double a = default_pier_grid()[ia];
                    auto r = find_eigenvalues(TwoStepParams::make(al, be, c, a));
                    ASSERT_EQ(r.size(), 12u);
                    for (std::size_t j = 0; j < 12; ++j) {
                        EXPECT_DOUBLE_EQ(r[j].lambda, std::pow(r[j].mu, 4));
                        EXPECT_LE(r[j].lambda, homogeneous[ia][j] / al);
                        if (j > 0) {
                            EXPECT_GT(r[j].lambda - r[j - 1].lambda, 1e-8 * r[j - 1].lambda);
                            EXPECT_NE(r[j].parity, r[j - 1].parity);
                        }
                    }
                }
}

TEST(ClosedForm, ReportsMissingRoots) {
    RootScan scan;
    scan.mu_max = 2.0;
    EXPECT_THROW(find_eigenvalues(TwoStepParams::make(0.5, 2.0, Center::heavy, 0.5), 12, scan),
                 NumericalError);
}

TEST(ClosedForm, RejectsGeneralDensities) {
    Density p = from_indicator(0.5, 2.0, {{0.1, 0.3}, {1.0, 1.0 + pi / 3.0 - 0.2}});
    EXPECT_THROW(find_eigenvalues(p, PierLayout(0.5)), std::invalid_argument);
}

class Eigenfunctions : public ::testing::TestWithParam<Config> {};

TEST_P(Eigenfunctions, BoundaryOrthonormalityRayleigh) {
    const auto c = GetParam();
    auto q = TwoStepParams::make(c.alpha, c.beta, c.center, c.a);
    const Density p = q.density();
    auto roots = find_eigenvalues(q, 12);
    std::vector<PiecewiseFunction> e;
    for (const auto& r : roots) e.push_back(eigenfunction_closed_form(r, q));
    const auto cuts = oracle::cuts(p, c.a);
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double scale = std::abs(e[i].eval(0.0, roots[i].parity == Parity::even ? 0 : 1)) + 1.0;
        for (double x : {pi, -pi, c.a * pi, -c.a * pi}) EXPECT_NEAR(e[i].eval(x), 0.0, 1e-8 * scale);
        EXPECT_NEAR(e[i].eval(pi, 2), 0.0, 1e-8 * roots[i].lambda);
        if (roots[i].parity == Parity::even)
            EXPECT_GT(e[i].eval(0.0), 0.0);
        else
            EXPECT_GT(e[i].eval(0.0, 1), 0.0);
        for (std::size_t j = i; j < e.size(); ++j) {
            const double g = oracle::full_integral(cuts, [&](double x) {
                return p.eval(x) * e[i].eval(x) * e[j].eval(x);
            }, 1e-10);
            EXPECT_NEAR(g, i == j ? 1.0 : 0.0, 1e-6) << i << "," << j;
        }
        const double stiff = oracle::even_integral(cuts, [&](double x) {
            double v = e[i].eval(x, 2);
            return v * v;
        });
        EXPECT_NEAR(stiff / roots[i].lambda, 1.0, 1e-6);
    }
}

TEST_P(Eigenfunctions, GluingRegularity) {
    const auto c = GetParam();
    auto q = TwoStepParams::make(c.alpha, c.beta, c.center, c.a);
    auto roots = find_eigenvalues(q, 6);
    const double xr = q.rho * pi;
    const double xa = q.a * pi;
    for (const auto& r : roots) {
        auto e = eigenfunction_closed_form(r, q);
        const double s = std::pow(r.mu, 3) * 10.0;
        for (int d = 0; d <= 3; ++d)
            EXPECT_NEAR(e.eval(std::nextafter(xr, 0.0), d), e.eval(std::nextafter(xr, 4.0), d),
                        1e-7 * s);
        for (int d = 0; d <= 2; ++d)
            EXPECT_NEAR(e.eval(std::nextafter(xa, 0.0), d), e.eval(std::nextafter(xa, 4.0), d),
                        1e-7 * s);
    }
}

INSTANTIATE_TEST_SUITE_P(SplitCases, Eigenfunctions, ::testing::ValuesIn(split_cases));
