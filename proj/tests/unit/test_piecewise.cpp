#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hbeam/piecewise.hpp"
#include "oracles.hpp"

using namespace hbeam;

namespace {

// Direct real-arithmetic evaluation of the anchored basis combination.
double direct(double x, double x0, double x1, double k, const double c[4], int d) {
    double y = x - x0;
    double kd = std::pow(k, d);
    double trig[4][2] = {{std::cos(k * y), std::sin(k * y)},
                         {-std::sin(k * y), std::cos(k * y)},
                         {-std::cos(k * y), -std::sin(k * y)},
                         {std::sin(k * y), -std::cos(k * y)}};
    double e1 = std::pow(-1.0, d) * std::exp(-k * y);
    double e2 = std::exp(-k * (x1 - x));
    return kd * (c[0] * trig[d][0] + c[1] * trig[d][1] + c[2] * e1 + c[3] * e2);
}

PiecewiseFunction random_function(std::mt19937_64& rng, Parity par, double split) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> kk(0.3, 9.0);
    std::vector<FunctionPiece> pieces;
    pieces.push_back(anchored_piece(0.0, split, kk(rng), u(rng), u(rng), u(rng), u(rng)));
    pieces.push_back(anchored_piece(split, pi, kk(rng), u(rng), u(rng), u(rng), u(rng)));
    return PiecewiseFunction(par, std::move(pieces));
}

}  // namespace

TEST(Piecewise, AnchoredPieceMatchesDirectFormula) {
    const double c[4] = {0.7, -0.3, 1.1, -0.4};
    PiecewiseFunction f(Parity::even, {anchored_piece(0.0, pi, 3.7, c[0], c[1], c[2], c[3])});
    for (int d = 0; d < 4; ++d)
        for (double x : {0.0, 0.3, 1.7, 2.9, pi})
            EXPECT_NEAR(f.eval(x, d), direct(x, 0.0, pi, 3.7, c, d), 1e-11 * std::pow(3.7, d));
}

TEST(Piecewise, ParityExtension) {
    std::mt19937_64 rng(3);
    for (Parity par : {Parity::even, Parity::odd}) {
        auto f = random_function(rng, par, 1.0);
        for (int d = 0; d < 4; ++d)
            for (double x : {0.2, 1.3, 2.8})
                EXPECT_DOUBLE_EQ(f.eval(-x, d), reflection_sign(par, d) * f.eval(x, d));
    }
}

TEST(Piecewise, ProductIntegralMatchesAdaptiveQuadrature) {
    std::mt19937_64 rng(11);
    Density w = make_two_step(1.0 / 3.0, 3.0, Center::heavy);
    for (int trial = 0; trial < 12; ++trial) {
        Parity pf = trial % 2 ? Parity::odd : Parity::even;
        Parity pg = trial % 3 ? Parity::odd : Parity::even;
        auto f = random_function(rng, pf, 1.1);
        auto g = random_function(rng, pg, 1.9);
        for (int df : {0, 2})
            for (int dg : {0, 1, 2}) {
                const double exact = product_integral(f, df, g, dg, &w);
                const auto pts = oracle::cuts(w, 1.1 / pi);
                std::vector<double> all = pts;
                all.push_back(1.9);
                all = merge_points(all);
                const double ref = oracle::full_integral(
                    all, [&](double x) { return w.eval(x) * f.eval(x, df) * g.eval(x, dg); });
                EXPECT_NEAR(exact, ref, 1e-9 * (1.0 + std::abs(ref)));
            }
    }
}

TEST(Piecewise, OppositeParityIntegralVanishes) {
    std::mt19937_64 rng(5);
    auto f = random_function(rng, Parity::even, 1.0);
    auto g = random_function(rng, Parity::odd, 2.0);
    EXPECT_EQ(product_integral(f, 0, g, 0), 0.0);
    EXPECT_NE(product_integral(f, 1, g, 0), 0.0);
}

TEST(Piecewise, LargeWavenumbersStayFinite) {
    PiecewiseFunction f(Parity::even, {anchored_piece(0.0, pi, 150.0, 1.0, 0.5, 0.2, 0.3)});
    const double v = product_integral(f, 2, f, 2);
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GT(v, 0.0);
}
