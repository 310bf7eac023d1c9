#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hbeam/density.hpp"
#include "hbeam/common.hpp"

using namespace hbeam;

TEST(TwoStep, JumpParameters) {
    EXPECT_NEAR(two_step_rho(0.5, 1.5, Center::heavy), 0.50, 1e-15);
    EXPECT_NEAR(two_step_rho(1.0 / 3.0, 3.0, Center::heavy), 0.25, 1e-15);
    EXPECT_NEAR(two_step_rho(1.0 / 3.0, 2.0, Center::light), 0.60, 1e-15);
}

TEST(TwoStep, ValuesAndMass) {
    Density p = make_two_step(0.5, 1.5, Center::heavy);
    EXPECT_EQ(p.eval(0.0), 1.5);
    EXPECT_EQ(p.eval(pi), 0.5);
    EXPECT_EQ(p.eval(-pi), 0.5);
    EXPECT_NEAR(p.mass(), 2.0 * pi, 1e-12);
    Density q = make_two_step(1.0 / 3.0, 2.0, Center::light);
    EXPECT_EQ(q.eval(0.0), 1.0 / 3.0);
    EXPECT_EQ(q.eval(pi), 2.0);
    EXPECT_NEAR(q.mass(), 2.0 * pi, 1e-12);
}

TEST(TwoStep, RejectsBadBounds) {
    EXPECT_THROW(make_two_step(1.0, 2.0, Center::heavy), std::invalid_argument);
    EXPECT_THROW(make_two_step(0.5, 1.0, Center::light), std::invalid_argument);
    EXPECT_THROW(make_two_step(0.0, 2.0, Center::light), std::invalid_argument);
}

TEST(Density, BreakpointTakesLeftValue) {
    Density p = make_two_step(0.5, 2.0, Center::heavy);
    const double b = p.breakpoints()[0];
    EXPECT_EQ(p.eval(b), 2.0);
    EXPECT_EQ(p.eval(-b), 2.0);
    EXPECT_EQ(p.eval(std::nextafter(b, 4.0)), 0.5);
}

TEST(Density, EvenBySampling) {
    Density p = from_indicator(1.0 / 3.0, 3.0, {{0.3, 0.5}, {1.0, 1.0 + pi / 4.0 - 0.2}});
    for (int i = 0; i <= 200; ++i) {
        double x = pi * i / 200.0;
        EXPECT_EQ(p.eval(x), p.eval(-x));
    }
}

TEST(Density, ConstantIsHomogeneous) {
    Density p = Density::constant();
    EXPECT_TRUE(p.is_homogeneous());
    EXPECT_NEAR(p.mass(), 2.0 * pi, 1e-12);
    EXPECT_TRUE(p.violations().empty());
    Density q = Density::constant(0.5, 2.0);
    EXPECT_TRUE(q.violations().empty());
    EXPECT_EQ(q.eval(1.0), 1.0);
}

TEST(Density, InvalidRecordsAreFlagged) {
    Density p = Density::unchecked(0.5, 2.0, {1.0}, {2.0, 2.0});
    EXPECT_NEAR(p.mass(), 4.0 * pi, 1e-12);
    EXPECT_FALSE(p.violations().empty());
    EXPECT_THROW(Density::create(0.5, 2.0, {1.0}, {2.0, 2.0}), std::invalid_argument);
    EXPECT_THROW(Density::create(0.5, 2.0, {2.0, 1.0}, {2.0, 0.5, 2.0}), std::invalid_argument);
    EXPECT_THROW(Density::create(0.5, 2.0, {}, {3.0}), std::invalid_argument);
}

TEST(FromIndicator, ReproducesHeavyTwoStepBitForBit) {
    for (double al : {5.0 / 6.0, 2.0 / 3.0, 0.5, 1.0 / 3.0}) {
        for (double be : {1.5, 2.0, 2.5, 3.0}) {
            Density ref = make_two_step(al, be, Center::heavy);
            Density p = from_indicator(al, be, {{0.0, ref.breakpoints()[0]}});
            EXPECT_EQ(p, ref);
        }
    }
}

TEST(FromIndicator, HalfBeamExample) {
    Density p = from_indicator(0.5, 1.5, {{0.0, pi / 2.0}});
    EXPECT_EQ(p, make_two_step(0.5, 1.5, Center::heavy));
}

TEST(FromIndicator, LightTwoStep) {
    Density ref = make_two_step(0.5, 2.0, Center::light);
    Density p = from_indicator(0.5, 2.0, {{ref.breakpoints()[0], pi}});
    EXPECT_NEAR(p.breakpoints()[0], ref.breakpoints()[0], 1e-15);
    EXPECT_EQ(p.values(), ref.values());
}

TEST(FromIndicator, RejectsWrongMass) {
    EXPECT_THROW(from_indicator(0.5, 1.5, {}), std::invalid_argument);
    EXPECT_THROW(from_indicator(0.5, 1.5, {{0.0, 1.0}}), std::invalid_argument);
}

TEST(FromIndicator, RandomUnionsAreAdmissible) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double al = 0.2 + 0.7 * u(rng);
        const double be = 1.1 + 2.0 * u(rng);
        const double m = heavy_half_measure(al, be);
        const int k = 1 + trial % 4;
        std::vector<double> w(static_cast<std::size_t>(k)), gaps(static_cast<std::size_t>(k) + 1);
        double ws = 0.0, gs = 0.0;
        for (auto& x : w) ws += (x = 0.1 + u(rng));
        for (auto& x : gaps) gs += (x = 0.1 + u(rng));
        std::vector<Interval> set;
        double pos = 0.0;
        for (int i = 0; i < k; ++i) {
            pos += gaps[static_cast<std::size_t>(i)] / gs * (pi - m);
            double len = w[static_cast<std::size_t>(i)] / ws * m;
            set.push_back({pos, pos + len});
            pos += len;
        }
        Density p = from_indicator(al, be, set);
        EXPECT_TRUE(p.violations().empty());
        EXPECT_NEAR(p.mass(), 2.0 * pi, 1e-12);
        EXPECT_TRUE(p.is_bang_bang());
        EXPECT_EQ(p.jumps(), static_cast<std::size_t>(2 * k));
    }
}

TEST(PierLayout, Bounds) {
    EXPECT_NO_THROW(PierLayout(0.5));
    EXPECT_THROW(PierLayout(0.0), std::invalid_argument);
    EXPECT_THROW(PierLayout(1.0), std::invalid_argument);
    EXPECT_THROW(PierLayout(1.2), std::invalid_argument);
    EXPECT_DOUBLE_EQ(PierLayout(0.25).pier(), 0.25 * pi);
}

TEST(Density, JsonRoundTrip) {
    Density p = from_indicator(1.0 / 3.0, 3.0, {{0.2, 0.5}, {1.0, 1.0 + pi / 4.0 - 0.3}});
    Density q = density_from_json(to_json(p));
    EXPECT_EQ(p, q);
    EXPECT_THROW(density_from_json("{\"alpha\": 1}"), std::invalid_argument);
    EXPECT_THROW(density_from_json("not json"), std::invalid_argument);
}
