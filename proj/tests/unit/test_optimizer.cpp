#include <cmath>

#include <gtest/gtest.h>

#include "hbeam/optimizer.hpp"
#include "hbeam/stability.hpp"

using namespace hbeam;

namespace {

GProfile synthetic(const std::function<double(double)>& f) {
    GProfile p;
    p.x = profile_grid();
    for (double x : p.x) p.g.push_back(f(x));
    return p;
}

}  // namespace

TEST(LevelSet, LinearProfile) {
    auto p = synthetic([](double x) { return -x; });
    auto s = level_threshold_measure(p, pi / 2.0);
    EXPECT_NEAR(s.t, -pi / 2.0, 1e-9);
    ASSERT_EQ(s.heavy_set.size(), 1u);
    EXPECT_EQ(s.heavy_set[0].lo, 0.0);
    EXPECT_NEAR(s.heavy_set[0].hi, pi / 2.0, 1e-9);
    auto all = level_threshold_measure(p, pi);
    EXPECT_EQ(all.t, -pi);
    EXPECT_EQ(all.measure, pi);
    EXPECT_THROW(level_threshold_measure(p, 0.0), std::invalid_argument);
}

TEST(LevelSet, SeveralIntervals) {
    auto p = synthetic([](double x) { return std::cos(3.0 * x); });
    auto s = superlevel_set(p, 0.0);
    ASSERT_EQ(s.heavy_set.size(), 2u);
    EXPECT_NEAR(s.heavy_set[0].hi, pi / 6.0, 1e-6);
    EXPECT_NEAR(s.heavy_set[1].lo, pi / 2.0, 1e-6);
    EXPECT_NEAR(s.heavy_set[1].hi, 5.0 * pi / 6.0, 1e-6);
    EXPECT_NEAR(s.measure, pi / 2.0, 1e-6);
    auto lv = level_threshold(p, 0.5, 2.0);
    EXPECT_NEAR(lv.measure, pi / 3.0, level_measure_tolerance);
}

TEST(LevelSet, PlateauIsReported) {
    auto flat = synthetic([](double x) { return x < 1.0 ? 1.0 : 0.0; });
    EXPECT_THROW(level_threshold_measure(flat, 2.0), PlateauError);
    auto zero = synthetic([](double) { return 0.0; });
    EXPECT_THROW(level_threshold(zero, 0.5, 2.0), PlateauError);
}

TEST(GProfile, ZerosAndSignRule) {
    for (double a : {0.3, 0.5, 0.75}) {
        Density p = make_two_step(0.5, 2.0, Center::light);
        auto spec = solve_weighted_spectrum(p, PierLayout(a));
        for (std::size_t k = 1; k <= 11; ++k) {
            auto g = g_profile(spec, k);
            EXPECT_NEAR(g.at_pier, 0.0, 1e-6);
            EXPECT_NEAR(g.at_end, 0.0, 1e-6);
            EXPECT_NE(g.lower_parity, g.upper_parity);
            if (g.lower_parity == Parity::even)
                EXPECT_GT(g.at_zero, 0.0);
            else
                EXPECT_LT(g.at_zero, 0.0);
            EXPECT_NEAR(g.g.front(), g.at_zero, 1e-9 * (1.0 + std::abs(g.at_zero)));
        }
        EXPECT_THROW(g_profile(spec, 12), std::out_of_range);
    }
}

TEST(Optimizer, IterateIsAdmissible) {
    for (auto [al, be] : {std::pair{0.5, 2.0}, std::pair{1.0 / 3.0, 3.0}, std::pair{5.0 / 6.0, 1.5}}) {
        Density q = iterate_density(Density::constant(al, be), PierLayout(0.5), al, be);
        EXPECT_TRUE(q.is_bang_bang());
        EXPECT_NEAR(q.mass(), 2.0 * pi, 1e-6);
        EXPECT_TRUE(q.violations().empty());
    }
}

TEST(Optimizer, KnownOptima) {
    auto r = optimize_density(PierLayout(0.5), 1.0 / 3.0, 3.0);
    EXPECT_NEAR(r.energy / 100.0, 12.07, 0.03 * 12.07);
    EXPECT_TRUE(r.failures.empty());
    EXPECT_EQ(r.trace.size(), 33u);
    for (const auto& t : r.trace) EXPECT_LE(t.energy, r.energy);
    EXPECT_EQ(r.jumps, r.best.jumps());
    auto light = optimize_density(PierLayout(0.4), 5.0 / 6.0, 1.5);
    auto hom = sweep_pier(1.0, 1.0, {0.4}, SweepMode::full);
    EXPECT_GE(light.energy, hom.optimum().energy);
}

TEST(Optimizer, HomogeneousMaterialDegenerates) {
    auto r = optimize_density(PierLayout(0.5), 1.0, 1.0);
    EXPECT_TRUE(r.best.is_homogeneous());
    EXPECT_EQ(r.trace.size(), 1u);
    EXPECT_NEAR(r.energy, 216.953, 1e-2);
}

TEST(Optimizer, FixedPointStopAndHook) {
    OptimizerOptions opt;
    opt.stop_at_fixed_point = true;
    std::size_t calls = 0, profiles = 0;
    opt.on_iterate = [&](const IterateRecord&, const WeightedSpectrum& s, const StabilityReport& rep,
                         const GProfile* g) {
        ++calls;
        if (g) ++profiles;
        EXPECT_EQ(s.modes.size(), 12u);
        EXPECT_EQ(rep.pairs.size(), 11u);
    };
    auto r = optimize_density(PierLayout(0.5), 0.5, 2.0, opt);
    EXPECT_EQ(calls, r.trace.size());
    EXPECT_LE(profiles, calls);
    EXPECT_LE(r.trace.size(), 33u);
}

TEST(Sweep, TwoStepHeavyOptimum) {
    std::size_t hooks = 0;
    SweepOptions opt;
    opt.workers = 1;
    opt.on_two_step = [&](const Density&, const PierLayout&, const std::vector<EigenRoot>& r) {
        ++hooks;
        EXPECT_EQ(r.size(), 12u);
    };
    auto s = sweep_pier(1.0 / 3.0, 2.0, default_pier_grid(), SweepMode::two_step_heavy, opt);
    EXPECT_EQ(hooks, default_pier_grid().size());
    EXPECT_DOUBLE_EQ(s.a_opt(), 0.40);
    EXPECT_NEAR(s.optimum().energy / 100.0, 3.77, 0.02);
    ASSERT_TRUE(s.optimum().rho.has_value());
    for (const auto& row : s.rows) EXPECT_LE(row.energy, s.optimum().energy);
}

TEST(Sweep, SingletonAndErrors) {
    auto s = sweep_pier(0.5, 2.0, {0.5}, SweepMode::two_step_light);
    EXPECT_EQ(s.rows.size(), 1u);
    EXPECT_EQ(s.best, 0u);
    EXPECT_THROW(sweep_pier(0.5, 2.0, {}, SweepMode::two_step_light), std::invalid_argument);
    EXPECT_THROW(sweep_pier(0.5, 2.0, {1.2}, SweepMode::two_step_light), std::invalid_argument);
    EXPECT_THROW(grand_optimum({}), std::invalid_argument);
}

TEST(Sweep, OptimumNotBelowSeeds) {
    // The full optimizer evaluates both two-step seeds, so it dominates them.
    for (double al : default_alpha_grid())
        for (double be : default_beta_grid()) {
            auto full = sweep_pier(al, be, {0.5}, SweepMode::full);
            auto h = sweep_pier(al, be, {0.5}, SweepMode::two_step_heavy);
            auto l = sweep_pier(al, be, {0.5}, SweepMode::two_step_light);
            EXPECT_GE(full.optimum().energy, 216.9);
            EXPECT_GE(full.optimum().energy, h.optimum().energy * (1.0 - 5e-3));
            EXPECT_GE(full.optimum().energy, l.optimum().energy * (1.0 - 5e-3));
        }
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
    SweepOptions one, two;
    one.workers = 1;
    two.workers = 2;
    std::vector<double> A{0.3, 0.5, 0.7};
    auto r1 = sweep_materials({0.5, 1.0 / 3.0}, {2.0}, A, SweepMode::full, one);
    auto r2 = sweep_materials({0.5, 1.0 / 3.0}, {2.0}, A, SweepMode::full, two);
    ASSERT_EQ(r1.size(), r2.size());
    for (std::size_t c = 0; c < r1.size(); ++c)
        for (std::size_t i = 0; i < A.size(); ++i) {
            EXPECT_EQ(r1[c].rows[i].energy, r2[c].rows[i].energy);
            EXPECT_EQ(r1[c].rows[i].best, r2[c].rows[i].best);
        }
    EXPECT_EQ(grand_optimum(r1), grand_optimum(r2));
}
