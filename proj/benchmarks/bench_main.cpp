#include <benchmark/benchmark.h>

#include "hbeam/hbeam.hpp"

using namespace hbeam;

namespace {

const TwoStepParams& two_step() {
    static const auto q = TwoStepParams::make(1.0 / 3.0, 3.0, Center::heavy, 0.4);
    return q;
}

void BM_DetEven(benchmark::State& st) {
    double mu = 1.3;
    for (auto _ : st) {
        benchmark::DoNotOptimize(det_even(mu, two_step()));
        mu += 1e-9;
    }
}
BENCHMARK(BM_DetEven);

void BM_FindEigenvalues(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(find_eigenvalues(two_step()));
}
BENCHMARK(BM_FindEigenvalues)->Unit(benchmark::kMillisecond);

void BM_BuildBasis(benchmark::State& st) {
    const int N = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(build_homogeneous_basis(PierLayout(0.45), N));
}
BENCHMARK(BM_BuildBasis)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_WeightedSpectrum(benchmark::State& st) {
    auto basis = cached_basis(PierLayout(0.45), static_cast<int>(st.range(0)));
    const Density p = from_indicator(0.5, 2.0, {{0.0, 0.3}, {0.9, 1.4}, {2.2, 2.2 + pi / 3.0 - 0.8}});
    for (auto _ : st) benchmark::DoNotOptimize(solve_weighted_spectrum(p, basis));
}
BENCHMARK(BM_WeightedSpectrum)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_OptimizeDensity(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(optimize_density(PierLayout(0.5), 1.0 / 3.0, 3.0));
}
BENCHMARK(BM_OptimizeDensity)->Unit(benchmark::kMillisecond);

void BM_HillMonodromy(benchmark::State& st) {
    const double D = critical_amplitude(2.44, 16.0);
    for (auto _ : st) benchmark::DoNotOptimize(hill_monodromy(2.44, 16.0, 1.2 * D));
}
BENCHMARK(BM_HillMonodromy)->Unit(benchmark::kMicrosecond);

void BM_Simulate(benchmark::State& st) {
    const auto n = st.range(0);
    Eigen::VectorXd lam(n);
    for (Eigen::Index j = 0; j < n; ++j) lam(j) = std::pow(2.0 + j, 4) / 16.0;
    ModalSystem sys{lam};
    ModalState s0{Eigen::VectorXd::Constant(n, 0.1), Eigen::VectorXd::Zero(n), 0.0};
    const double dt = default_time_step(sys, s0);
    SimulateOptions opt;
    opt.record_every = 1u << 30;
    for (auto _ : st) benchmark::DoNotOptimize(simulate(sys, s0, 10000 * dt, dt, opt));
    st.SetItemsProcessed(st.iterations() * 10000);
}
BENCHMARK(BM_Simulate)->Arg(2)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
