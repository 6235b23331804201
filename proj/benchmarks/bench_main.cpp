#include <benchmark/benchmark.h>

#include <cmath>

#include "kklcsd/kernel.hpp"
#include "kklcsd/observer.hpp"
#include "kklcsd/process_model.hpp"
#include "kklcsd/reconstruct.hpp"
#include "kklcsd/tikhonov.hpp"

using namespace kklcsd;

namespace {

Scenario reference_scenario(std::size_t n) {
    const Grid grid(0.0, 10.0, n, 0.0, 10.0, n);
    const auto ts = grid.ts();
    return Scenario{grid,
                    Signal::constant(grid.xs(), 0.0),
                    Signal::sample(ts, [](double t) { return truncated_gaussian(t, 3.0, 1.0, 1.0, 0.0, 6.0, Taper::Smooth); }),
                    DirectGrowth{Signal::sample(ts, [](double t) { return 0.92 + 0.08 * std::exp(-t / 3.0); })},
                    SensorModel{},
                    0.0};
}

void BM_KernelBank(benchmark::State& state) {
    const Scenario sc = reference_scenario(static_cast<std::size_t>(state.range(0)));
    const LambdaBank lambdas = LambdaBank::spaced(-100.0, -1.0, 2 * sc.grid.n_x());
    for (auto _ : state) benchmark::DoNotOptimize(compute_kernel_bank(lambdas, sc.growth_signal(), sc.grid, 1));
}
BENCHMARK(BM_KernelBank)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ObserverBank(benchmark::State& state) {
    const Scenario sc = reference_scenario(static_cast<std::size_t>(state.range(0)));
    const Signal y = output_signal(simulate(sc));
    const LambdaBank lambdas = LambdaBank::spaced(-100.0, -1.0, 2 * sc.grid.n_x());
    const std::vector<double> z0(lambdas.size(), 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(run_observer_bank(lambdas, y, z0));
}
BENCHMARK(BM_ObserverBank)->Arg(100)->Arg(400);

void BM_Reconstruct(benchmark::State& state) {
    const Scenario sc = reference_scenario(100);
    const LambdaBank lambdas = LambdaBank::spaced(-100.0, -1.0, 200);
    const KernelBank kernels = compute_kernel_bank(lambdas, sc.growth_signal(), sc.grid);
    const ObserverBank obs = run_observer_bank(lambdas, output_signal(simulate(sc)), std::vector<double>(200, 0.0));
    TikhonovConfig tk;
    tk.mode = state.range(0) == 0 ? SolveMode::ClosedForm : SolveMode::NonnegativeIterative;
    ReconstructOptions options;
    options.support_limit = zero_tail_support(sc.grid, sc.growth_signal(), sc.xbar);
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct(kernels, obs, tk, options));
}
BENCHMARK(BM_Reconstruct)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
