// Microbenchmarks for the hot path: the step exponential, full propagation,
// the gradient pass, and the trust-region LP. Run with --benchmark_filter=...
// to isolate one.

#include <benchmark/benchmark.h>

#include <cmath>

#include "crpulse/model.hpp"
#include "crpulse/operators.hpp"
#include "crpulse/propagate.hpp"
#include "crpulse/pulse.hpp"
#include "crpulse/robust.hpp"
#include "crpulse/rng.hpp"
#include "crpulse/scp.hpp"

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

crpulse::SystemModel stock_model(int levels) {
    crpulse::SystemModel m;
    m.omega1 = kTwoPi * 5.114;
    m.omega2 = kTwoPi * 4.914;
    m.delta1 = -kTwoPi * 0.330;
    m.delta2 = -kTwoPi * 0.330;
    m.coupling_j = kTwoPi * 0.0038;
    m.drive_freq = crpulse::dressed_frequencies(m).second;
    m.levels = levels;
    return m;
}

const double kAmpMax = kTwoPi * 0.300;

void bm_expm_step(benchmark::State& state) {
    const crpulse::DressedSystem sys = crpulse::dress(stock_model(3));
    const crpulse::ComplexMatrix h =
        sys.h0_dressed + 0.3 * kAmpMax * sys.controls[0] +
        0.1 * kAmpMax * sys.controls[3];
    for (auto _ : state) {
        benchmark::DoNotOptimize(crpulse::expm_hermitian(h, 0.5));
    }
}
BENCHMARK(bm_expm_step);

void bm_dress(benchmark::State& state) {
    const crpulse::SystemModel m = stock_model(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(crpulse::dress(m));
    }
}
BENCHMARK(bm_dress);

void bm_propagate(benchmark::State& state) {
    const crpulse::DressedSystem sys =
        crpulse::dress(stock_model(static_cast<int>(state.range(0))));
    const crpulse::PulseSet pulse =
        crpulse::random_pulse(0.5, 120, kAmpMax, 0.3, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(crpulse::propagate(sys, pulse));
    }
    state.SetItemsProcessed(state.iterations() * pulse.n_steps);
}
BENCHMARK(bm_propagate)->Arg(2)->Arg(3);

void bm_propagate_with_gradients(benchmark::State& state) {
    const crpulse::DressedSystem sys =
        crpulse::dress(stock_model(static_cast<int>(state.range(0))));
    const crpulse::PulseSet pulse =
        crpulse::random_pulse(0.5, 120, kAmpMax, 0.3, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(crpulse::propagate_with_gradients(sys, pulse));
    }
    state.SetItemsProcessed(state.iterations() * pulse.n_steps);
}
BENCHMARK(bm_propagate_with_gradients)->Arg(2)->Arg(3);

void bm_ensemble_evaluation(benchmark::State& state) {
    crpulse::UncertaintySpec spec;  // 3 samples, +/-10%
    const crpulse::UncertaintyEnsemble ens =
        crpulse::sample_ensemble(stock_model(3), spec);
    const crpulse::PulseSet pulse =
        crpulse::random_pulse(0.5, 120, kAmpMax, 0.3, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(crpulse::evaluate_ensemble(ens, pulse));
    }
}
BENCHMARK(bm_ensemble_evaluation);

void bm_lp_subproblem(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const int n = 3;
    crpulse::UniformRng rng(11);
    Eigen::VectorXd f(n);
    Eigen::MatrixXd g(n, dim);
    Eigen::VectorXd current(dim);
    for (int i = 0; i < n; ++i) {
        f(i) = 0.5 + 0.4 * rng.next_unit();
        for (int d = 0; d < dim; ++d) g(i, d) = rng.next_symmetric(0.01);
    }
    for (int d = 0; d < dim; ++d) current(d) = rng.next_symmetric(0.8 * kAmpMax);
    const double rho = 0.05 * kAmpMax;
    for (auto _ : state) {
        benchmark::DoNotOptimize(crpulse::solve_subproblem(
            f, g, current, rho, kAmpMax, crpulse::Objective::worst_case));
    }
}
BENCHMARK(bm_lp_subproblem)->Arg(80)->Arg(320)->Arg(480);

}  // namespace

BENCHMARK_MAIN();
