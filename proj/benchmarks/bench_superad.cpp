#include <benchmark/benchmark.h>

#include "superad/coeffs.hpp"
#include "superad/frames.hpp"
#include "superad/propagate.hpp"

using namespace superad;

static void BM_BuildCoefficients(benchmark::State& state) {
  int nmax = static_cast<int>(state.range(0));
  for (auto _ : state) {
    CoefficientTable tb = build_coefficients(nmax, 0.5);
    benchmark::DoNotOptimize(tb.a(nmax, 0));
  }
}
BENCHMARK(BM_BuildCoefficients)->Arg(40)->Arg(200)->Arg(400);

static void BM_FrameEval(benchmark::State& state) {
  ModelParams p{0.5, 1.0, 0.1};
  TruncationChoice ch = choose_truncation(p);
  FrameBank bank(p, ch.n);
  double t = -3.0;
  for (auto _ : state) {
    FrameEvaluation fr = bank.frame_at(t);
    benchmark::DoNotOptimize(fr.rho);
    t += 1e-6;
  }
}
BENCHMARK(BM_FrameEval);

static void BM_CouplingExact(benchmark::State& state) {
  ModelParams p{0.5, 1.0, 0.05};
  TruncationChoice ch = choose_truncation(p);
  FrameBank bank(p, ch.n);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bank.coupling_exact(t).mantissa);
    t += 1e-6;
  }
}
BENCHMARK(BM_CouplingExact);

static void BM_OptimalPropagation(benchmark::State& state) {
  ModelParams p{0.5, 1.0, 0.2};
  TruncationChoice ch = choose_truncation(p);
  for (auto _ : state) {
    PropagationRecord rec =
        integrate_propagator(Basis::optimal, -10.0, 10.0, p, ch, {10.0});
    benchmark::DoNotOptimize(rec.K.back());
  }
}
BENCHMARK(BM_OptimalPropagation);

BENCHMARK_MAIN();
