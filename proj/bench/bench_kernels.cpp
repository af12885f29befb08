// Serial reference vs OpenMP for the three parallel kernels. Each pair runs
// the same work; outputs are identical by construction.

#include <benchmark/benchmark.h>

#include "semsec/inner_bound.hpp"
#include "semsec/mc/mc_validate.hpp"
#include "semsec/outer_bound.hpp"

namespace {

using namespace semsec;

const GaussianSource kSrc{0.7, 1.0, 0.5};
const GaussianWiretapChannel kCh{1.0, 0.1, 0.15};

std::vector<double> lin(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

Execution policy(const benchmark::State& st) { return st.range(0) ? Execution::parallel : Execution::serial; }

void BM_TraceOuter(benchmark::State& st) {
  OuterGrid grid{lin(0.5, 10, 40), lin(0.05, 1, 40), {kSrc.var_s}};
  const auto targets = secrecy_targets(SecrecyMode::full_semantic, kSrc);
  for (auto _ : st) benchmark::DoNotOptimize(trace_outer(kSrc, kCh, 0.0, grid, targets, policy(st)));
}

void BM_SampleSystem(benchmark::State& st) {
  const auto p = InnerParams::equal_split(kCh, 1.0, 1.0, 0.7, 0.45);
  mc::McConfig cfg;
  cfg.n_samples = 1 << 20;
  cfg.exec = policy(st);
  for (auto _ : st) benchmark::DoNotOptimize(mc::sample_system(kSrc, kCh, p, cfg));
}

void BM_TraceInner(benchmark::State& st) {
  InnerSearchOptions opts;
  opts.multistarts = 16;
  opts.max_evals = 600;
  opts.exec = policy(st);
  const auto targets = secrecy_targets(SecrecyMode::full_semantic, kSrc);
  for (auto _ : st)
    benchmark::DoNotOptimize(trace_inner(kSrc, kCh, lin(2, 10, 4), lin(0.2, 0.8, 4), targets, opts));
}

}  // namespace

BENCHMARK(BM_TraceOuter)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleSystem)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TraceInner)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
