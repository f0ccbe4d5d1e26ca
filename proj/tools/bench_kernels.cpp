// Serial reference against the OpenMP kernels. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include <random>

#include "altxy/ed.hpp"
#include "altxy/finite_chain.hpp"
#include "altxy/momentum_observables.hpp"
#include "altxy/quadrature.hpp"
#include "altxy/quench.hpp"

using namespace altxy;

namespace {

const SystemParams kParams{1.0, 0.8, 0.5, 0.3};

void BM_PairStateQuadrature(benchmark::State& st) {
  const bool par = st.range(0) != 0;
  const auto T = Temperature::inverse(2.0);
  const VectorIntegrand f = [&](double phi, double* out) {
    const auto e = pair_expectations(ces_block_state(kParams, T, phi), phi);
    for (int k = 0; k < 6; ++k) out[k] = e[k];
  };
  for (auto _ : st) benchmark::DoNotOptimize(fixed_rule(f, 6, 0.0, 1.5707963267948966, 1024, {}, par));
}
BENCHMARK(BM_PairStateQuadrature)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExactChain(benchmark::State& st) {
  const bool par = st.range(0) != 0;
  for (auto _ : st)
    benchmark::DoNotOptimize(exact_chain_observables(kParams, Temperature::inverse(2.0), 1024, std::nullopt, par));
}
BENCHMARK(BM_ExactChain)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SpinApply(benchmark::State& st) {
  const bool par = st.range(0) != 0;
  const SpinHamiltonian h(kParams, 18);
  std::vector<double> in(h.dim()), out(h.dim());
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (double& x : in) x = g(rng);
  for (auto _ : st) {
    h.apply(in.data(), out.data(), par);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_SpinApply)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TimeSeries(benchmark::State& st) {
  const bool par = st.range(0) != 0;
  QuenchSpec q;
  q.pre = {1.0, 0.8, 1.0, 2.0};
  q.size = SystemSize::pair_sum(512);
  std::vector<double> times;
  for (int i = 0; i < 64; ++i) times.push_back(0.2 * i);
  for (auto _ : st) benchmark::DoNotOptimize(time_series(q, Measure::LN, times, par));
}
BENCHMARK(BM_TimeSeries)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
