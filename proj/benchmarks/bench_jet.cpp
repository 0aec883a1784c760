#include <benchmark/benchmark.h>

#include <random>

#include "symgf/jet.hpp"

using namespace symgf;

namespace {

Jet random_jet(std::mt19937_64& rng, int nvars, int order) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Jet j(nvars, order);
  for (auto& c : j.coeffs()) c = u(rng);
  return j;
}

void BM_JetMultiply(benchmark::State& state) {
  const int nvars = static_cast<int>(state.range(0));
  const int order = static_cast<int>(state.range(1));
  std::mt19937_64 rng(1);
  const Jet a = random_jet(rng, nvars, order);
  const Jet b = random_jet(rng, nvars, order);
  for (auto _ : state) {
    Jet c = a * b;
    benchmark::DoNotOptimize(c.coeffs().data());
  }
  state.counters["coeffs"] = static_cast<double>(a.coeffs().size());
}
BENCHMARK(BM_JetMultiply)->ArgsProduct({{2, 6, 12}, {1, 2, 3}});

void BM_JetSin(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Jet a = random_jet(rng, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    Jet c = sin(a);
    benchmark::DoNotOptimize(c.coeffs().data());
  }
}
BENCHMARK(BM_JetSin)->Arg(3)->Arg(9);

void BM_Substitute(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  const Jet t = random_jet(rng, n, 3);
  std::vector<Jet> args;
  for (int i = 0; i < n; ++i) args.push_back(random_jet(rng, n, 3));
  for (auto _ : state) {
    Jet c = substitute(t, args);
    benchmark::DoNotOptimize(c.coeffs().data());
  }
}
BENCHMARK(BM_Substitute)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
