#include <benchmark/benchmark.h>

#include "symgf/compose.hpp"
#include "symgf/lie.hpp"
#include "symgf/verify.hpp"

using namespace symgf;

namespace {

void BM_StationaryPointLie(benchmark::State& state) {
  const MonoidGenFun s = lie_monoid(LieStructure::so3(), 4);
  const GenFun inner = tensor(s, identity_genfun(3));
  const Vec p{0.002, -0.001, 0.003, 0.001, 0.002, -0.002, 0.001, 0.0, 0.002};
  const Vec x{0.3, -0.5, 0.7};
  NewtonOptions opts;
  opts.branch_check = state.range(0) != 0;
  for (auto _ : state) {
    auto sp = stationary_point(s, inner, p, x, opts);
    benchmark::DoNotOptimize(sp.value);
  }
}
BENCHMARK(BM_StationaryPointLie)->Arg(0)->Arg(1);

void BM_CompositeJets(benchmark::State& state) {
  const MonoidGenFun s = lie_monoid(LieStructure::so3(), 4);
  const GenFun inner = tensor(s, identity_genfun(3));
  const Vec p{0.002, -0.001, 0.003, 0.001, 0.002, -0.002, 0.001, 0.0, 0.002};
  const Vec x{0.3, -0.5, 0.7};
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto c = evaluate_composite(s, inner, p, x, order);
    benchmark::DoNotOptimize(c.taylor.value());
  }
}
BENCHMARK(BM_CompositeJets)->DenseRange(0, 3);

void BM_AssociativitySuite(benchmark::State& state) {
  const MonoidGenFun s = lie_monoid(LieStructure::so3(), 4);
  CheckOptions opts;
  opts.grid.n = 200;
  opts.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = check_associativity(s, opts);
    benchmark::DoNotOptimize(r.max);
  }
}
BENCHMARK(BM_AssociativitySuite)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
