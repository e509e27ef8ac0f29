#include <benchmark/benchmark.h>

#include "ppa/calculus.hpp"
#include "ppa/iteration.hpp"
#include "ppa/natural.hpp"

namespace {

void BM_Iteration(benchmark::State& state) {
  const ppa::Point center{1.0, -1.0};
  const ppa::ResolventOperator op(ppa::QuadraticProx{center, 1.0}, center);
  const ppa::Schedule s;
  for (auto _ : state) {
    auto t = ppa::run(op, s, ppa::Point{3.0, 2.0}, ppa::Point{0.0, 0.0}, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(t.z.back());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Iteration)->Arg(1000)->Arg(10000);

void BM_CeilLn(benchmark::State& state) {
  const ppa::Natural x = (ppa::Natural(1) << static_cast<unsigned>(state.range(0))) + 12345;
  for (auto _ : state) benchmark::DoNotOptimize(ppa::ceil_ln(x));
}
BENCHMARK(BM_CeilLn)->Arg(64)->Arg(1024)->Arg(4000);

void BM_Theta(benchmark::State& state) {
  const ppa::CountFn f = ppa::CountFn::affine(2, 1);
  for (auto _ : state) {
    auto v = ppa::evaluate(ppa::Budget{}, [&](ppa::EvalContext& cx) {
      return ppa::theta(cx, state.range(0), 0, 1, 2, f);
    });
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_Theta)->Arg(0)->Arg(3)->Arg(8);

void BM_PhiExperimentA(benchmark::State& state) {
  ppa::Moduli m;
  m.a = 2;
  m.ell = ppa::CountFn::identity();
  m.L = ppa::parse_fspec("expceil 4");
  m.N1 = 4;
  m.N2 = 1;
  m.N3 = 4;
  const ppa::BoundCalculus calc(m, ppa::Budget{});
  for (auto _ : state) benchmark::DoNotOptimize(calc.phi(0, ppa::CountFn::constant(0)));
}
BENCHMARK(BM_PhiExperimentA);

}  // namespace
BENCHMARK_MAIN();
