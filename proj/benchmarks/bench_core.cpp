#include <benchmark/benchmark.h>

#include "addlab/dynamics.hpp"
#include "addlab/identities.hpp"
#include "addlab/polynomial.hpp"
#include "addlab/roots.hpp"
#include "addlab/rules.hpp"
#include "addlab/words.hpp"

using namespace addlab;

namespace {

void BM_GenerateTerms(benchmark::State& state) {
  auto rule = rulecore::parse_rule("u[n-2]+u[n-3]");
  std::vector<Rational> init{1, 1, 1};
  for (auto _ : state) {
    auto seq = rulecore::generate_terms(rule, init, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(seq.terms.back());
  }
}
BENCHMARK(BM_GenerateTerms)->Arg(256)->Arg(1024)->Arg(4096);

void BM_RatioLimit(benchmark::State& state) {
  ScopedPrecision prec(50);
  auto rule = rulecore::RecurrenceRule::unit({2, 3});
  std::vector<Rational> init{1, 1, 1};
  Real tol("1e-40");
  for (auto _ : state) {
    Real r = rulecore::ratio_limit(rule, init, tol);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_RatioLimit);

void BM_SturmCount(benchmark::State& state) {
  IntPolynomial p = polyalgebra::build_psi(5, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    SturmChain chain(p);
    benchmark::DoNotOptimize(chain.count_all());
  }
}
BENCHMARK(BM_SturmCount)->Arg(4)->Arg(8)->Arg(16);

void BM_PsiRealRoots(benchmark::State& state) {
  ScopedPrecision prec(50);
  Real tol("1e-30");
  for (auto _ : state) {
    auto rep = polyalgebra::psi_real_roots(5, 8, tol);
    benchmark::DoNotOptimize(rep.roots.size());
  }
}
BENCHMARK(BM_PsiRealRoots);

void BM_Trajectory(benchmark::State& state) {
  auto map = dynamics::LagMap::rule(3, 1, 13.0);
  for (auto _ : state) {
    auto t = dynamics::trajectory(map, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(t.back());
  }
}
BENCHMARK(BM_Trajectory)->Arg(10000)->Arg(100000);

void BM_ClassifyOrbit(benchmark::State& state) {
  auto map = dynamics::LagMap::rule(3, 1, 13.0);
  for (auto _ : state) {
    auto r = dynamics::classify_orbit(map);
    benchmark::DoNotOptimize(r.period);
  }
}
BENCHMARK(BM_ClassifyOrbit);

void BM_JflPair(benchmark::State& state) {
  for (auto _ : state) {
    identities::JFLPair pair(2);
    benchmark::DoNotOptimize(pair.fib(state.range(0)));
  }
}
BENCHMARK(BM_JflPair)->Arg(100)->Arg(1000);

void BM_KgramFrequencies(benchmark::State& state) {
  for (auto _ : state) {
    words::WordSystem sys({"A", "AB", "CA"}, {2, 3});
    auto table = words::kgram_frequencies(sys, 3, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(table.counts.back().size());
  }
}
BENCHMARK(BM_KgramFrequencies)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
