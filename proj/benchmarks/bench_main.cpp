#include <benchmark/benchmark.h>

#include <random>

#include "structo/structo.hpp"

namespace {

using namespace structo;

Theory linear_order() {
  return Theory(parse_language("R/2"),
                parse_formula("(and (forall x (not (rel R x x)))"
                              " (forall x (forall y (forall z (implies (and (rel R x y) (rel R y z)) (rel R x z)))))"
                              " (forall x (forall y (or (eq x y) (rel R x y) (rel R y x)))))"));
}

void BM_EnumerateClassBijective(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FinER E = FinER::full(n), F = FinER::from_class_sizes({n, n});
  for (auto _ : state) benchmark::DoNotOptimize(count_homs(F, E, HomClass{HomFlag::ClassBijective}));
}
BENCHMARK(BM_EnumerateClassBijective)->DenseRange(2, 5);

void BM_CountModelsLinearOrder(benchmark::State& state) {
  const Theory T = linear_order();
  for (auto _ : state) benchmark::DoNotOptimize(count_models(T, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_CountModelsLinearOrder)->DenseRange(2, 4);

void BM_Ltimes(benchmark::State& state) {
  const Theory T = linear_order();
  const FinER E = FinER::from_class_sizes({static_cast<std::size_t>(state.range(0)), 2, 1});
  for (auto _ : state) benchmark::DoNotOptimize(ltimes(E, T).space.size());
}
BENCHMARK(BM_Ltimes)->DenseRange(2, 4);

void BM_Tensor(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const FinER E = FinER::from_class_sizes({n, n}), F = FinER::from_class_sizes({n});
  for (auto _ : state) benchmark::DoNotOptimize(tensor(E, F).product.size());
}
BENCHMARK(BM_Tensor)->DenseRange(2, 5);

void BM_ScottStructureSearch(benchmark::State& state) {
  const FinER E = FinER::from_class_sizes({3, 2, 1});
  const Theory sigma = scott_theory(code_er(E)).theory();
  const FinER F = FinER::from_class_sizes({3, 3, 2});
  for (auto _ : state) benchmark::DoNotOptimize(structure_search(F, sigma).witness.has_value());
}
BENCHMARK(BM_ScottStructureSearch);

void BM_Priestley(benchmark::State& state) {
  const FinLattice L = FinLattice::powerset(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(priestley(L).iso());
}
BENCHMARK(BM_Priestley)->DenseRange(2, 4);

void BM_ReduceAllIntersecting(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reduce_all_intersecting(p, 4, 4).visited);
}
BENCHMARK(BM_ReduceAllIntersecting)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

void BM_GraphsUpToIso(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(graphs_up_to_iso(static_cast<std::size_t>(state.range(0))).size());
}
BENCHMARK(BM_GraphsUpToIso)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_Morleyize(benchmark::State& state) {
  const Theory T = linear_order();
  for (auto _ : state) benchmark::DoNotOptimize(morleyize(T).new_symbols.size());
}
BENCHMARK(BM_Morleyize);

}  // namespace

BENCHMARK_MAIN();
