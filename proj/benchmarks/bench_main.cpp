#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "gradedvb/cocycles.hpp"
#include "gradedvb/decomp.hpp"
#include "gradedvb/nman.hpp"
#include "gradedvb/snvb.hpp"

namespace {

using namespace gvb;

void BM_SignOfSetPartitions(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto all = set_partitions(Subset::full(n));
  for (auto _ : state) {
    int total = 0;
    for (const auto& rho : all) total += sgn(rho);
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(all.size()));
}
BENCHMARK(BM_SignOfSetPartitions)->DenseRange(3, 7);

void BM_GradedProduct(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  gen::Rng rng(1);
  const MultiTensor x = gen::random_graded_symmetric(rng, {1, 2}, {dim, dim}, 1);
  const MultiTensor y = gen::random_graded_symmetric(rng, {1, 1}, {dim, dim}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(graded_product({x, y}));
}
BENCHMARK(BM_GradedProduct)->DenseRange(1, 3);

void BM_ComposeGraded(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  gen::Rng rng(2);
  const SplitModel a = gen::random_split_model(rng, n, 2, 1, "a");
  const SplitModel b = gen::random_split_model(rng, n, 2, 1, "b");
  const SplitModel c = gen::random_split_model(rng, n, 2, 1, "c");
  const GradedMorphism mu = gen::random_graded_morphism(rng, a, b);
  const GradedMorphism nu = gen::random_graded_morphism(rng, b, c);
  for (auto _ : state) benchmark::DoNotOptimize(compose(nu, mu));
}
BENCHMARK(BM_ComposeGraded)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_ComposeSymmetric(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  gen::Rng rng(3);
  const SymModel a = gen::random_sym_model(rng, n, 1, 2, 1, "a");
  const SymModel b = gen::random_sym_model(rng, n, 1, 2, 1, "b");
  const SymModel c = gen::random_sym_model(rng, n, 1, 2, 1, "c");
  const SymMorphism eta = gen::random_sym_morphism(rng, a, b);
  const SymMorphism tau = gen::random_sym_morphism(rng, b, c);
  for (auto _ : state) benchmark::DoNotOptimize(compose_sym(tau, eta));
}
BENCHMARK(BM_ComposeSymmetric)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_TopMap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  gen::Rng rng(4);
  const SymModel m = gen::random_sym_model(rng, n, 1, 2, 1, "p");
  const SymMorphism tau = gen::random_sym_morphism(rng, m, m);
  const DecTuple x = gen::random_tuple(rng, m, 0);
  for (auto _ : state) benchmark::DoNotOptimize(top_map(tau, x));
}
BENCHMARK(BM_TopMap)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

void BM_CheckCocycle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  gen::Rng rng(5);
  const Cover cover = gen::random_cover(rng);
  const std::vector<int> dims(static_cast<std::size_t>(n), 1);
  const SnCocycle c = from_trivializations(cover, n, dims, gen::random_trivializations(rng, cover, n, dims));
  for (auto _ : state) benchmark::DoNotOptimize(check_cocycle(c));
}
BENCHMARK(BM_CheckCocycle)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_BuildDecomposition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  gen::Rng rng(6);
  const SymModel m = gen::random_sym_model(rng, n, 1, 1, 1, "p");
  const GeneralDecMorphism truth = gen::random_normalized_decomposition(rng, m);
  const Splitting sigma = splitting_of(truth);
  CoreFamily decs;
  for (const auto& J : two_subsets(n)) {
    const OrderedPartition rho = pair_partition(n, J);
    decs.emplace(rho, core_decomposition_of(truth, rho));
  }
  for (auto _ : state) benchmark::DoNotOptimize(build_decomposition(sigma, decs, two_subsets(n)));
}
BENCHMARK(BM_BuildDecomposition)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
