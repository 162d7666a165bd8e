#include <benchmark/benchmark.h>

#include "lipfree/bap.hpp"
#include "lipfree/fdd.hpp"
#include "lipfree/freespace.hpp"
#include "lipfree/interp.hpp"
#include "lipfree/verify/random.hpp"

using namespace lipfree;

namespace {

void BM_LambdaEval(benchmark::State& state) {
  verify::Rng rng(1);
  const auto data = verify::random_vertex_data(rng, static_cast<std::size_t>(state.range(0)));
  const Point x = verify::random_point_in(rng, data.cube());
  for (auto _ : state) benchmark::DoNotOptimize(lambda_eval(data, x));
}
BENCHMARK(BM_LambdaEval)->DenseRange(1, 8);

// Cost grows with the number of active coordinates, capped at n.
void BM_QnL1(benchmark::State& state) {
  verify::Rng rng(2);
  const int n = static_cast<int>(state.range(0));
  const auto f = random_lattice_l1(rng.next(), 12);
  const SparsePoint x = verify::random_sparse_point(rng, 12, 6, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(q_n(f, x, n));
}
BENCHMARK(BM_QnL1)->DenseRange(1, 10, 3);

void BM_SnApply(benchmark::State& state) {
  verify::Rng rng(3);
  const auto mu = verify::random_molecule_l1(rng, static_cast<std::size_t>(state.range(0)), 8, 4, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(s_n_apply(mu, 6));
}
BENCHMARK(BM_SnApply)->RangeMultiplier(2)->Range(1, 16);

void BM_FreeNormL1(benchmark::State& state) {
  verify::Rng rng(4);
  const auto mu = verify::random_molecule_l1(rng, static_cast<std::size_t>(state.range(0)), 8, 4, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(free_norm(mu).value);
}
BENCHMARK(BM_FreeNormL1)->RangeMultiplier(2)->Range(2, 64);

void BM_FreeNormProjected(benchmark::State& state) {
  verify::Rng rng(5);
  const auto mu = s_n_apply(verify::random_molecule_l1(rng, 6, 8, 4, 3.0), static_cast<int>(state.range(0)));
  state.counters["support"] = static_cast<double>(mu.size());
  for (auto _ : state) benchmark::DoNotOptimize(free_norm(mu).value);
}
BENCHMARK(BM_FreeNormProjected)->DenseRange(1, 6);

void BM_BapPartition(benchmark::State& state) {
  verify::Rng rng(6);
  const auto space = verify::random_l1_space(rng, static_cast<std::size_t>(state.range(0)), 2, 4.0);
  std::vector<std::size_t> x;
  for (std::size_t i = 0; i < space.size(); i += 3) x.push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(gentleness(build_partition(space, x, {}), space).k_hat);
}
BENCHMARK(BM_BapPartition)->RangeMultiplier(2)->Range(8, 64);

}  // namespace
BENCHMARK_MAIN();
