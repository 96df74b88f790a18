#include <benchmark/benchmark.h>

#include "homchains/chain.hpp"
#include "homchains/homcomplex.hpp"
#include "homchains/morse.hpp"

using namespace homchains;

namespace {

chain_spec boolean_spec(int n) { return chain_spec(std::vector<int>(static_cast<std::size_t>(n), 1)); }

void bm_build(benchmark::State& state) {
  auto spec = boolean_spec(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(chain_product_complex(spec).size());
}
BENCHMARK(bm_build)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void bm_match(benchmark::State& state) {
  auto spec = boolean_spec(static_cast<int>(state.range(0)));
  auto c = chain_product_complex(spec);
  for (auto _ : state) benchmark::DoNotOptimize(match_product_of_chains(c, spec).matched_pairs());
  state.counters["cells"] = static_cast<double>(c.size());
}
BENCHMARK(bm_match)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void bm_acyclic(benchmark::State& state) {
  auto spec = boolean_spec(static_cast<int>(state.range(0)));
  auto c = chain_product_complex(spec);
  auto m = match_product_of_chains(c, spec);
  for (auto _ : state) benchmark::DoNotOptimize(validate_acyclic(m, c).orders.size());
}
BENCHMARK(bm_acyclic)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void bm_paths(benchmark::State& state) {
  auto spec = boolean_spec(static_cast<int>(state.range(0)));
  auto c = chain_product_complex(spec);
  auto m = match_product_of_chains(c, spec);
  incidence_table signs(c);
  std::vector<cell_id> sources;
  for (const auto& level : critical_cells(c, m))
    for (cell_id x : level)
      if (c.dim(x) > 0) sources.push_back(x);
  for (auto _ : state) {
    std::size_t n = 0;
    for (cell_id s : sources) n += alternating_paths_from(c, m, signs, s).size();
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(bm_paths)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

void bm_morse_complex(benchmark::State& state) {
  auto spec = boolean_spec(static_cast<int>(state.range(0)));
  auto c = chain_product_complex(spec);
  auto m = match_product_of_chains(c, spec);
  auto cert = validate_acyclic(m, c);
  for (auto _ : state) benchmark::DoNotOptimize(morse_complex(c, m, cert).cells.size());
}
BENCHMARK(bm_morse_complex)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void bm_homology(benchmark::State& state) {
  auto c = chain_product_complex(boolean_spec(static_cast<int>(state.range(0))));
  auto cc = boundary_matrices(c);
  for (auto _ : state) benchmark::DoNotOptimize(homology(cc).euler);
}
BENCHMARK(bm_homology)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
