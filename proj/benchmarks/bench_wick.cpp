// bench_wick.cpp — pairing enumeration and expectation of a random ring.

#include <benchmark/benchmark.h>

#include <pgc/wick.hpp>

namespace {

pgc::ProductGraph random_ring(int n_edges, int dim) {
  std::vector<pgc::VertexSpec> vs;
  std::vector<pgc::EdgeSpec> es;
  for (int i = 0; i < n_edges; ++i)
    vs.push_back({"v" + std::to_string(i), dim, pgc::CellInput::ones()});
  for (int i = 0; i < n_edges; ++i)
    es.push_back({"e" + std::to_string(i), "v" + std::to_string((i + 1) % n_edges),
                  "v" + std::to_string(i), pgc::CellInput::random(1, 1.0)});
  return pgc::build_graph(vs, es);
}

void bm_pairings(benchmark::State& state) {
  auto g = random_ring(static_cast<int>(state.range(0)), 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(pgc::admissible_pairings(g, pgc::PairingMode::Real));
}
BENCHMARK(bm_pairings)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

void bm_wick_expectation(benchmark::State& state) {
  auto g = random_ring(static_cast<int>(state.range(0)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(pgc::wick_expectation(g, pgc::PairingMode::Real));
}
BENCHMARK(bm_wick_expectation)->Arg(4)->Arg(6)->Arg(8);

void bm_isserlis(benchmark::State& state) {
  auto g = random_ring(static_cast<int>(state.range(0)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(pgc::isserlis_oracle(g, pgc::PairingMode::Real));
}
BENCHMARK(bm_isserlis)->Arg(4)->Arg(6);

}  // namespace
