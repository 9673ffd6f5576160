// bench_graph.cpp — contraction strategies on a ring of dense matrices.

#include <benchmark/benchmark.h>

#include <pgc/eval.hpp>
#include <pgc/graph.hpp>

namespace {

pgc::ProductGraph ring_graph(int n_vertices, int dim) {
  std::vector<pgc::VertexSpec> vs;
  std::vector<pgc::EdgeSpec> es;
  for (int i = 0; i < n_vertices; ++i)
    vs.push_back({"v" + std::to_string(i), dim, pgc::CellInput::ones()});
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(dim, dim, 0.25);
  m.diagonal().array() += 1.0;
  for (int i = 0; i < n_vertices; ++i)
    es.push_back({"e" + std::to_string(i), "v" + std::to_string((i + 1) % n_vertices),
                  "v" + std::to_string(i), pgc::CellInput::dense(m)});
  return pgc::build_graph(vs, es);
}

void bm_ring_naive(benchmark::State& state) {
  auto g = ring_graph(static_cast<int>(state.range(0)), 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(pgc::graph_value(g, pgc::EvalStrategy::Naive));
}
BENCHMARK(bm_ring_naive)->Arg(4)->Arg(6)->Arg(8);

void bm_ring_greedy(benchmark::State& state) {
  auto g = ring_graph(static_cast<int>(state.range(0)), 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(pgc::graph_value(g, pgc::EvalStrategy::GreedyContraction));
}
BENCHMARK(bm_ring_greedy)->Arg(4)->Arg(6)->Arg(8)->Arg(12);

}  // namespace
