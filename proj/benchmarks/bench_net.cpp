// bench_net.cpp — forward/Jacobian passes and spectral moments.

#include <benchmark/benchmark.h>

#include <pgc/mc.hpp>

namespace {

pgc::NetworkSpec uniform_net(int n, int L) {
  pgc::NetworkSpec spec;
  spec.L = L;
  spec.n0 = spec.n = spec.n_out = n;
  spec.param = pgc::Parameterization::JacobianUniform;
  for (int l = 0; l < L; ++l) spec.activations.push_back(pgc::ActivationPoly::relu());
  spec.weights.seed = 7;
  return spec;
}

void bm_forward(benchmark::State& state) {
  auto spec = uniform_net(static_cast<int>(state.range(0)), 3);
  auto W = pgc::sample_net_weights(spec, 0);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(spec.n0);
  for (auto _ : state) benchmark::DoNotOptimize(pgc::forward_net(spec, W, x));
}
BENCHMARK(bm_forward)->Arg(128)->Arg(512);

void bm_jacobian(benchmark::State& state) {
  auto spec = uniform_net(static_cast<int>(state.range(0)), 3);
  auto W = pgc::sample_net_weights(spec, 0);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(spec.n0);
  for (auto _ : state) benchmark::DoNotOptimize(pgc::jacobian_net(spec, W, x));
}
BENCHMARK(bm_jacobian)->Arg(128)->Arg(512);

void bm_spectral_moments(benchmark::State& state) {
  auto spec = uniform_net(static_cast<int>(state.range(0)), 3);
  auto W = pgc::sample_net_weights(spec, 0);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(spec.n0);
  Eigen::MatrixXd J = pgc::jacobian_net(spec, W, x);
  for (auto _ : state) benchmark::DoNotOptimize(pgc::spectral_moments(J, 4));
}
BENCHMARK(bm_spectral_moments)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
