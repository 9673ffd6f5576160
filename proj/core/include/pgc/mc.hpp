#pragma once
// mc.hpp — Monte Carlo side: weight sampling, forward/Jacobian/NTK passes,
// spectral moments, graph-value estimation, convergence-rate scans.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "pgc/graph.hpp"
#include "pgc/tree.hpp"
#include "pgc/wick.hpp"

namespace pgc {

enum class WeightDist {
  Gaussian,
  Rademacher,
  UniformTernary,
  SignedWeibull,
  ComplexGaussian,
};

WeightDist parse_weight_dist(const std::string& name);
const char* weight_dist_name(WeightDist d);

// Entry distribution: centered, symmetric, variance sigma^2. The optional
// sparsity mask multiplies by Bernoulli(p)/sqrt(p), preserving variance.
struct WeightSpec {
  WeightDist distribution = WeightDist::Gaussian;
  double sigma = 1.0;
  double shape = 1.0;  // SignedWeibull only
  std::optional<double> sparsity_p;
  std::uint64_t seed = 0;
};

// Deterministic in (seed, shape, draw_index); real distributions only.
Eigen::MatrixXd sample_weights(const WeightSpec& spec, int rows, int cols,
                               std::uint64_t draw_index = 0);
// Also admits ComplexGaussian (E|W|^2 = sigma^2).
Eigen::MatrixXcd sample_weights_c(const WeightSpec& spec, int rows, int cols,
                                  std::uint64_t draw_index = 0);

enum class Parameterization { GPlimit, JacobianUniform };

// Layer widths and scalings. GPlimit: widths (n0, n..n, n_out), sigma_0 = 1,
// sigma_l = n^{-1/2}; JacobianUniform: every width n, every sigma = n^{-1/2}.
// NTK rates lambda_0 = 1, lambda_l = 1/n.
struct NetworkSpec {
  int L = 1;
  int n0 = 1;
  int n = 1;
  int n_out = 1;
  std::vector<ActivationPoly> activations;  // phi_1..phi_L
  Parameterization param = Parameterization::GPlimit;
  WeightSpec weights;

  int width(int layer) const;      // N_l, layer = 0..L+1
  double sigma(int layer) const;   // sigma_l, layer = 0..L
  double lambda(int layer) const;  // lambda_l, layer = 0..L
};

// W_0..W_L with per-layer sigma, one independent stream per (trial, layer).
std::vector<Eigen::MatrixXd> sample_net_weights(const NetworkSpec& spec,
                                                std::uint64_t trial);

// pre[l] = Phi_l, act[l] = phi_l(Phi_{l-1}) with act[0] = x; out = Phi_L.
struct ForwardResult {
  Eigen::VectorXd out;
  std::vector<Eigen::VectorXd> pre;
  std::vector<Eigen::VectorXd> act;
};
ForwardResult forward_net(const NetworkSpec& spec,
                          const std::vector<Eigen::MatrixXd>& W,
                          const Eigen::VectorXd& x);

// Post-activation Jacobian D_L W_{L-1} ... D_1 W_0, D_l = diag(phi_l'(Phi_{l-1})).
Eigen::MatrixXd jacobian_net(const NetworkSpec& spec,
                             const std::vector<Eigen::MatrixXd>& W,
                             const Eigen::VectorXd& x);

// (1/N) Tr((J J^T)^k) for k = 1..k_max via trace-of-powers inner products.
std::vector<double> spectral_moments(const Eigen::MatrixXd& J, int k_max);

// Theta = sum_l lambda_l <a_l(x), a_l(y)> B_l(x) B_l(y)^T where B_l is the
// product of the remaining layers' factors (B_L = I, then W_L D_L ...).
Eigen::MatrixXd empirical_ntk(const NetworkSpec& spec,
                              const std::vector<Eigen::MatrixXd>& W,
                              const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y);

struct McResult {
  double mean = 0;
  double stderr_ = 0;
  double var_n = 0;  // N * Var(lambda_G W_G), uniform-dimension graphs only
  int trials = 0;
  double theory = 0;
  double z = 0;
  std::uint64_t seed = 0;
};

// Instantiates each random label per trial from spec's distribution at the
// label's sigma (negative labels take the conjugate of their positive
// partner), evaluates the graph, and aggregates with pairwise summation.
McResult mc_graph_value(const ProductGraph& g, int trials,
                        const WeightSpec& spec,
                        PairingMode mode = PairingMode::Real);

struct RateScan {
  std::vector<int> widths;
  std::vector<double> mse;
  double slope = 0;
};

// MSE of the statistic against theory per width, and the least-squares
// slope of log MSE vs log N. statistic(N, trial) is one trial's estimate.
RateScan rate_scan(const std::function<double(int, std::uint64_t)>& statistic,
                   const std::function<double(int)>& theory,
                   const std::vector<int>& widths, int trials);

// Empirical covariance of the first output coordinate across weight draws,
// for each input pair; cross_cov tracks coordinates 1 vs 2 at inputs[0].
struct GpCovMc {
  Eigen::MatrixXd cov;
  Eigen::MatrixXd stderr_;
  double cross_cov = 0;
  double cross_stderr = 0;
};
GpCovMc gp_covariance_mc(const NetworkSpec& spec,
                         const std::vector<Eigen::VectorXd>& inputs,
                         int trials);

}  // namespace pgc
