// mc.cpp — sampling-side machinery: RNG bodies, weight draws, network passes,
// graph-value Monte Carlo, rate scans.

#include "pgc/mc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "pgc/eval.hpp"
#include "pgc/rng.hpp"

namespace pgc {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  has_spare_ = true;
  return r * std::cos(kTwoPi * u2);
}

double Rng::rademacher() { return (next_u64() & 1) ? 1.0 : -1.0; }

double Rng::uniform_ternary() {
  const double u = uniform01();
  const double v = u < 1.0 / 3.0 ? -1.0 : (u < 2.0 / 3.0 ? 0.0 : 1.0);
  return v * std::sqrt(1.5);
}

double Rng::signed_weibull(double shape) {
  if (!(shape > 0)) fail(ErrorCode::BadParameter, "Weibull shape must be positive");
  const double lambda = 1.0 / std::sqrt(std::tgamma(1.0 + 2.0 / shape));
  const double mag = lambda * std::pow(-std::log(uniform01()), 1.0 / shape);
  return (next_u64() & 1) ? mag : -mag;
}

bool Rng::bernoulli(double p) { return uniform01() < p; }

WeightDist parse_weight_dist(const std::string& name) {
  if (name == "gaussian") return WeightDist::Gaussian;
  if (name == "rademacher") return WeightDist::Rademacher;
  if (name == "uniform_ternary") return WeightDist::UniformTernary;
  if (name == "signed_weibull") return WeightDist::SignedWeibull;
  if (name == "complex_gaussian") return WeightDist::ComplexGaussian;
  fail(ErrorCode::BadParameter, "unknown weight distribution '" + name + "'");
}

const char* weight_dist_name(WeightDist d) {
  switch (d) {
    case WeightDist::Gaussian: return "gaussian";
    case WeightDist::Rademacher: return "rademacher";
    case WeightDist::UniformTernary: return "uniform_ternary";
    case WeightDist::SignedWeibull: return "signed_weibull";
    case WeightDist::ComplexGaussian: return "complex_gaussian";
  }
  return "unknown";
}

namespace {

void check_sparsity(const WeightSpec& spec) {
  if (spec.sparsity_p && !(*spec.sparsity_p > 0 && *spec.sparsity_p <= 1))
    fail(ErrorCode::BadParameter, "sparsity probability must lie in (0,1]");
}

double draw_real(Rng& rng, const WeightSpec& spec) {
  switch (spec.distribution) {
    case WeightDist::Gaussian: return rng.gaussian();
    case WeightDist::Rademacher: return rng.rademacher();
    case WeightDist::UniformTernary: return rng.uniform_ternary();
    case WeightDist::SignedWeibull: return rng.signed_weibull(spec.shape);
    case WeightDist::ComplexGaussian:
      fail(ErrorCode::BadParameter, "complex draws need the complex sampler");
  }
  fail(ErrorCode::BadParameter, "unreachable distribution");
}

}  // namespace

Eigen::MatrixXd sample_weights(const WeightSpec& spec, int rows, int cols,
                               std::uint64_t draw_index) {
  if (rows < 1 || cols < 1) fail(ErrorCode::BadParameter, "weight shape must be positive");
  if (spec.distribution == WeightDist::ComplexGaussian)
    fail(ErrorCode::BadParameter, "complex draws need the complex sampler");
  check_sparsity(spec);
  Rng rng = Rng::stream(spec.seed, draw_index);
  const double inv_sqrt_p = spec.sparsity_p ? 1.0 / std::sqrt(*spec.sparsity_p) : 1.0;
  Eigen::MatrixXd w(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      double v = draw_real(rng, spec) * spec.sigma;
      if (spec.sparsity_p) v = rng.bernoulli(*spec.sparsity_p) ? v * inv_sqrt_p : 0.0;
      w(i, j) = v;
    }
  return w;
}

Eigen::MatrixXcd sample_weights_c(const WeightSpec& spec, int rows, int cols,
                                  std::uint64_t draw_index) {
  if (spec.distribution != WeightDist::ComplexGaussian)
    return sample_weights(spec, rows, cols, draw_index).cast<Cplx>();
  if (rows < 1 || cols < 1) fail(ErrorCode::BadParameter, "weight shape must be positive");
  check_sparsity(spec);
  Rng rng = Rng::stream(spec.seed, draw_index);
  const double scale = spec.sigma / std::sqrt(2.0);
  const double inv_sqrt_p = spec.sparsity_p ? 1.0 / std::sqrt(*spec.sparsity_p) : 1.0;
  Eigen::MatrixXcd w(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      Cplx v(rng.gaussian() * scale, rng.gaussian() * scale);
      if (spec.sparsity_p) v = rng.bernoulli(*spec.sparsity_p) ? v * inv_sqrt_p : Cplx(0, 0);
      w(i, j) = v;
    }
  return w;
}

int NetworkSpec::width(int layer) const {
  if (layer < 0 || layer > L + 1) fail(ErrorCode::NoSuchLayer, "layer out of range");
  if (param == Parameterization::JacobianUniform) return n;
  if (layer == 0) return n0;
  if (layer == L + 1) return n_out;
  return n;
}

double NetworkSpec::sigma(int layer) const {
  if (layer < 0 || layer > L) fail(ErrorCode::NoSuchLayer, "layer out of range");
  if (param == Parameterization::JacobianUniform) return 1.0 / std::sqrt(n);
  return layer == 0 ? 1.0 : 1.0 / std::sqrt(n);
}

double NetworkSpec::lambda(int layer) const {
  if (layer < 0 || layer > L) fail(ErrorCode::NoSuchLayer, "layer out of range");
  return layer == 0 ? 1.0 : 1.0 / n;
}

std::vector<Eigen::MatrixXd> sample_net_weights(const NetworkSpec& spec,
                                                std::uint64_t trial) {
  if (spec.L < 0) fail(ErrorCode::BadParameter, "negative depth");
  if (spec.n < 1 || spec.n0 < 1 || spec.n_out < 1)
    fail(ErrorCode::BadParameter, "widths must be positive");
  if (static_cast<int>(spec.activations.size()) < spec.L)
    fail(ErrorCode::ArityMismatch, "need one activation per layer 1..L");
  std::vector<Eigen::MatrixXd> W;
  for (int l = 0; l <= spec.L; ++l) {
    WeightSpec ws = spec.weights;
    ws.sigma = spec.weights.sigma * spec.sigma(l);
    W.push_back(sample_weights(ws, spec.width(l + 1), spec.width(l),
                               trial * static_cast<std::uint64_t>(spec.L + 1) + l));
  }
  return W;
}

ForwardResult forward_net(const NetworkSpec& spec, const std::vector<Eigen::MatrixXd>& W,
                          const Eigen::VectorXd& x) {
  if (static_cast<int>(W.size()) != spec.L + 1)
    fail(ErrorCode::ArityMismatch, "need weight matrices for layers 0..L");
  if (x.size() != W[0].cols()) fail(ErrorCode::ShapeMismatch, "x length != input width");
  ForwardResult f;
  f.pre.resize(spec.L + 1);
  f.act.resize(spec.L + 1);
  f.act[0] = x;
  f.pre[0] = W[0] * x;
  for (int l = 1; l <= spec.L; ++l) {
    const ActivationPoly& phi = spec.activations[l - 1];
    Eigen::VectorXd a = f.pre[l - 1];
    for (int i = 0; i < a.size(); ++i) a[i] = phi.eval(a[i]);
    f.act[l] = a;
    f.pre[l] = W[l] * a;
  }
  f.out = f.pre[spec.L];
  return f;
}

Eigen::MatrixXd jacobian_net(const NetworkSpec& spec, const std::vector<Eigen::MatrixXd>& W,
                             const Eigen::VectorXd& x) {
  ForwardResult f = forward_net(spec, W, x);
  Eigen::MatrixXd m = W[0];
  for (int l = 1; l <= spec.L; ++l) {
    const ActivationPoly& phi = spec.activations[l - 1];
    Eigen::VectorXd d = f.pre[l - 1];
    for (int i = 0; i < d.size(); ++i) d[i] = phi.deriv(d[i]);
    m = d.asDiagonal() * m;
    if (l < spec.L) m = W[l] * m;
  }
  return m;
}

std::vector<double> spectral_moments(const Eigen::MatrixXd& J, int k_max) {
  if (k_max < 1) fail(ErrorCode::BadParameter, "k_max must be >= 1");
  const double n = static_cast<double>(J.rows());
  Eigen::MatrixXd M = J * J.transpose();
  std::vector<Eigen::MatrixXd> powers{M};
  const int p_max = (k_max + 1) / 2;
  for (int p = 2; p <= p_max; ++p) powers.push_back(powers.back() * M);
  std::vector<double> out(k_max);
  out[0] = M.trace() / n;
  for (int k = 2; k <= k_max; ++k) {
    const int a = k / 2, b = k - k / 2;
    out[k - 1] = powers[a - 1].cwiseProduct(powers[b - 1]).sum() / n;
  }
  return out;
}

Eigen::MatrixXd empirical_ntk(const NetworkSpec& spec, const std::vector<Eigen::MatrixXd>& W,
                              const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (static_cast<int>(W.size()) != spec.L + 1)
    fail(ErrorCode::ArityMismatch, "need weight matrices for layers 0..L");
  ForwardResult fx = forward_net(spec, W, x);
  ForwardResult fy = forward_net(spec, W, y);
  const int n_out = static_cast<int>(W[spec.L].rows());
  auto backward_maps = [&](const ForwardResult& f) {
    std::vector<Eigen::MatrixXd> B(spec.L + 1);
    B[spec.L] = Eigen::MatrixXd::Identity(n_out, n_out);
    for (int l = spec.L; l >= 1; --l) {
      const ActivationPoly& phi = spec.activations[l - 1];
      Eigen::VectorXd d = f.pre[l - 1];
      for (int i = 0; i < d.size(); ++i) d[i] = phi.deriv(d[i]);
      B[l - 1] = B[l] * W[l] * d.asDiagonal();
    }
    return B;
  };
  std::vector<Eigen::MatrixXd> Bx = backward_maps(fx);
  std::vector<Eigen::MatrixXd> By = backward_maps(fy);
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(n_out, n_out);
  for (int l = 0; l <= spec.L; ++l)
    theta += spec.lambda(l) * fx.act[l].dot(fy.act[l]) * (Bx[l] * By[l].transpose());
  return theta;
}

namespace {

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : pairwise_sum(v, 0, v.size()) / static_cast<double>(v.size());
}

}  // namespace

McResult mc_graph_value(const ProductGraph& g, int trials, const WeightSpec& spec,
                        PairingMode mode) {
  if (trials < 1) fail(ErrorCode::BadParameter, "need at least one trial");
  if (g.has_free_cells()) fail(ErrorCode::FreeCellPresent, "graph has free cells");

  // Shapes and sigmas per |label|, in sorted label order.
  struct LabelInfo {
    int rows = 0, cols = 0;
    double sigma = 1.0;
  };
  std::map<int, LabelInfo> labels;
  for (const auto& e : g.edges()) {
    if (!e.input.is_random()) continue;
    LabelInfo info{g.vertex(e.head).dim, g.vertex(e.tail).dim, e.input.sigma};
    labels[std::abs(e.input.label)] = info;
  }

  McResult res;
  res.seed = spec.seed;
  res.trials = trials;
  res.theory = wick_expectation_c(g, mode).real();

  std::vector<VertexSpec> vspecs;
  std::vector<EdgeSpec> especs;
  for (const auto& v : g.vertices()) vspecs.push_back({v.id, v.dim, v.input});
  for (const auto& e : g.edges()) especs.push_back({e.id, e.head, e.tail, e.input});

  std::vector<double> values(trials);
  const std::uint64_t n_labels = labels.size();
  for (int t = 0; t < trials; ++t) {
    std::map<int, Eigen::MatrixXcd> draw;
    std::uint64_t li = 0;
    for (const auto& [label, info] : labels) {
      WeightSpec ws = spec;
      ws.sigma = info.sigma;
      draw[label] = sample_weights_c(ws, info.rows, info.cols,
                                     static_cast<std::uint64_t>(t) * n_labels + li);
      ++li;
    }
    for (auto& es : especs) {
      const CellInput& orig = g.edge(es.id).input;
      if (!orig.is_random()) continue;
      Eigen::MatrixXcd m = draw.at(std::abs(orig.label));
      if (orig.label < 0 && mode == PairingMode::Complex) m = m.conjugate();
      es.input = CellInput::dense(m);
    }
    values[t] = graph_value_c(build_graph(vspecs, especs)).real();
  }

  res.mean = pairwise_mean(values);
  std::vector<double> sq(trials);
  for (int t = 0; t < trials; ++t) sq[t] = (values[t] - res.mean) * (values[t] - res.mean);
  const double var_sample =
      trials > 1 ? pairwise_sum(sq, 0, sq.size()) / static_cast<double>(trials - 1) : 0.0;
  res.stderr_ = std::sqrt(var_sample / trials);
  res.z = res.stderr_ > 0 ? (res.mean - res.theory) / res.stderr_ : 0.0;

  bool uniform = true;
  int N = g.vertices().empty() ? 0 : g.vertices()[0].dim;
  for (const auto& v : g.vertices())
    if (v.dim != N) uniform = false;
  if (uniform && N > 0) {
    GraphStats st = graph_stats(g);
    const double lambda_G =
        1.0 / (st.sigma_G * std::pow(static_cast<double>(N), st.e_check + st.c));
    res.var_n = N * lambda_G * lambda_G * var_sample;
  } else {
    res.var_n = std::numeric_limits<double>::quiet_NaN();
  }
  return res;
}

RateScan rate_scan(const std::function<double(int, std::uint64_t)>& statistic,
                   const std::function<double(int)>& theory,
                   const std::vector<int>& widths, int trials) {
  if (trials < 1) fail(ErrorCode::BadParameter, "need at least one trial");
  if (widths.size() < 3)
    fail(ErrorCode::DegenerateFit, "need at least three widths for a slope");
  RateScan rs;
  rs.widths = widths;
  for (int N : widths) {
    std::vector<double> sq(trials);
    const double target = theory(N);
    for (int t = 0; t < trials; ++t) {
      const double d = statistic(N, static_cast<std::uint64_t>(t)) - target;
      sq[t] = d * d;
    }
    rs.mse.push_back(pairwise_mean(sq));
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (!(rs.mse[i] > 1e-300))
      fail(ErrorCode::DegenerateFit, "vanishing MSE leaves the slope undefined");
    lx.push_back(std::log(static_cast<double>(widths[i])));
    ly.push_back(std::log(rs.mse[i]));
  }
  const double mx = pairwise_mean(lx), my = pairwise_mean(ly);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0)) fail(ErrorCode::DegenerateFit, "widths do not vary");
  rs.slope = sxy / sxx;
  return rs;
}

GpCovMc gp_covariance_mc(const NetworkSpec& spec, const std::vector<Eigen::VectorXd>& inputs,
                         int trials) {
  if (inputs.empty()) fail(ErrorCode::BadParameter, "need at least one input");
  if (trials < 2) fail(ErrorCode::BadParameter, "need at least two trials");
  const int P = static_cast<int>(inputs.size());
  std::vector<std::vector<std::vector<double>>> prod(
      P, std::vector<std::vector<double>>(P, std::vector<double>(trials)));
  std::vector<double> cross(trials, 0.0);
  const bool has_cross = spec.width(spec.L + 1) >= 2;
  for (int t = 0; t < trials; ++t) {
    std::vector<Eigen::MatrixXd> W = sample_net_weights(spec, t);
    std::vector<Eigen::VectorXd> outs;
    for (const auto& x : inputs) outs.push_back(forward_net(spec, W, x).out);
    for (int i = 0; i < P; ++i)
      for (int j = 0; j < P; ++j) prod[i][j][t] = outs[i][0] * outs[j][0];
    if (has_cross) cross[t] = outs[0][0] * outs[0][1];
  }
  GpCovMc out;
  out.cov.resize(P, P);
  out.stderr_.resize(P, P);
  for (int i = 0; i < P; ++i)
    for (int j = 0; j < P; ++j) {
      const double m = pairwise_mean(prod[i][j]);
      out.cov(i, j) = m;
      std::vector<double> sq(trials);
      for (int t = 0; t < trials; ++t) sq[t] = (prod[i][j][t] - m) * (prod[i][j][t] - m);
      out.stderr_(i, j) =
          std::sqrt(pairwise_sum(sq, 0, sq.size()) / static_cast<double>(trials - 1) /
                    static_cast<double>(trials));
    }
  if (has_cross) {
    out.cross_cov = pairwise_mean(cross);
    std::vector<double> sq(trials);
    for (int t = 0; t < trials; ++t) sq[t] = (cross[t] - out.cross_cov) * (cross[t] - out.cross_cov);
    out.cross_stderr =
        std::sqrt(pairwise_sum(sq, 0, sq.size()) / static_cast<double>(trials - 1) /
                  static_cast<double>(trials));
  } else {
    out.cross_cov = std::numeric_limits<double>::quiet_NaN();
    out.cross_stderr = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace pgc
