// kernels.cpp — Gaussian moments, GP/NTK limits, spectral moment recursion.

#include "pgc/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace pgc {

void Cov2::validate() const {
  if (xx < 0 || yy < 0)
    fail(ErrorCode::PSDViolation, "negative variance in a 2x2 covariance");
  if (xx * yy - xy * xy < -1e-12)
    fail(ErrorCode::PSDViolation, "negative determinant in a 2x2 covariance");
}

double gaussian_mixed_moment(int m, int n, const Cov2& cov) {
  if (m < 0 || n < 0) fail(ErrorCode::BadParameter, "negative moment order");
  cov.validate();
  // E[X^m Y^n] table via the reduction on the first index, then the second.
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(n + 1, 0.0));
  for (int j = 0; j <= n; ++j) {
    // Univariate E[Y^j].
    t[0][j] = (j == 0) ? 1.0 : (j >= 2 ? (j - 1) * cov.yy * t[0][j - 2] : 0.0);
  }
  for (int i = 1; i <= m; ++i)
    for (int j = 0; j <= n; ++j) {
      double v = 0.0;
      if (i >= 2) v += (i - 1) * cov.xx * t[i - 2][j];
      if (j >= 1) v += j * cov.xy * t[i - 1][j - 1];
      t[i][j] = v;
    }
  return t[m][n];
}

double bivariate_gaussian_moment(const ActivationPoly& phi,
                                 const ActivationPoly& psi, const Cov2& cov) {
  if (phi.is_relu() || psi.is_relu())
    fail(ErrorCode::NonPolynomialActivation, "bivariate moments need polynomials");
  cov.validate();
  double sum = 0.0;
  for (std::size_t i = 0; i < phi.coeffs.size(); ++i) {
    if (phi.coeffs[i] == Rational(0)) continue;
    for (std::size_t j = 0; j < psi.coeffs.size(); ++j) {
      if (psi.coeffs[j] == Rational(0)) continue;
      sum += phi.coeffs[i].to_double() * psi.coeffs[j].to_double() *
             gaussian_mixed_moment(static_cast<int>(i), static_cast<int>(j), cov);
    }
  }
  return sum;
}

namespace {

struct KernelTriple {
  double xx, xy, yy;
};

KernelTriple kernel_step(const KernelTriple& K, const ActivationPoly& phi) {
  Cov2 cov{K.xx, K.xy, K.yy};
  cov.validate();
  KernelTriple next;
  next.xx = bivariate_gaussian_moment(phi, phi, Cov2{K.xx, K.xx, K.xx});
  next.yy = bivariate_gaussian_moment(phi, phi, Cov2{K.yy, K.yy, K.yy});
  next.xy = bivariate_gaussian_moment(phi, phi, cov);
  return next;
}

KernelTriple base_triple(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) fail(ErrorCode::ShapeMismatch, "inputs disagree on length");
  return {x.dot(x), x.dot(y), y.dot(y)};
}

}  // namespace

double gp_kernel_recursive(int L, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                           const std::vector<ActivationPoly>& activations) {
  if (L < 0) fail(ErrorCode::BadParameter, "negative depth");
  if (static_cast<int>(activations.size()) < L)
    fail(ErrorCode::ArityMismatch, "need one activation per layer 1..L");
  KernelTriple K = base_triple(x, y);
  for (int l = 1; l <= L; ++l) K = kernel_step(K, activations[l - 1]);
  return K.xy;
}

namespace {

std::string alpha_key(const Tree& a, int input_a, const Tree& b, int input_b) {
  std::string ka = tree_literal(a) + "/" + std::to_string(input_a);
  std::string kb = tree_literal(b) + "/" + std::to_string(input_b);
  return ka <= kb ? ka + "|" + kb : kb + "|" + ka;
}

struct TaggedChild {
  const Tree* tree;
  int input;
};

double alpha_matchings(std::vector<TaggedChild> items, const Eigen::Matrix2d& gram,
                       AlphaCache& cache);

}  // namespace

double alpha_pair(const Tree& a, int input_a, const Tree& b, int input_b,
                  const Eigen::Matrix2d& gram, AlphaCache& cache) {
  if (a.layer != b.layer) return 0.0;
  if (a.is_leaf()) return gram(input_a, input_b);
  const std::string key = alpha_key(a, input_a, b, input_b);
  auto it = cache.memo.find(key);
  if (it != cache.memo.end()) return it->second;
  std::vector<TaggedChild> items;
  for (const auto& c : a.children) items.push_back({&c, input_a});
  for (const auto& c : b.children) items.push_back({&c, input_b});
  double v = alpha_matchings(std::move(items), gram, cache);
  cache.memo[key] = v;
  return v;
}

namespace {

double alpha_matchings(std::vector<TaggedChild> items, const Eigen::Matrix2d& gram,
                       AlphaCache& cache) {
  if (items.empty()) return 1.0;
  if (items.size() % 2 != 0) return 0.0;
  double sum = 0.0;
  const TaggedChild first = items.front();
  for (std::size_t i = 1; i < items.size(); ++i) {
    std::vector<TaggedChild> rest;
    for (std::size_t j = 1; j < items.size(); ++j)
      if (j != i) rest.push_back(items[j]);
    sum += alpha_pair(*first.tree, first.input, *items[i].tree, items[i].input, gram, cache) *
           alpha_matchings(std::move(rest), gram, cache);
  }
  return sum;
}

}  // namespace

double alpha_rooted(const Tree& a, int root_a, int input_a, const Tree& b, int root_b,
                    int input_b, const Eigen::Matrix2d& gram, AlphaCache& cache) {
  if (root_a != root_b) return 0.0;
  return alpha_pair(a, input_a, b, input_b, gram, cache);
}

double gp_kernel_via_trees(int L, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                           const std::vector<ActivationPoly>& activations, int cap) {
  std::vector<Tree> trees = enumerate_trees(L, 1, activations, LeafMode::X);
  if (static_cast<int>(trees.size()) > cap)
    fail(ErrorCode::CapExceeded, "tree family larger than the cap");
  Eigen::Matrix2d gram;
  KernelTriple K0 = base_triple(x, y);
  gram << K0.xx, K0.xy, K0.xy, K0.yy;
  std::vector<double> coeff(trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i)
    coeff[i] = phi_coeff(trees[i], activations) /
               static_cast<double>(symmetry_factor(trees[i]));
  AlphaCache cache;
  double sum = 0.0;
  for (std::size_t i = 0; i < trees.size(); ++i)
    for (std::size_t j = 0; j < trees.size(); ++j)
      sum += coeff[i] * coeff[j] * alpha_pair(trees[i], 0, trees[j], 1, gram, cache);
  return sum;
}

double ntk_limit(int L, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                 const std::vector<ActivationPoly>& activations) {
  if (L < 0) fail(ErrorCode::BadParameter, "negative depth");
  if (static_cast<int>(activations.size()) < L)
    fail(ErrorCode::ArityMismatch, "need one activation per layer 1..L");
  KernelTriple K = base_triple(x, y);
  double theta = K.xy;
  for (int l = 1; l <= L; ++l) {
    const ActivationPoly& phi = activations[l - 1];
    ActivationPoly dphi = phi.derivative();
    Cov2 cov{K.xx, K.xy, K.yy};
    cov.validate();
    const double kdot = bivariate_gaussian_moment(dphi, dphi, cov);
    K = kernel_step(K, phi);
    theta = K.xy + kdot * theta;
  }
  return theta;
}

namespace {

// Coefficients of p^e by repeated convolution.
std::vector<Rational> poly_power(const std::vector<Rational>& p, int e) {
  std::vector<Rational> acc{Rational(1)};
  for (int t = 0; t < e; ++t) {
    std::vector<Rational> next(acc.size() + p.size() - 1, Rational(0));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] == Rational(0)) continue;
      for (std::size_t j = 0; j < p.size(); ++j)
        next[i + j] = next[i + j] + acc[i] * p[j];
    }
    acc = std::move(next);
  }
  return acc;
}

// E[q(X)] for X ~ N(0, K), exact: odd terms vanish, even use (j-1)!! K^{j/2}.
Rational poly_gaussian_mean(const std::vector<Rational>& q, const Rational& K) {
  Rational sum(0);
  for (std::size_t j = 0; j < q.size(); j += 2) {
    if (q[j] == Rational(0)) continue;
    Rational dfact(1);
    for (int t = static_cast<int>(j) - 1; t >= 1; t -= 2)
      dfact = dfact * Rational(t);
    sum = sum + q[j] * dfact * K.pow(static_cast<int>(j) / 2);
  }
  return sum;
}

double poly_power_gaussian_mean_f(const std::vector<double>& p, int e, double K) {
  std::vector<double> acc{1.0};
  for (int t = 0; t < e; ++t) {
    std::vector<double> next(acc.size() + p.size() - 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j) next[i + j] += acc[i] * p[j];
    acc = std::move(next);
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < acc.size(); j += 2) {
    double dfact = 1.0;
    for (int t = static_cast<int>(j) - 1; t >= 1; t -= 2) dfact *= t;
    sum += acc[j] * dfact * std::pow(K, static_cast<double>(j) / 2);
  }
  return sum;
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  for (const auto& r : v) out.push_back(r.to_double());
  return out;
}

}  // namespace

MuTable mu_table(int k_max, int L, const Rational& x2,
                 const std::vector<ActivationPoly>& activations) {
  if (k_max < 1) fail(ErrorCode::BadParameter, "k_max must be >= 1");
  if (L < 0) fail(ErrorCode::BadParameter, "negative depth");
  if (static_cast<int>(activations.size()) < L)
    fail(ErrorCode::ArityMismatch, "need one activation per layer 1..L");

  MuTable t;
  t.k_max = k_max;
  t.L = L;
  t.mu.assign(k_max, std::vector<double>(L, 0.0));
  t.Kx.assign(L + 1, 0.0);
  t.Kx[0] = x2.to_double();

  // Float path first; it always exists.
  for (int l = 1; l <= L; ++l) {
    const ActivationPoly& phi = activations[l - 1];
    if (phi.is_relu()) {
      for (int k = 1; k <= k_max; ++k) t.mu[k - 1][l - 1] = 0.5;
      t.Kx[l] = t.Kx[l - 1] / 2.0;
    } else {
      std::vector<double> c = to_doubles(phi.coeffs);
      std::vector<double> dc;
      for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(static_cast<double>(i) * c[i]);
      if (dc.empty()) dc.push_back(0.0);
      for (int k = 1; k <= k_max; ++k)
        t.mu[k - 1][l - 1] = poly_power_gaussian_mean_f(dc, 2 * k, t.Kx[l - 1]);
      t.Kx[l] = poly_power_gaussian_mean_f(c, 2, t.Kx[l - 1]);
    }
  }

  // Exact path: rationals unless an overflow interrupts it.
  try {
    std::vector<std::vector<Rational>> mu_rat(k_max, std::vector<Rational>(L, Rational(0)));
    std::vector<Rational> Kx_rat(L + 1, Rational(0));
    Kx_rat[0] = x2;
    for (int l = 1; l <= L; ++l) {
      const ActivationPoly& phi = activations[l - 1];
      if (phi.is_relu()) {
        for (int k = 1; k <= k_max; ++k) mu_rat[k - 1][l - 1] = Rational(1, 2);
        Kx_rat[l] = Kx_rat[l - 1] * Rational(1, 2);
      } else {
        std::vector<Rational> dc;
        for (std::size_t i = 1; i < phi.coeffs.size(); ++i)
          dc.push_back(phi.coeffs[i] * Rational(static_cast<long long>(i)));
        if (dc.empty()) dc.push_back(Rational(0));
        for (int k = 1; k <= k_max; ++k)
          mu_rat[k - 1][l - 1] = poly_gaussian_mean(poly_power(dc, 2 * k), Kx_rat[l - 1]);
        Kx_rat[l] = poly_gaussian_mean(poly_power(phi.coeffs, 2), Kx_rat[l - 1]);
      }
    }
    t.mu_rat = std::move(mu_rat);
    t.Kx_rat = std::move(Kx_rat);
    t.exact = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RationalOverflow) throw;
    t.exact = false;
  }
  return t;
}

MomentTable fc_moments(int k_max, int L, const Rational& x2,
                       const std::vector<ActivationPoly>& activations) {
  MomentTable mt;
  mt.k_max = k_max;
  mt.L = L;
  mt.mus = mu_table(k_max, L, x2, activations);
  mt.x2 = x2.to_double();
  for (std::size_t i = 0; i < activations.size(); ++i)
    mt.activation += (i ? ";" : "") + activations[i].describe();

  std::vector<std::vector<NCPartition>> nc(k_max + 1);
  std::vector<std::vector<NCPartition>> duals(k_max + 1);
  for (int k = 1; k <= k_max; ++k) {
    nc[k] = nc_enumerate(k);
    for (const auto& pi : nc[k]) duals[k].push_back(kreweras_dual(pi, k));
  }

  mt.m.assign(k_max, std::vector<double>(L + 1, 1.0));
  for (int l = 1; l <= L; ++l)
    for (int k = 1; k <= k_max; ++k) {
      double sum = 0.0;
      for (std::size_t p = 0; p < nc[k].size(); ++p) {
        double term = 1.0;
        for (const auto& b : nc[k][p].blocks)
          term *= mt.mus.mu[static_cast<int>(b.size()) - 1][l - 1];
        for (const auto& b : duals[k][p].blocks)
          term *= mt.m[static_cast<int>(b.size()) - 1][l - 1];
        sum += term;
      }
      mt.m[k - 1][l] = sum;
    }

  if (mt.mus.exact) {
    try {
      std::vector<std::vector<Rational>> m_rat(
          k_max, std::vector<Rational>(L + 1, Rational(1)));
      for (int l = 1; l <= L; ++l)
        for (int k = 1; k <= k_max; ++k) {
          Rational sum(0);
          for (std::size_t p = 0; p < nc[k].size(); ++p) {
            Rational term(1);
            for (const auto& b : nc[k][p].blocks)
              term = term * mt.mus.mu_rat[static_cast<int>(b.size()) - 1][l - 1];
            for (const auto& b : duals[k][p].blocks)
              term = term * m_rat[static_cast<int>(b.size()) - 1][l - 1];
            sum = sum + term;
          }
          m_rat[k - 1][l] = sum;
        }
      mt.m_rat = std::move(m_rat);
      mt.exact = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RationalOverflow) throw;
      mt.exact = false;
    }
  }
  return mt;
}

}  // namespace pgc
