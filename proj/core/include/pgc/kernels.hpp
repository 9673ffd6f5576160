#pragma once
// kernels.hpp — infinite-width limits: GP kernel by recursion and by the
// tree/pairing route, NTK limit, and the non-crossing moment recursion.

#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pgc/nc.hpp"
#include "pgc/rational.hpp"
#include "pgc/tree.hpp"

namespace pgc {

// 2x2 covariance of a centered Gaussian pair.
struct Cov2 {
  double xx = 0, xy = 0, yy = 0;
  // symmetric by construction; checks diagonal >= 0 and det >= -1e-12
  void validate() const;
};

// E[X^m Y^n] for (X,Y) ~ N(0, cov) via the mixed-moment recurrence
// E[X^m Y^n] = (m-1) s_xx E[X^{m-2} Y^n] + n s_xy E[X^{m-1} Y^{n-1}].
double gaussian_mixed_moment(int m, int n, const Cov2& cov);

// E[phi(X) psi(Y)] for polynomial phi, psi.
double bivariate_gaussian_moment(const ActivationPoly& phi,
                                 const ActivationPoly& psi, const Cov2& cov);

// K_0 = <x,y>; K_{l+1}(x,y) = E[phi_{l+1}(X) phi_{l+1}(Y)] with (X,Y)
// centered Gaussian with covariance built from K_l on {x,y}.
double gp_kernel_recursive(int L, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y,
                           const std::vector<ActivationPoly>& activations);

// Memo for the limiting covariance alpha over unordered tagged tree pairs.
struct AlphaCache {
  std::map<std::string, double> memo;
};

// alpha of the disjoint union of two height-l trees whose leaves carry the
// inputs gram is indexed by (input_a, input_b in {0,1}). Leaves give
// gram(a,b); nodes sum over all pairings of the combined children.
double alpha_pair(const Tree& a, int input_a, const Tree& b, int input_b,
                  const Eigen::Matrix2d& gram, AlphaCache& cache);

// Same with roots fixed to basis vectors: zero unless root_a == root_b.
double alpha_rooted(const Tree& a, int root_a, int input_a, const Tree& b,
                    int root_b, int input_b, const Eigen::Matrix2d& gram,
                    AlphaCache& cache);

// Double sum over height-L tree pairs of (phi phi / s s) * alpha; agrees
// with gp_kernel_recursive. cap bounds the tree count per side.
double gp_kernel_via_trees(int L, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y,
                           const std::vector<ActivationPoly>& activations,
                           int cap = 20000);

// Theta_0 = <x,y>; Theta_L = K_L + Kdot_L * Theta_{L-1}, Kdot built from
// the derivative activations.
double ntk_limit(int L, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                 const std::vector<ActivationPoly>& activations);

// mu[k][l] = E[phi_l'(X_{l-1})^{2k}], X_l ~ N(0, K_l), K_0 = x^2,
// K_{l+1} = E[phi_{l+1}(X_l)^2]. ReLU: mu = 1/2, K_{l+1} = K_l / 2.
// Exact rationals whenever every layer admits them; float mirror always.
struct MuTable {
  int k_max = 0, L = 0;
  bool exact = false;
  std::vector<std::vector<Rational>> mu_rat;  // [k-1][l-1], l = 1..L
  std::vector<std::vector<double>> mu;
  std::vector<Rational> Kx_rat;  // K_0..K_L
  std::vector<double> Kx;
};
MuTable mu_table(int k_max, int L, const Rational& x2,
                 const std::vector<ActivationPoly>& activations);

// m[k][l]: limiting spectral moments of the squared Jacobian, by the
// recursion m_{k,l} = sum over non-crossing pi of mu_{pi,l} * m_{dual,l-1};
// m_{k,0} = 1.
struct MomentTable {
  int k_max = 0, L = 0;
  bool exact = false;
  std::vector<std::vector<Rational>> m_rat;  // [k-1][l], l = 0..L
  std::vector<std::vector<double>> m;
  MuTable mus;
  std::string activation;
  double x2 = 1.0;
};
MomentTable fc_moments(int k_max, int L, const Rational& x2,
                       const std::vector<ActivationPoly>& activations);

}  // namespace pgc
