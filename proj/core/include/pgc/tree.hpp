#pragma once
// tree.hpp — rooted-tree spaces for the layered expansion: enumeration,
// symmetry factors, activation coefficients, derivative trees, literals.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pgc/errors.hpp"
#include "pgc/rational.hpp"

namespace pgc {

// Activation function: polynomial with rational coefficients, or ReLU.
// ReLU is admitted only by the kernel/Monte-Carlo paths; tree enumeration
// needs Taylor coefficients at zero and rejects it.
struct ActivationPoly {
  enum class Kind { Polynomial, ReLU };

  Kind kind = Kind::Polynomial;
  std::vector<Rational> coeffs;  // a_0..a_d

  static ActivationPoly polynomial(std::vector<Rational> a);
  static ActivationPoly linear();  // t
  static ActivationPoly relu();
  // "poly:0,1,1" (t+t^2, integer or p/q entries), "linear", "relu"
  static ActivationPoly parse(const std::string& text);

  bool is_relu() const { return kind == Kind::ReLU; }
  bool is_linear() const;
  int degree() const;  // Polynomial only; trailing zero coefficients ignored
  // phi^(M)(0) = M! * a_M; zero above the degree. Polynomial only.
  Rational deriv_at_zero(int M) const;

  double eval(double t) const;
  double deriv(double t) const;  // ReLU: 1 for t>0, else 0
  ActivationPoly derivative() const;  // Polynomial only
  std::string describe() const;
};

enum class LeafKind { Basis, XVec, FreeIn };
enum class RootMode { FreeOut, FixedBasis, Pruned };

// Non-plane rooted tree. layer == 0 is a leaf; a layer-l node's children
// all have layer l-1, kept in canonical sorted order so structural
// equality is plane-order independent. freed_edge marks the node whose
// incoming weight-matrix edge has been differentiated away.
struct Tree {
  int layer = 0;
  LeafKind leaf_kind = LeafKind::XVec;  // leaf only
  int basis_index = 1;                  // leaf only, 1-based, Basis kind
  std::vector<Tree> children;           // node only
  bool freed_edge = false;
  RootMode root_mode = RootMode::FreeOut;  // top node only
  int root_basis = 1;                      // 1-based, FixedBasis only

  static Tree leaf(LeafKind kind, int basis_index = 1);
  static Tree node(int layer, std::vector<Tree> children);

  bool is_leaf() const { return layer == 0; }
  int height() const { return layer; }
  int count_leaves(LeafKind kind) const;
  int count_freed_edges() const;
};

// Orders trees structurally (layer, payload, children), ignoring root mode.
int tree_cmp(const Tree& a, const Tree& b);
bool tree_equal(const Tree& a, const Tree& b);

// Canonical bracket text, e.g. "[ [e1]0 [e2]0 ]1". A freed edge gets a
// "*" prefix on its node; non-default root modes append "@e<k>" or
// "@pruned". parse_tree round-trips and canonicalizes child order.
std::string tree_literal(const Tree& t);
Tree parse_tree(const std::string& text);

enum class LeafMode { Basis, X };

// All trees of height L with nonzero activation coefficient, leaves drawn
// from e_1..e_n (Basis mode) or the single x symbol. activations[l-1] is
// the layer-l activation; multiset sizes M with phi_l^(M)(0)=0 are pruned
// and M never exceeds deg(phi_l).
std::vector<Tree> enumerate_trees(int L, int n_leaf_symbols,
                                  const std::vector<ActivationPoly>& activations,
                                  LeafMode leaf_mode);

// s(leaf)=1; s(node)= prod over distinct children: mult! * s(child)^mult.
long long symmetry_factor(const Tree& t);

// Product over internal nodes of phi_l^(M)(0), M the out-degree; 1 on leaves.
double phi_coeff(const Tree& t, const std::vector<ActivationPoly>& activations);
// Same, but the top node uses out-degree+1 (the trunk child it lost).
double dot_phi_coeff(const Tree& t, const std::vector<ActivationPoly>& activations);

// Product of x-coordinates over Basis leaves; rejects XVec/FreeIn leaves.
double x_weight(const Tree& t, const Eigen::VectorXd& x);

enum class DerivKind { DX, DEll, PruneRoot };

// DX: free one x-leaf per output tree (every position, deduplicated).
// DEll: mark one layer-ell incoming edge as freed (every position).
// PruneRoot: drop the root vertex and its edge (root_mode = Pruned).
std::vector<Tree> derivative_trees(const std::vector<Tree>& base, DerivKind kind,
                                   int ell = -1);

// Sorted multiset of item ids with s() = prod multiplicity!.
struct SymTuple {
  std::vector<int> indices;
  long long s() const;
};

struct SymTerm {
  SymTuple tuple;
  long long coeff;  // M! / s(tuple)
};

// Terms of (v_0+...+v_{n-1})^{Hadamard M} = sum coeff * prod_{i in tuple} v_i.
// M = 0 yields the single empty tuple (all-ones product).
std::vector<SymTerm> multiset_power_expand(int n_vectors, int M);
Eigen::VectorXd hadamard_power_sum(const std::vector<Eigen::VectorXd>& vectors, int M);

}  // namespace pgc
