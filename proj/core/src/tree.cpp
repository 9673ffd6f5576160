// tree.cpp — activation polynomials and the rooted-tree combinatorics.

#include "pgc/tree.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace pgc {

ActivationPoly ActivationPoly::polynomial(std::vector<Rational> a) {
  ActivationPoly p;
  p.kind = Kind::Polynomial;
  p.coeffs = std::move(a);
  return p;
}

ActivationPoly ActivationPoly::linear() {
  return polynomial({Rational(0), Rational(1)});
}

ActivationPoly ActivationPoly::relu() {
  ActivationPoly p;
  p.kind = Kind::ReLU;
  return p;
}

ActivationPoly ActivationPoly::parse(const std::string& text) {
  if (text == "linear") return linear();
  if (text == "relu") return relu();
  const std::string prefix = "poly:";
  if (text.rfind(prefix, 0) != 0)
    fail(ErrorCode::BadParameter, "unknown activation '" + text + "'");
  std::vector<Rational> coeffs;
  std::string body = text.substr(prefix.size());
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto slash = item.find('/');
    try {
      if (slash == std::string::npos)
        coeffs.push_back(Rational(std::stoll(item)));
      else
        coeffs.push_back(Rational(std::stoll(item.substr(0, slash)),
                                  std::stoll(item.substr(slash + 1))));
    } catch (const std::logic_error&) {
      fail(ErrorCode::BadParameter, "bad coefficient '" + item + "' in '" + text + "'");
    }
  }
  if (coeffs.empty())
    fail(ErrorCode::BadParameter, "activation '" + text + "' has no coefficients");
  return polynomial(std::move(coeffs));
}

bool ActivationPoly::is_linear() const {
  if (kind != Kind::Polynomial) return false;
  if (degree() != 1) return false;
  return coeffs[0] == Rational(0) && coeffs[1] == Rational(1);
}

int ActivationPoly::degree() const {
  if (kind != Kind::Polynomial)
    fail(ErrorCode::NonPolynomialActivation, "degree of a non-polynomial activation");
  int d = static_cast<int>(coeffs.size()) - 1;
  while (d >= 0 && coeffs[d] == Rational(0)) --d;
  return d;
}

Rational ActivationPoly::deriv_at_zero(int M) const {
  if (kind != Kind::Polynomial)
    fail(ErrorCode::NonPolynomialActivation, "Taylor coefficient of a non-polynomial activation");
  if (M < 0) fail(ErrorCode::BadParameter, "negative derivative order");
  if (M > degree()) return Rational(0);
  Rational f(1);
  for (int k = 2; k <= M; ++k) f = f * Rational(k);
  return f * coeffs[M];
}

double ActivationPoly::eval(double t) const {
  if (kind == Kind::ReLU) return t > 0 ? t : 0.0;
  double v = 0;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
    v = v * t + coeffs[i].to_double();
  return v;
}

double ActivationPoly::deriv(double t) const {
  if (kind == Kind::ReLU) return t > 0 ? 1.0 : 0.0;
  double v = 0;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 1; --i)
    v = v * t + i * coeffs[i].to_double();
  return v;
}

ActivationPoly ActivationPoly::derivative() const {
  if (kind != Kind::Polynomial)
    fail(ErrorCode::NonPolynomialActivation, "derivative polynomial of a non-polynomial activation");
  std::vector<Rational> d;
  for (std::size_t i = 1; i < coeffs.size(); ++i) d.push_back(coeffs[i] * Rational(static_cast<long long>(i)));
  if (d.empty()) d.push_back(Rational(0));
  return polynomial(std::move(d));
}

std::string ActivationPoly::describe() const {
  if (kind == Kind::ReLU) return "relu";
  if (is_linear()) return "linear";
  std::string s = "poly:";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) s += ",";
    s += coeffs[i].to_string();
  }
  return s;
}

Tree Tree::leaf(LeafKind kind, int basis_index) {
  Tree t;
  t.layer = 0;
  t.leaf_kind = kind;
  t.basis_index = basis_index;
  if (kind == LeafKind::Basis && basis_index < 1)
    fail(ErrorCode::BadBasisIndex, "leaf basis index must be >= 1");
  return t;
}

Tree Tree::node(int layer, std::vector<Tree> children) {
  if (layer < 1) fail(ErrorCode::BadParameter, "internal node layer must be >= 1");
  for (const auto& c : children)
    if (c.layer != layer - 1)
      fail(ErrorCode::BadParameter, "child layer must be one below the node layer");
  Tree t;
  t.layer = layer;
  t.children = std::move(children);
  std::sort(t.children.begin(), t.children.end(),
            [](const Tree& a, const Tree& b) { return tree_cmp(a, b) < 0; });
  return t;
}

int Tree::count_leaves(LeafKind kind) const {
  if (is_leaf()) return leaf_kind == kind ? 1 : 0;
  int n = 0;
  for (const auto& c : children) n += c.count_leaves(kind);
  return n;
}

int Tree::count_freed_edges() const {
  int n = freed_edge ? 1 : 0;
  for (const auto& c : children) n += c.count_freed_edges();
  return n;
}

int tree_cmp(const Tree& a, const Tree& b) {
  if (a.layer != b.layer) return a.layer < b.layer ? -1 : 1;
  if (a.freed_edge != b.freed_edge) return a.freed_edge ? 1 : -1;
  if (a.is_leaf()) {
    if (a.leaf_kind != b.leaf_kind)
      return static_cast<int>(a.leaf_kind) < static_cast<int>(b.leaf_kind) ? -1 : 1;
    if (a.leaf_kind == LeafKind::Basis && a.basis_index != b.basis_index)
      return a.basis_index < b.basis_index ? -1 : 1;
    return 0;
  }
  if (a.children.size() != b.children.size())
    return a.children.size() < b.children.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    int c = tree_cmp(a.children[i], b.children[i]);
    if (c != 0) return c;
  }
  return 0;
}

bool tree_equal(const Tree& a, const Tree& b) { return tree_cmp(a, b) == 0; }

namespace {

void literal_rec(const Tree& t, bool top, std::string& out) {
  if (t.freed_edge) out += "*";
  out += "[";
  if (t.is_leaf()) {
    switch (t.leaf_kind) {
      case LeafKind::XVec: out += "x"; break;
      case LeafKind::FreeIn: out += "free"; break;
      case LeafKind::Basis: out += "e" + std::to_string(t.basis_index); break;
    }
  } else if (!t.children.empty()) {
    out += " ";
    for (const auto& c : t.children) {
      literal_rec(c, false, out);
      out += " ";
    }
  }
  out += "]" + std::to_string(t.layer);
  if (top) {
    if (t.root_mode == RootMode::Pruned) out += "@pruned";
    if (t.root_mode == RootMode::FixedBasis) out += "@e" + std::to_string(t.root_basis);
  }
}

struct TreeParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit TreeParser(const std::string& text) : s(text) {}

  void ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() {
    ws();
    if (pos >= s.size()) fail(ErrorCode::BadTreeLiteral, "unexpected end of tree literal");
    return s[pos];
  }
  bool done() {
    ws();
    return pos >= s.size();
  }
  void expect(char c) {
    if (peek() != c)
      fail(ErrorCode::BadTreeLiteral,
           std::string("expected '") + c + "' at position " + std::to_string(pos));
    ++pos;
  }
  int integer() {
    ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail(ErrorCode::BadTreeLiteral, "expected a number at position " +
                                                          std::to_string(start));
    return std::stoi(s.substr(start, pos - start));
  }
  std::string word() {
    ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(start, pos - start);
  }

  Tree tree() {
    bool freed = false;
    if (peek() == '*') {
      freed = true;
      ++pos;
    }
    expect('[');
    Tree t;
    bool is_leaf_payload = false;
    if (peek() == '[' || peek() == '*') {
      std::vector<Tree> children;
      while (peek() != ']') children.push_back(tree());
      expect(']');
      int layer = integer();
      t = Tree::node(layer, std::move(children));
    } else if (peek() == ']') {
      expect(']');
      int layer = integer();
      t = Tree::node(layer, {});
    } else {
      std::string w = word();
      if (w == "x")
        t = Tree::leaf(LeafKind::XVec);
      else if (w == "free")
        t = Tree::leaf(LeafKind::FreeIn);
      else if (w.size() > 1 && w[0] == 'e')
        t = Tree::leaf(LeafKind::Basis, std::stoi(w.substr(1)));
      else
        fail(ErrorCode::BadTreeLiteral, "bad leaf payload '" + w + "'");
      is_leaf_payload = true;
      expect(']');
      int layer = integer();
      if (layer != 0) fail(ErrorCode::BadTreeLiteral, "leaf layer must be 0");
    }
    (void)is_leaf_payload;
    t.freed_edge = freed;
    return t;
  }
};

}  // namespace

std::string tree_literal(const Tree& t) {
  std::string out;
  literal_rec(t, true, out);
  return out;
}

Tree parse_tree(const std::string& text) {
  TreeParser p(text);
  Tree t;
  try {
    t = p.tree();
    if (!p.done() && p.peek() == '@') {
      ++p.pos;
      std::string w = p.word();
      if (w == "pruned") {
        t.root_mode = RootMode::Pruned;
      } else if (w.size() > 1 && w[0] == 'e') {
        t.root_mode = RootMode::FixedBasis;
        t.root_basis = std::stoi(w.substr(1));
        if (t.root_basis < 1) fail(ErrorCode::BadTreeLiteral, "root basis index must be >= 1");
      } else {
        fail(ErrorCode::BadTreeLiteral, "bad root suffix '@" + w + "'");
      }
    }
  } catch (const std::logic_error&) {
    fail(ErrorCode::BadTreeLiteral, "malformed tree literal '" + text + "'");
  }
  if (!p.done())
    fail(ErrorCode::BadTreeLiteral, "trailing text in tree literal '" + text + "'");
  return t;
}

namespace {

// Multisets of size M over trees[0..n), as sorted index tuples.
void index_multisets(int n, int M, int lo, std::vector<int>& acc,
                     std::vector<std::vector<int>>& out) {
  if (M == 0) {
    out.push_back(acc);
    return;
  }
  for (int i = lo; i < n; ++i) {
    acc.push_back(i);
    index_multisets(n, M - 1, i, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<Tree> enumerate_trees(int L, int n_leaf_symbols,
                                  const std::vector<ActivationPoly>& activations,
                                  LeafMode leaf_mode) {
  if (L < 0) fail(ErrorCode::BadParameter, "negative height");
  if (static_cast<int>(activations.size()) < L)
    fail(ErrorCode::ArityMismatch, "need one activation per layer 1..L");
  for (int l = 0; l < L; ++l)
    if (activations[l].is_relu())
      fail(ErrorCode::NonPolynomialActivation, "tree enumeration needs Taylor coefficients");

  std::vector<Tree> level;
  if (leaf_mode == LeafMode::X) {
    level.push_back(Tree::leaf(LeafKind::XVec));
  } else {
    if (n_leaf_symbols < 1) fail(ErrorCode::BadParameter, "need at least one leaf symbol");
    for (int i = 1; i <= n_leaf_symbols; ++i) level.push_back(Tree::leaf(LeafKind::Basis, i));
  }
  for (int l = 1; l <= L; ++l) {
    const ActivationPoly& phi = activations[l - 1];
    std::vector<Tree> next;
    const int n = static_cast<int>(level.size());
    for (int M = 0; M <= phi.degree(); ++M) {
      if (phi.deriv_at_zero(M) == Rational(0)) continue;
      std::vector<std::vector<int>> tuples;
      std::vector<int> acc;
      index_multisets(n, M, 0, acc, tuples);
      for (const auto& tup : tuples) {
        std::vector<Tree> children;
        for (int i : tup) children.push_back(level[i]);
        next.push_back(Tree::node(l, std::move(children)));
      }
    }
    level = std::move(next);
  }
  return level;
}

long long symmetry_factor(const Tree& t) {
  if (t.is_leaf()) return 1;
  long long s = 1;
  std::size_t i = 0;
  while (i < t.children.size()) {
    std::size_t j = i;
    while (j < t.children.size() && tree_cmp(t.children[i], t.children[j]) == 0) ++j;
    const long long mult = static_cast<long long>(j - i);
    const long long sc = symmetry_factor(t.children[i]);
    for (long long k = 2; k <= mult; ++k) s *= k;
    for (long long k = 0; k < mult; ++k) s *= sc;
    i = j;
  }
  return s;
}

namespace {

double phi_coeff_rec(const Tree& t, const std::vector<ActivationPoly>& activations,
                     bool dot_top) {
  if (t.is_leaf()) return 1.0;
  if (t.layer > static_cast<int>(activations.size()))
    fail(ErrorCode::NoSuchLayer, "no activation for layer " + std::to_string(t.layer));
  const ActivationPoly& phi = activations[t.layer - 1];
  const int M = static_cast<int>(t.children.size());
  double v = phi.deriv_at_zero(dot_top ? M + 1 : M).to_double();
  for (const auto& c : t.children) v *= phi_coeff_rec(c, activations, false);
  return v;
}

}  // namespace

double phi_coeff(const Tree& t, const std::vector<ActivationPoly>& activations) {
  return phi_coeff_rec(t, activations, false);
}

double dot_phi_coeff(const Tree& t, const std::vector<ActivationPoly>& activations) {
  return phi_coeff_rec(t, activations, true);
}

double x_weight(const Tree& t, const Eigen::VectorXd& x) {
  if (t.is_leaf()) {
    if (t.leaf_kind != LeafKind::Basis)
      fail(ErrorCode::LeafModeMismatch, "x-weight needs basis leaves");
    if (t.basis_index > x.size())
      fail(ErrorCode::BadBasisIndex, "leaf basis index exceeds the input length");
    return x[t.basis_index - 1];
  }
  double v = 1.0;
  for (const auto& c : t.children) v *= x_weight(c, x);
  return v;
}

namespace {

// Rebuild with children re-sorted along the path that was modified.
Tree resorted(Tree t) {
  if (t.is_leaf()) return t;
  std::vector<Tree> children;
  for (auto& c : t.children) children.push_back(resorted(std::move(c)));
  Tree out = Tree::node(t.layer, std::move(children));
  out.freed_edge = t.freed_edge;
  out.root_mode = t.root_mode;
  out.root_basis = t.root_basis;
  return out;
}

void dx_positions(const Tree& t, std::vector<int>& path, const Tree& whole,
                  std::vector<Tree>& out);

Tree with_leaf_freed(const Tree& t, const std::vector<int>& path, std::size_t depth) {
  Tree copy = t;
  if (depth == path.size()) {
    if (!copy.is_leaf()) fail(ErrorCode::LeafModeMismatch, "path does not end at a leaf");
    copy.leaf_kind = LeafKind::FreeIn;
    return copy;
  }
  copy.children[path[depth]] = with_leaf_freed(copy.children[path[depth]], path, depth + 1);
  return copy;
}

void dx_positions(const Tree& t, std::vector<int>& path, const Tree& whole,
                  std::vector<Tree>& out) {
  if (t.is_leaf()) {
    if (t.leaf_kind == LeafKind::XVec) out.push_back(resorted(with_leaf_freed(whole, path, 0)));
    return;
  }
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    dx_positions(t.children[i], path, whole, out);
    path.pop_back();
  }
}

Tree with_edge_freed(const Tree& t, const std::vector<int>& path, std::size_t depth) {
  Tree copy = t;
  if (depth == path.size()) {
    copy.freed_edge = true;
    return copy;
  }
  copy.children[path[depth]] = with_edge_freed(copy.children[path[depth]], path, depth + 1);
  return copy;
}

void dell_positions(const Tree& t, int ell, std::vector<int>& path, const Tree& whole,
                    std::vector<Tree>& out) {
  if (t.layer == ell && !t.freed_edge)
    out.push_back(resorted(with_edge_freed(whole, path, 0)));
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    dell_positions(t.children[i], ell, path, whole, out);
    path.pop_back();
  }
}

void dedup(std::vector<Tree>& trees) {
  std::vector<Tree> out;
  for (const auto& t : trees) {
    bool dup = false;
    for (const auto& u : out)
      if (tree_cmp(t, u) == 0 && t.root_mode == u.root_mode && t.root_basis == u.root_basis)
        dup = true;
    if (!dup) out.push_back(t);
  }
  trees = std::move(out);
}

}  // namespace

std::vector<Tree> derivative_trees(const std::vector<Tree>& base, DerivKind kind, int ell) {
  std::vector<Tree> out;
  for (const auto& t : base) {
    switch (kind) {
      case DerivKind::DX: {
        if (t.count_leaves(LeafKind::Basis) > 0)
          fail(ErrorCode::LeafModeMismatch, "x-derivative needs x leaves");
        std::vector<Tree> mine;
        std::vector<int> path;
        dx_positions(t, path, t, mine);
        dedup(mine);
        for (auto& m : mine) out.push_back(std::move(m));
        break;
      }
      case DerivKind::DEll: {
        if (ell < 0 || ell > t.height())
          fail(ErrorCode::NoSuchLayer, "no layer " + std::to_string(ell) + " edge to free");
        std::vector<Tree> mine;
        std::vector<int> path;
        dell_positions(t, ell, path, t, mine);
        dedup(mine);
        for (auto& m : mine) out.push_back(std::move(m));
        break;
      }
      case DerivKind::PruneRoot: {
        Tree copy = t;
        copy.root_mode = RootMode::Pruned;
        out.push_back(copy);
        break;
      }
    }
  }
  return out;
}

long long SymTuple::s() const {
  long long v = 1;
  std::size_t i = 0;
  while (i < indices.size()) {
    std::size_t j = i;
    while (j < indices.size() && indices[i] == indices[j]) ++j;
    for (long long k = 2; k <= static_cast<long long>(j - i); ++k) v *= k;
    i = j;
  }
  return v;
}

std::vector<SymTerm> multiset_power_expand(int n_vectors, int M) {
  if (n_vectors < 0 || M < 0) fail(ErrorCode::BadParameter, "negative multiset parameters");
  std::vector<std::vector<int>> tuples;
  std::vector<int> acc;
  index_multisets(n_vectors, M, 0, acc, tuples);
  long long mfact = 1;
  for (int k = 2; k <= M; ++k) mfact *= k;
  std::vector<SymTerm> out;
  for (auto& tup : tuples) {
    SymTuple st;
    st.indices = std::move(tup);
    long long coeff = mfact / st.s();
    out.push_back({std::move(st), coeff});
  }
  return out;
}

Eigen::VectorXd hadamard_power_sum(const std::vector<Eigen::VectorXd>& vectors, int M) {
  if (vectors.empty()) fail(ErrorCode::BadParameter, "need at least one vector");
  const Eigen::Index dim = vectors[0].size();
  for (const auto& v : vectors)
    if (v.size() != dim) fail(ErrorCode::ShapeMismatch, "vectors disagree on length");
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim);
  for (const auto& term : multiset_power_expand(static_cast<int>(vectors.size()), M)) {
    Eigen::VectorXd prod = Eigen::VectorXd::Ones(dim);
    for (int i : term.tuple.indices) prod = prod.cwiseProduct(vectors[i]);
    acc += static_cast<double>(term.coeff) * prod;
  }
  return acc;
}

}  // namespace pgc
