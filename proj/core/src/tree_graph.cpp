// tree_graph.cpp — trees as graphs, the layered expansion, decorated cycles.

#include "pgc/tree_graph.hpp"

#include <map>
#include <string>

#include "pgc/eval.hpp"

namespace pgc {

namespace {

struct Builder {
  const TreeRealization* r = nullptr;
  std::vector<VertexSpec> vs;
  std::vector<EdgeSpec> es;
  std::vector<std::string> in_cells;
  std::vector<std::string> out_cells;

  const CellInput& weight(int layer) const {
    if (layer < 0 || layer >= static_cast<int>(r->weight_inputs.size()))
      fail(ErrorCode::ArityMismatch, "no weight input for layer " + std::to_string(layer));
    return r->weight_inputs[layer];
  }

  int dim(int layer) const {
    if (layer < 0 || layer >= static_cast<int>(r->dims.size()))
      fail(ErrorCode::ArityMismatch, "no dimension for layer " + std::to_string(layer));
    return r->dims[layer];
  }

  CellInput leaf_input(const Tree& t) {
    switch (t.leaf_kind) {
      case LeafKind::XVec:
        if (r->x.size() != dim(0))
          fail(ErrorCode::ShapeMismatch, "x length != layer-0 dimension");
        return CellInput::dense(r->x);
      case LeafKind::Basis:
        return CellInput::basis(t.basis_index);
      case LeafKind::FreeIn:
        return CellInput::free_in();
    }
    fail(ErrorCode::BadParameter, "unreachable leaf kind");
  }

  // Vertex for t's center/leaf named id, children hanging below it.
  void subtree(const Tree& t, const std::string& id) {
    if (t.is_leaf()) {
      vs.push_back({id, dim(0), leaf_input(t)});
      if (t.leaf_kind == LeafKind::FreeIn) in_cells.push_back(id);
      return;
    }
    vs.push_back({id, dim(t.layer), CellInput::ones()});
    attach_children(t, id);
  }

  void attach_children(const Tree& t, const std::string& id) {
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      const Tree& c = t.children[i];
      const std::string cid = id + "." + std::to_string(i);
      const std::string eid = "w:" + cid;
      if (c.freed_edge) {
        es.push_back({eid, id, cid, CellInput::free_in()});
        in_cells.push_back(eid);
      } else {
        es.push_back({eid, id, cid, weight(c.layer)});
      }
      subtree(c, cid);
    }
  }
};

}  // namespace

OperatorGraph tree_to_graph(const Tree& t, const TreeRealization& r) {
  Builder b;
  b.r = &r;
  const int h = t.height();
  if (t.root_mode == RootMode::Pruned) {
    if (t.freed_edge)
      fail(ErrorCode::PatternMismatch, "a pruned tree has no root edge to free");
    if (t.is_leaf()) {
      // The pruned leaf is the identity on its payload.
      b.vs.push_back({"n", b.dim(0), CellInput::free_out()});
      b.out_cells.push_back("n");
      b.vs.push_back({"n.x", b.dim(0), b.leaf_input(t)});
      if (t.leaf_kind == LeafKind::FreeIn) b.in_cells.push_back("n.x");
      b.es.push_back({"w:n.x", "n", "n.x", CellInput::identity()});
    } else {
      b.vs.push_back({"n", b.dim(h), CellInput::free_out()});
      b.out_cells.push_back("n");
      b.attach_children(t, "n");
    }
  } else {
    const CellInput root_input = t.root_mode == RootMode::FreeOut
                                     ? CellInput::free_out()
                                     : CellInput::basis(t.root_basis);
    b.vs.push_back({"r", b.dim(h + 1), root_input});
    if (t.root_mode == RootMode::FreeOut) b.out_cells.push_back("r");
    if (t.freed_edge) {
      b.es.push_back({"w:n", "r", "n", CellInput::free_in()});
      b.in_cells.push_back("w:n");
    } else {
      b.es.push_back({"w:n", "r", "n", b.weight(h)});
    }
    // Re-create the top without its freed mark so subtree() stays generic.
    Tree top = t;
    top.freed_edge = false;
    b.subtree(top, "n");
  }
  return make_operator_graph(build_graph(b.vs, b.es), b.in_cells, b.out_cells);
}

namespace {

Eigen::VectorXd tree_vector(const Tree& t, const Eigen::VectorXd& x,
                            const std::vector<Eigen::MatrixXd>& weights,
                            std::map<std::string, Eigen::VectorXd>& memo) {
  const std::string key = tree_literal(t);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  Eigen::VectorXd u;
  if (t.is_leaf()) {
    if (t.leaf_kind != LeafKind::XVec)
      fail(ErrorCode::LeafModeMismatch, "expansion evaluation needs x leaves");
    u = x;
  } else {
    u = Eigen::VectorXd::Ones(weights[t.layer].cols());
    for (const auto& c : t.children)
      u = u.cwiseProduct(tree_vector(c, x, weights, memo));
  }
  if (weights[t.layer].cols() != u.size())
    fail(ErrorCode::ShapeMismatch, "weight shape does not match the layer width");
  Eigen::VectorXd v = weights[t.layer] * u;
  memo[key] = v;
  return v;
}

}  // namespace

double eval_tree_expansion(int L, int k, const Eigen::VectorXd& x,
                           const std::vector<Eigen::MatrixXd>& weights,
                           const std::vector<ActivationPoly>& activations) {
  if (L < 0) fail(ErrorCode::BadParameter, "negative depth");
  if (static_cast<int>(weights.size()) < L + 1)
    fail(ErrorCode::ArityMismatch, "need weight matrices for layers 0..L");
  if (x.size() != weights[0].cols())
    fail(ErrorCode::ShapeMismatch, "x length != input width");
  if (k < 0 || k >= weights[L].rows())
    fail(ErrorCode::BadBasisIndex, "output coordinate out of range");
  std::vector<Tree> trees = enumerate_trees(L, 1, activations, LeafMode::X);
  std::map<std::string, Eigen::VectorXd> memo;
  double sum = 0.0;
  for (const auto& t : trees) {
    const double c =
        phi_coeff(t, activations) / static_cast<double>(symmetry_factor(t));
    sum += c * tree_vector(t, x, weights, memo)[k];
  }
  return sum;
}

namespace {

struct CycleBuilder {
  const TreeRealization* r = nullptr;
  int L = 0;
  std::vector<VertexSpec> vs;
  std::vector<EdgeSpec> es;

  int dim(int layer) const { return r->dims[layer]; }

  CellInput leaf_input(const Tree& t) const {
    if (t.leaf_kind == LeafKind::XVec) {
      if (r->x.size() != dim(0))
        fail(ErrorCode::ShapeMismatch, "x length != layer-0 dimension");
      return CellInput::dense(r->x);
    }
    return CellInput::basis(t.basis_index);
  }

  void subtree(const Tree& t, const std::string& id, const std::string& parent) {
    if (t.is_leaf())
      vs.push_back({id, dim(0), leaf_input(t)});
    else
      vs.push_back({id, dim(t.layer), CellInput::ones()});
    es.push_back({"pw:" + id, parent, id, r->weight_inputs[t.layer]});
    for (std::size_t i = 0; i < t.children.size(); ++i)
      subtree(t.children[i], id + "." + std::to_string(i), id);
  }
};

}  // namespace

ProductGraph decorated_cycle(int k, int L, const std::vector<Tree>& pieces,
                             const TreeRealization& r) {
  if (k < 1) fail(ErrorCode::BadParameter, "need k >= 1 slot pairs");
  if (L < 1) fail(ErrorCode::BadParameter, "need depth L >= 1");
  if (static_cast<int>(pieces.size()) != 2 * k * L)
    fail(ErrorCode::ArityMismatch, "need 2kL trunk pieces");
  if (static_cast<int>(r.dims.size()) < L + 1)
    fail(ErrorCode::ArityMismatch, "need dimensions for layers 0..L");
  if (static_cast<int>(r.weight_inputs.size()) < L)
    fail(ErrorCode::ArityMismatch, "need weight inputs for layers 0..L-1");
  for (int t = 0; t < 2 * k; ++t)
    for (int j = 0; j < L; ++j) {
      const Tree& p = pieces[t * L + j];
      if (p.root_mode != RootMode::Pruned)
        fail(ErrorCode::PatternMismatch, "trunk pieces must be pruned");
      if (p.height() != L - j)
        fail(ErrorCode::PatternMismatch, "piece height must match its trunk level");
      if (p.count_leaves(LeafKind::FreeIn) > 0 || p.count_freed_edges() > 0)
        fail(ErrorCode::PatternMismatch, "trunk pieces must have no free cells");
    }

  CycleBuilder b;
  b.r = &r;
  b.L = L;
  for (int m = 0; m < k; ++m) b.vs.push_back({"b" + std::to_string(m), r.dims[0], CellInput::ones()});
  for (int m = 0; m < k; ++m) b.vs.push_back({"u" + std::to_string(m), r.dims[L], CellInput::ones()});
  for (int t = 0; t < 2 * k; ++t)
    for (int l = 1; l < L; ++l)
      b.vs.push_back({"t" + std::to_string(t) + "." + std::to_string(l), r.dims[l],
                      CellInput::ones()});

  auto trunk_vertex = [&](int t, int l) -> std::string {
    if (l == 0) return "b" + std::to_string(t / 2);
    if (l == L) return "u" + std::to_string(((t + 1) / 2) % k);
    return "t" + std::to_string(t) + "." + std::to_string(l);
  };

  for (int t = 0; t < 2 * k; ++t)
    for (int l = 1; l <= L; ++l)
      b.es.push_back({"tw" + std::to_string(t) + "." + std::to_string(l),
                      trunk_vertex(t, l), trunk_vertex(t, l - 1), r.weight_inputs[l - 1]});

  for (int t = 0; t < 2 * k; ++t)
    for (int j = 0; j < L; ++j) {
      const Tree& p = pieces[t * L + j];
      const std::string attach = trunk_vertex(t, L - j);
      const std::string base =
          "p" + std::to_string(t) + "." + std::to_string(j) + ".";
      for (std::size_t i = 0; i < p.children.size(); ++i)
        b.subtree(p.children[i], base + std::to_string(i), attach);
    }

  return build_graph(b.vs, b.es);
}

}  // namespace pgc
