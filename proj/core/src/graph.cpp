// graph.cpp — cell inputs, graph construction and validation.

#include "pgc/graph.hpp"

#include <algorithm>
#include <queue>

namespace pgc {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BadBasisIndex: return "BadBasisIndex";
    case ErrorCode::IdentityOnRectangular: return "IdentityOnRectangular";
    case ErrorCode::FreeCellPresent: return "FreeCellPresent";
    case ErrorCode::RandomCellPresent: return "RandomCellPresent";
    case ErrorCode::FreeCellCountMismatch: return "FreeCellCountMismatch";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::CellKindMismatch: return "CellKindMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnknownCell: return "UnknownCell";
    case ErrorCode::DuplicateCellId: return "DuplicateCellId";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::OddLabelCount: return "OddLabelCount";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BadTreeLiteral: return "BadTreeLiteral";
    case ErrorCode::NonPolynomialActivation: return "NonPolynomialActivation";
    case ErrorCode::LeafModeMismatch: return "LeafModeMismatch";
    case ErrorCode::NoSuchLayer: return "NoSuchLayer";
    case ErrorCode::PatternMismatch: return "PatternMismatch";
    case ErrorCode::NotNonCrossing: return "NotNonCrossing";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::PSDViolation: return "PSDViolation";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::RationalOverflow: return "RationalOverflow";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::InvalidOperation: return "InvalidOperation";
  }
  return "Unknown";
}

const char* input_kind_name(InputKind k) {
  switch (k) {
    case InputKind::DenseVector: return "dense_vector";
    case InputKind::DenseMatrix: return "dense_matrix";
    case InputKind::AllOnes: return "ones";
    case InputKind::Identity: return "identity";
    case InputKind::AllOnesMatrix: return "ones_matrix";
    case InputKind::Basis: return "basis";
    case InputKind::Random: return "random";
    case InputKind::FreeIn: return "free_in";
    case InputKind::FreeOut: return "free_out";
  }
  return "unknown";
}

CellInput CellInput::dense(const Eigen::VectorXd& v) {
  CellInput c;
  c.kind = InputKind::DenseVector;
  c.vec = v.cast<Cplx>();
  return c;
}

CellInput CellInput::dense(const Eigen::MatrixXd& m) {
  CellInput c;
  c.kind = InputKind::DenseMatrix;
  c.mat = m.cast<Cplx>();
  return c;
}

CellInput CellInput::dense(const Eigen::VectorXcd& v) {
  CellInput c;
  c.kind = InputKind::DenseVector;
  c.vec = v;
  return c;
}

CellInput CellInput::dense(const Eigen::MatrixXcd& m) {
  CellInput c;
  c.kind = InputKind::DenseMatrix;
  c.mat = m;
  return c;
}

CellInput CellInput::ones() {
  CellInput c;
  c.kind = InputKind::AllOnes;
  return c;
}

CellInput CellInput::identity() {
  CellInput c;
  c.kind = InputKind::Identity;
  return c;
}

CellInput CellInput::ones_matrix(double w) {
  CellInput c;
  c.kind = InputKind::AllOnesMatrix;
  c.weight = w;
  return c;
}

CellInput CellInput::basis(int i) {
  if (i < 1) fail(ErrorCode::BadBasisIndex, "basis index must be >= 1");
  CellInput c;
  c.kind = InputKind::Basis;
  c.basis_index = i;
  return c;
}

CellInput CellInput::random(int label, double sigma) {
  if (label == 0) fail(ErrorCode::BadParameter, "random label must be nonzero");
  if (!(sigma > 0)) fail(ErrorCode::BadParameter, "random sigma must be positive");
  CellInput c;
  c.kind = InputKind::Random;
  c.label = label;
  c.sigma = sigma;
  return c;
}

CellInput CellInput::free_in() {
  CellInput c;
  c.kind = InputKind::FreeIn;
  return c;
}

CellInput CellInput::free_out() {
  CellInput c;
  c.kind = InputKind::FreeOut;
  return c;
}

const Vertex& ProductGraph::vertex(const std::string& id) const {
  auto it = vindex_.find(id);
  if (it == vindex_.end()) fail(ErrorCode::UnknownCell, "no vertex '" + id + "'");
  return vertices_[it->second];
}

const Edge& ProductGraph::edge(const std::string& id) const {
  auto it = eindex_.find(id);
  if (it == eindex_.end()) fail(ErrorCode::UnknownCell, "no edge '" + id + "'");
  return edges_[it->second];
}

int ProductGraph::vertex_index(const std::string& id) const {
  auto it = vindex_.find(id);
  if (it == vindex_.end()) fail(ErrorCode::UnknownCell, "no vertex '" + id + "'");
  return it->second;
}

int ProductGraph::edge_index(const std::string& id) const {
  auto it = eindex_.find(id);
  if (it == eindex_.end()) fail(ErrorCode::UnknownCell, "no edge '" + id + "'");
  return it->second;
}

const CellInput& ProductGraph::cell_input(const std::string& id) const {
  if (has_vertex(id)) return vertex(id).input;
  return edge(id).input;
}

bool ProductGraph::cell_is_vertex(const std::string& id) const {
  if (has_vertex(id)) return true;
  if (has_edge(id)) return false;
  fail(ErrorCode::UnknownCell, "no cell '" + id + "'");
}

bool ProductGraph::has_free_cells() const {
  for (const auto& v : vertices_)
    if (v.input.is_free()) return true;
  for (const auto& e : edges_)
    if (e.input.is_free()) return true;
  return false;
}

bool ProductGraph::has_random_cells() const {
  for (const auto& e : edges_)
    if (e.input.is_random()) return true;
  return false;
}

std::vector<std::string> ProductGraph::random_edge_ids() const {
  std::vector<std::string> ids;
  for (const auto& e : edges_)
    if (e.input.is_random()) ids.push_back(e.id);
  return ids;
}

std::vector<int> ProductGraph::component_labels() const {
  const int n = static_cast<int>(vertices_.size());
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges_) {
    int h = vindex_.at(e.head);
    int t = vindex_.at(e.tail);
    adj[h].push_back(t);
    adj[t].push_back(h);
  }
  std::vector<int> label(n, -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (label[s] != -1) continue;
    label[s] = next;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj[u]) {
        if (label[w] == -1) {
          label[w] = next;
          q.push(w);
        }
      }
    }
    ++next;
  }
  return label;
}

int ProductGraph::component_count() const {
  auto lab = component_labels();
  int c = 0;
  for (int l : lab) c = std::max(c, l + 1);
  return c;
}

namespace {

bool vector_kind(InputKind k) {
  return k == InputKind::DenseVector || k == InputKind::AllOnes ||
         k == InputKind::Basis || k == InputKind::FreeIn || k == InputKind::FreeOut;
}

bool matrix_kind(InputKind k) {
  return k == InputKind::DenseMatrix || k == InputKind::Identity ||
         k == InputKind::AllOnesMatrix || k == InputKind::Random ||
         k == InputKind::FreeIn || k == InputKind::FreeOut;
}

}  // namespace

ProductGraph build_graph(const std::vector<VertexSpec>& vspecs,
                         const std::vector<EdgeSpec>& especs) {
  ProductGraph g;
  for (const auto& vs : vspecs) {
    if (vs.id.empty()) fail(ErrorCode::BadParameter, "empty vertex id");
    if (g.vindex_.count(vs.id))
      fail(ErrorCode::DuplicateCellId, "vertex '" + vs.id + "' declared twice");
    if (vs.dim < 1) fail(ErrorCode::DimMismatch, "vertex '" + vs.id + "' has dim < 1");
    if (!vector_kind(vs.input.kind))
      fail(ErrorCode::CellKindMismatch,
           "vertex '" + vs.id + "' carries a matrix-shaped input");
    if (vs.input.kind == InputKind::DenseVector &&
        vs.input.vec.size() != vs.dim)
      fail(ErrorCode::ShapeMismatch, "vertex '" + vs.id + "' input length != dim");
    if (vs.input.kind == InputKind::Basis &&
        (vs.input.basis_index < 1 || vs.input.basis_index > vs.dim))
      fail(ErrorCode::BadBasisIndex, "vertex '" + vs.id + "' basis index out of range");
    g.vindex_[vs.id] = static_cast<int>(g.vertices_.size());
    g.vertices_.push_back(Vertex{vs.id, vs.dim, vs.input});
  }
  for (const auto& es : especs) {
    if (es.id.empty()) fail(ErrorCode::BadParameter, "empty edge id");
    if (g.vindex_.count(es.id) || g.eindex_.count(es.id))
      fail(ErrorCode::DuplicateCellId, "cell '" + es.id + "' declared twice");
    if (!g.vindex_.count(es.head))
      fail(ErrorCode::UnknownCell, "edge '" + es.id + "' head '" + es.head + "' unknown");
    if (!g.vindex_.count(es.tail))
      fail(ErrorCode::UnknownCell, "edge '" + es.id + "' tail '" + es.tail + "' unknown");
    const int hd = g.vertices_[g.vindex_[es.head]].dim;
    const int td = g.vertices_[g.vindex_[es.tail]].dim;
    if (!matrix_kind(es.input.kind))
      fail(ErrorCode::CellKindMismatch,
           "edge '" + es.id + "' carries a vector-shaped input");
    if (es.input.kind == InputKind::DenseMatrix &&
        (es.input.mat.rows() != hd || es.input.mat.cols() != td))
      fail(ErrorCode::ShapeMismatch, "edge '" + es.id + "' matrix shape != (head dim, tail dim)");
    if (es.input.kind == InputKind::Identity && hd != td)
      fail(ErrorCode::IdentityOnRectangular,
           "identity input on edge '" + es.id + "' with head dim != tail dim");
    if (es.input.kind == InputKind::Random && es.input.label == 0)
      fail(ErrorCode::BadParameter, "edge '" + es.id + "' random label must be nonzero");
    if (es.input.kind == InputKind::Random && !(es.input.sigma > 0))
      fail(ErrorCode::BadParameter, "edge '" + es.id + "' random sigma must be positive");
    g.eindex_[es.id] = static_cast<int>(g.edges_.size());
    g.edges_.push_back(Edge{es.id, es.head, es.tail, es.input});
  }
  // Edges sharing a label (up to conjugation) alias one random matrix, so
  // their shapes and sigmas must agree.
  std::map<int, std::pair<std::pair<int, int>, double>> label_shape;
  for (const auto& e : g.edges_) {
    if (!e.input.is_random()) continue;
    const int key = std::abs(e.input.label);
    const int hd = g.vertices_[g.vindex_[e.head]].dim;
    const int td = g.vertices_[g.vindex_[e.tail]].dim;
    auto it = label_shape.find(key);
    if (it == label_shape.end()) {
      label_shape[key] = {{hd, td}, e.input.sigma};
    } else {
      if (it->second.first != std::make_pair(hd, td))
        fail(ErrorCode::DimMismatch,
             "edges with label " + std::to_string(key) + " disagree on shape");
      if (it->second.second != e.input.sigma)
        fail(ErrorCode::BadParameter,
             "edges with label " + std::to_string(key) + " disagree on sigma");
    }
  }
  return g;
}

OperatorGraph make_operator_graph(ProductGraph base,
                                  std::vector<std::string> in_cells,
                                  std::vector<std::string> out_cells) {
  std::map<std::string, int> seen;
  for (const auto& id : in_cells) {
    if (!base.has_cell(id)) fail(ErrorCode::UnknownCell, "in cell '" + id + "' unknown");
    if (base.cell_input(id).kind != InputKind::FreeIn)
      fail(ErrorCode::CellKindMismatch, "in cell '" + id + "' does not carry a free_in input");
    if (seen[id]++) fail(ErrorCode::DuplicateCellId, "cell '" + id + "' listed twice");
  }
  for (const auto& id : out_cells) {
    if (!base.has_cell(id)) fail(ErrorCode::UnknownCell, "out cell '" + id + "' unknown");
    if (base.cell_input(id).kind != InputKind::FreeOut)
      fail(ErrorCode::CellKindMismatch, "out cell '" + id + "' does not carry a free_out input");
    if (seen[id]++) fail(ErrorCode::DuplicateCellId, "cell '" + id + "' listed twice");
  }
  int n_free = 0;
  for (const auto& v : base.vertices())
    if (v.input.is_free()) ++n_free;
  for (const auto& e : base.edges())
    if (e.input.is_free()) ++n_free;
  if (n_free != static_cast<int>(in_cells.size() + out_cells.size()))
    fail(ErrorCode::FreeCellCountMismatch,
         "base graph free cells not all listed as in/out cells");
  OperatorGraph og;
  og.base = std::move(base);
  og.in_cells = std::move(in_cells);
  og.out_cells = std::move(out_cells);
  return og;
}

CellInput hadamard_input(const CellInput& a, const CellInput& b, int dim) {
  if (a.kind == InputKind::AllOnes) return b;
  if (b.kind == InputKind::AllOnes) return a;
  if (a.kind == InputKind::FreeOut && b.kind == InputKind::FreeOut)
    return CellInput::free_out();
  if (a.is_free() || b.is_free() || a.is_random() || b.is_random())
    fail(ErrorCode::InvalidOperation,
         "cannot hadamard-combine free or random vertex inputs");
  if (!(a.kind == InputKind::DenseVector || a.kind == InputKind::Basis) ||
      !(b.kind == InputKind::DenseVector || b.kind == InputKind::Basis))
    fail(ErrorCode::CellKindMismatch, "hadamard combination needs vector inputs");
  if (a.kind == InputKind::Basis && b.kind == InputKind::Basis) {
    if (a.basis_index == b.basis_index) return a;
    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(dim);
    return CellInput::dense(z);
  }
  auto as_vec = [dim](const CellInput& c) {
    if (c.kind == InputKind::DenseVector) {
      if (c.vec.size() != dim)
        fail(ErrorCode::ShapeMismatch, "hadamard operand length != dim");
      return c.vec;
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    if (c.basis_index < 1 || c.basis_index > dim)
      fail(ErrorCode::BadBasisIndex, "basis index out of range");
    v[c.basis_index - 1] = Cplx(1, 0);
    return v;
  };
  Eigen::VectorXcd prod = as_vec(a).cwiseProduct(as_vec(b));
  return CellInput::dense(prod);
}

}  // namespace pgc
