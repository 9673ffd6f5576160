#pragma once
// graph.hpp — product graphs and operator graphs.
//
// A product graph is a directed multigraph (loops and parallel edges allowed)
// with a dimension and a vector input per vertex and a matrix input per edge.
// Its value is the sum over all indexations of the product of indexed cell
// entries; an edge e=(u,v) contributes [X_e]_{i_u,i_v} with rows indexed by
// the head u and columns by the tail v.
//
// An operator graph additionally designates ordered free in/out cells and is
// read as a linear map between the corresponding coordinate spaces.

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "pgc/errors.hpp"

namespace pgc {

using Cplx = std::complex<double>;

enum class InputKind {
  DenseVector,
  DenseMatrix,
  AllOnes,
  Identity,
  AllOnesMatrix,
  Basis,
  Random,
  FreeIn,
  FreeOut,
};

const char* input_kind_name(InputKind k);

struct CellInput {
  InputKind kind = InputKind::AllOnes;
  Eigen::VectorXcd vec;  // DenseVector
  Eigen::MatrixXcd mat;  // DenseMatrix
  double weight = 1.0;   // AllOnesMatrix scale (quotienting produces sigma^2)
  int basis_index = 0;   // Basis, 1-based
  int label = 0;         // Random, nonzero; negative label = conjugate of |label|
  double sigma = 1.0;    // Random entry standard deviation

  static CellInput dense(const Eigen::VectorXd& v);
  static CellInput dense(const Eigen::MatrixXd& m);
  static CellInput dense(const Eigen::VectorXcd& v);
  static CellInput dense(const Eigen::MatrixXcd& m);
  static CellInput ones();
  static CellInput identity();
  static CellInput ones_matrix(double w = 1.0);
  static CellInput basis(int i);
  static CellInput random(int label, double sigma = 1.0);
  static CellInput free_in();
  static CellInput free_out();

  bool is_free() const { return kind == InputKind::FreeIn || kind == InputKind::FreeOut; }
  bool is_random() const { return kind == InputKind::Random; }
  bool is_deterministic() const { return !is_free() && !is_random(); }
};

struct Vertex {
  std::string id;
  int dim = 0;
  CellInput input;
};

struct Edge {
  std::string id;
  std::string head;
  std::string tail;
  CellInput input;
};

struct VertexSpec {
  std::string id;
  int dim = 0;
  CellInput input;
};

struct EdgeSpec {
  std::string id;
  std::string head;
  std::string tail;
  CellInput input;
};

class ProductGraph {
 public:
  ProductGraph() = default;

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_vertex(const std::string& id) const { return vindex_.count(id) > 0; }
  bool has_edge(const std::string& id) const { return eindex_.count(id) > 0; }
  bool has_cell(const std::string& id) const { return has_vertex(id) || has_edge(id); }

  const Vertex& vertex(const std::string& id) const;
  const Edge& edge(const std::string& id) const;
  int vertex_index(const std::string& id) const;
  int edge_index(const std::string& id) const;

  const CellInput& cell_input(const std::string& id) const;
  bool cell_is_vertex(const std::string& id) const;

  // Product graphs proper have no free cells.
  bool has_free_cells() const;
  bool has_random_cells() const;

  std::vector<std::string> random_edge_ids() const;

  // Connected components of the underlying undirected multigraph,
  // as vertex-index labels 0..c-1 in first-seen order.
  std::vector<int> component_labels() const;
  int component_count() const;

  friend ProductGraph build_graph(const std::vector<VertexSpec>&, const std::vector<EdgeSpec>&);

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> vindex_;
  std::unordered_map<std::string, int> eindex_;
};

ProductGraph build_graph(const std::vector<VertexSpec>& vspecs, const std::vector<EdgeSpec>& especs);

struct OperatorGraph {
  ProductGraph base;
  std::vector<std::string> in_cells;
  std::vector<std::string> out_cells;
};

// Validates that listed cells exist, carry matching Free inputs and appear once.
OperatorGraph make_operator_graph(ProductGraph base,
                                  std::vector<std::string> in_cells,
                                  std::vector<std::string> out_cells);

// Hadamard combination of two vertex inputs of the given dimension.
// AllOnes acts as the unit; two FreeOut inputs stay FreeOut (wedge);
// any other free/random combination is rejected.
CellInput hadamard_input(const CellInput& a, const CellInput& b, int dim);

}  // namespace pgc
