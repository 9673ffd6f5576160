#pragma once
// eval.hpp — numeric evaluation of product and operator graphs.
//
// Two strategies: Naive literally enumerates every indexation; GreedyContraction
// eliminates one vertex at a time, always the one whose elimination produces the
// smallest intermediate tensor. Both must agree to double precision.

#include <Eigen/Dense>
#include <complex>

#include "pgc/graph.hpp"

namespace pgc {

enum class EvalStrategy { Naive, GreedyContraction };

// Value of a product graph (no free cells, no random cells).
Cplx graph_value_c(const ProductGraph& g, EvalStrategy strategy = EvalStrategy::GreedyContraction);
double graph_value(const ProductGraph& g, EvalStrategy strategy = EvalStrategy::GreedyContraction);

// Matrix of an operator graph with one free in vertex and one free out vertex:
// M[a,b] = value of g with the out vertex fixed to basis a and the in vertex to
// basis b. With one free in edge and one free out edge instead, the result is
// the flattened map matrix, rows/cols indexed row-major by (head,tail).
Eigen::MatrixXcd operator_matrix_c(const OperatorGraph& g);
Eigen::MatrixXd operator_matrix(const OperatorGraph& g);

// Vector of an operator graph with one free out vertex and no in cells.
Eigen::VectorXcd operator_vector_c(const OperatorGraph& g);
Eigen::VectorXd operator_vector(const OperatorGraph& g);

// Value of an operator graph after fixing every free cell to the given concrete
// inputs (by cell id). Used by tests and by operator_matrix internally.
Cplx eval_with_fixed_cells(const OperatorGraph& g,
                           const std::vector<std::pair<std::string, CellInput>>& fixes,
                           EvalStrategy strategy = EvalStrategy::GreedyContraction);

}  // namespace pgc
