#pragma once
// ops.hpp — operator-graph operations: wedge, compose, transpose, trace,
// differential.
//
// Identified cells are fixed to the summation weight that realizes the
// corresponding analytic operation: all-ones vector for vertex cells, all-ones
// matrix for edge cells (both merged indices range freely). Vertices merged as
// a side effect of edge identification get Hadamard-combined inputs.

#include <vector>

#include "pgc/graph.hpp"

namespace pgc {

// Identify the unique free out-vertices of g1 and g2; result carries one free
// out-vertex and computes the entrywise product of the operand vectors.
OperatorGraph wedge(const OperatorGraph& g1, const OperatorGraph& g2);

// Identify out-cell c1 of g1 with in-cell c2 of g2 (both vertices or both
// edges, equal dimension signature); result computes W_{g2} after W_{g1}.
OperatorGraph compose(const OperatorGraph& g2, const OperatorGraph& g1,
                      const std::string& c2, const std::string& c1);

// Swap the in/out roles of an operator graph with exactly one free in vertex
// and one free out vertex.
OperatorGraph transpose(const OperatorGraph& g);

// Identify the two free cells of g (equal dimension, one in, one out); the
// resulting product graph's value is the trace of the operand operator.
ProductGraph trace_graph(const OperatorGraph& g);

// For each in-cell i, the operator graph d_i G in which every other in-cell is
// fixed to the corresponding concrete input from `at`.
std::vector<OperatorGraph> differential(const OperatorGraph& g, const std::vector<CellInput>& at);

}  // namespace pgc
