#pragma once
// tree_graph.hpp — realize trees as product/operator graphs, evaluate the
// layered expansion against the forward pass, assemble decorated cycles.

#include <vector>

#include <Eigen/Core>

#include "pgc/graph.hpp"
#include "pgc/tree.hpp"

namespace pgc {

// Concrete data for realizing a tree: weight_inputs[l] feeds every layer-l
// edge (dense matrix or a shared random label), dims[l] is the width N_l
// (a height-h tree needs dims[0..h+1]; the root has dim dims[h+1]), x fills
// XVec leaves.
struct TreeRealization {
  std::vector<CellInput> weight_inputs;
  std::vector<int> dims;
  Eigen::VectorXd x;
};

// Root vertex per t.root_mode (Pruned drops the root and its edge and the
// top center becomes the out-cell); internal vertices all-ones; leaves per
// decoration; a FreeIn leaf or freed edge becomes the in-cell.
OperatorGraph tree_to_graph(const Tree& t, const TreeRealization& r);

// Sum over height-L x-leaf trees of (phi/s) * (tree value vector), entry k.
// Subtree values are memoized bottom-up; equals the forward pass entry.
// weights = W_0..W_L, activations = phi_1..phi_L.
double eval_tree_expansion(int L, int k, const Eigen::VectorXd& x,
                           const std::vector<Eigen::MatrixXd>& weights,
                           const std::vector<ActivationPoly>& activations);

// Trace of 2k composed-and-alternately-transposed Jacobian trees, given by
// their trunk decomposition: pieces[t*L + j] is the pruned piece hanging at
// trunk level L-j of slot t (height L-j, no free cells). The result has a
// unique undirected cycle of length 2k*L (trunk edges carry W_{l-1} between
// levels l and l-1) with the pieces' subtrees rooted on it.
// r.weight_inputs[0..L-1] and r.dims[0..L] are used.
ProductGraph decorated_cycle(int k, int L, const std::vector<Tree>& pieces,
                             const TreeRealization& r);

}  // namespace pgc
