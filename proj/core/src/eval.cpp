// eval.cpp — graph evaluation by naive enumeration or greedy vertex elimination.

#include "pgc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

namespace pgc {

namespace {

constexpr std::uint64_t kWorkCap = 100'000'000ULL;

// Dense tensor over a sorted set of vertex axes, row-major.
struct Factor {
  std::vector<int> axes;
  std::vector<Cplx> data;
};

std::uint64_t axes_size(const std::vector<int>& axes, const std::vector<int>& dims) {
  std::uint64_t n = 1;
  for (int a : axes) n *= static_cast<std::uint64_t>(dims[a]);
  return n;
}

Factor vertex_factor(const Vertex& v, int index) {
  Factor f;
  f.axes = {index};
  f.data.resize(v.dim);
  switch (v.input.kind) {
    case InputKind::DenseVector:
      for (int i = 0; i < v.dim; ++i) f.data[i] = v.input.vec[i];
      break;
    case InputKind::AllOnes:
      std::fill(f.data.begin(), f.data.end(), Cplx(1, 0));
      break;
    case InputKind::Basis:
      std::fill(f.data.begin(), f.data.end(), Cplx(0, 0));
      f.data[v.input.basis_index - 1] = Cplx(1, 0);
      break;
    default:
      fail(ErrorCode::CellKindMismatch, "vertex '" + v.id + "' not evaluable");
  }
  return f;
}

Factor edge_factor(const Edge& e, int hidx, int tidx, int hd, int td) {
  Factor f;
  if (hidx == tidx) {
    // Loop: only the diagonal entries survive.
    f.axes = {hidx};
    f.data.resize(hd);
    switch (e.input.kind) {
      case InputKind::DenseMatrix:
        for (int i = 0; i < hd; ++i) f.data[i] = e.input.mat(i, i);
        break;
      case InputKind::Identity:
        std::fill(f.data.begin(), f.data.end(), Cplx(1, 0));
        break;
      case InputKind::AllOnesMatrix:
        std::fill(f.data.begin(), f.data.end(), Cplx(e.input.weight, 0));
        break;
      default:
        fail(ErrorCode::CellKindMismatch, "edge '" + e.id + "' not evaluable");
    }
    return f;
  }
  const bool head_first = hidx < tidx;
  f.axes = head_first ? std::vector<int>{hidx, tidx} : std::vector<int>{tidx, hidx};
  f.data.resize(static_cast<std::size_t>(hd) * td);
  auto at = [&](int i, int j) -> Cplx& {
    return head_first ? f.data[static_cast<std::size_t>(i) * td + j]
                      : f.data[static_cast<std::size_t>(j) * hd + i];
  };
  switch (e.input.kind) {
    case InputKind::DenseMatrix:
      for (int i = 0; i < hd; ++i)
        for (int j = 0; j < td; ++j) at(i, j) = e.input.mat(i, j);
      break;
    case InputKind::Identity:
      for (int i = 0; i < hd; ++i)
        for (int j = 0; j < td; ++j) at(i, j) = (i == j) ? Cplx(1, 0) : Cplx(0, 0);
      break;
    case InputKind::AllOnesMatrix:
      for (int i = 0; i < hd; ++i)
        for (int j = 0; j < td; ++j) at(i, j) = Cplx(e.input.weight, 0);
      break;
    default:
      fail(ErrorCode::CellKindMismatch, "edge '" + e.id + "' not evaluable");
  }
  return f;
}

// Multiply b into a over the union of their axes.
Factor multiply(const Factor& a, const Factor& b, const std::vector<int>& dims) {
  Factor r;
  std::set_union(a.axes.begin(), a.axes.end(), b.axes.begin(), b.axes.end(),
                 std::back_inserter(r.axes));
  const std::uint64_t n = axes_size(r.axes, dims);
  if (n > kWorkCap) fail(ErrorCode::TooLarge, "contraction intermediate too large");
  const int k = static_cast<int>(r.axes.size());
  // Per result axis: its dim and its stride into a and b (0 when absent).
  std::vector<int> dim(k), sa(k, 0), sb(k, 0);
  for (int i = 0; i < k; ++i) dim[i] = dims[r.axes[i]];
  {
    long long stride = 1;
    for (int i = static_cast<int>(a.axes.size()) - 1; i >= 0; --i) {
      int pos = static_cast<int>(std::lower_bound(r.axes.begin(), r.axes.end(), a.axes[i]) -
                                 r.axes.begin());
      sa[pos] = static_cast<int>(stride);
      stride *= dims[a.axes[i]];
    }
    stride = 1;
    for (int i = static_cast<int>(b.axes.size()) - 1; i >= 0; --i) {
      int pos = static_cast<int>(std::lower_bound(r.axes.begin(), r.axes.end(), b.axes[i]) -
                                 r.axes.begin());
      sb[pos] = static_cast<int>(stride);
      stride *= dims[b.axes[i]];
    }
  }
  r.data.resize(n);
  std::vector<int> idx(k, 0);
  std::size_t ia = 0, ib = 0;
  for (std::uint64_t flat = 0; flat < n; ++flat) {
    r.data[flat] = a.data[ia] * b.data[ib];
    for (int i = k - 1; i >= 0; --i) {
      ++idx[i];
      ia += sa[i];
      ib += sb[i];
      if (idx[i] < dim[i]) break;
      ia -= static_cast<std::size_t>(sa[i]) * idx[i];
      ib -= static_cast<std::size_t>(sb[i]) * idx[i];
      idx[i] = 0;
    }
  }
  return r;
}

Factor sum_out(const Factor& f, int axis, const std::vector<int>& dims) {
  Factor r;
  int pos = -1;
  for (int i = 0; i < static_cast<int>(f.axes.size()); ++i) {
    if (f.axes[i] == axis) pos = i;
    else r.axes.push_back(f.axes[i]);
  }
  const std::uint64_t n = axes_size(r.axes, dims);
  r.data.assign(n, Cplx(0, 0));
  // Strides of f in terms of (outer, axis, inner) decomposition.
  std::uint64_t inner = 1;
  for (int i = pos + 1; i < static_cast<int>(f.axes.size()); ++i)
    inner *= static_cast<std::uint64_t>(dims[f.axes[i]]);
  const int d = dims[axis];
  const std::uint64_t outer = n / std::max<std::uint64_t>(inner, 1);
  for (std::uint64_t o = 0; o < outer; ++o)
    for (int s = 0; s < d; ++s)
      for (std::uint64_t in = 0; in < inner; ++in)
        r.data[o * inner + in] += f.data[(o * d + s) * inner + in];
  return r;
}

Cplx eval_naive(const ProductGraph& g) {
  const auto& vs = g.vertices();
  const int n = static_cast<int>(vs.size());
  std::vector<int> dims(n);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    dims[i] = vs[i].dim;
    total *= static_cast<std::uint64_t>(dims[i]);
    if (total > kWorkCap) fail(ErrorCode::TooLarge, "too many indexations for naive evaluation");
  }
  std::vector<Factor> vfac, efac;
  for (int i = 0; i < n; ++i) vfac.push_back(vertex_factor(vs[i], i));
  std::vector<std::pair<int, int>> ends;
  for (const auto& e : g.edges()) {
    int h = g.vertex_index(e.head), t = g.vertex_index(e.tail);
    efac.push_back(edge_factor(e, h, t, dims[h], dims[t]));
    ends.push_back({h, t});
  }
  Cplx sum(0, 0);
  std::vector<int> idx(n, 0);
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    Cplx prod(1, 0);
    for (int i = 0; i < n; ++i) prod *= vfac[i].data[idx[i]];
    for (std::size_t k = 0; k < efac.size(); ++k) {
      const auto& f = efac[k];
      if (f.axes.size() == 1) {
        prod *= f.data[idx[f.axes[0]]];
      } else {
        int a0 = f.axes[0], a1 = f.axes[1];
        prod *= f.data[static_cast<std::size_t>(idx[a0]) * dims[a1] + idx[a1]];
      }
      (void)ends;
    }
    sum += prod;
    for (int i = n - 1; i >= 0; --i) {
      if (++idx[i] < dims[i]) break;
      idx[i] = 0;
    }
  }
  return sum;
}

Cplx eval_greedy(const ProductGraph& g) {
  const auto& vs = g.vertices();
  const int n = static_cast<int>(vs.size());
  std::vector<int> dims(n);
  for (int i = 0; i < n; ++i) dims[i] = vs[i].dim;
  std::vector<Factor> factors;
  for (int i = 0; i < n; ++i) factors.push_back(vertex_factor(vs[i], i));
  for (const auto& e : g.edges()) {
    int h = g.vertex_index(e.head), t = g.vertex_index(e.tail);
    factors.push_back(edge_factor(e, h, t, dims[h], dims[t]));
  }
  std::vector<bool> eliminated(n, false);
  for (int step = 0; step < n; ++step) {
    // Pick the vertex whose elimination builds the smallest merged tensor.
    int best = -1;
    std::uint64_t best_cost = 0;
    for (int v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      std::vector<int> uni;
      for (const auto& f : factors)
        if (std::binary_search(f.axes.begin(), f.axes.end(), v)) {
          std::vector<int> merged;
          std::set_union(uni.begin(), uni.end(), f.axes.begin(), f.axes.end(),
                         std::back_inserter(merged));
          uni = std::move(merged);
        }
      std::uint64_t cost = axes_size(uni, dims);
      if (best == -1 || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }
    if (best_cost > kWorkCap) fail(ErrorCode::TooLarge, "contraction intermediate too large");
    Factor acc;
    acc.axes = {};
    acc.data = {Cplx(1, 0)};
    std::vector<Factor> rest;
    for (auto& f : factors) {
      if (std::binary_search(f.axes.begin(), f.axes.end(), best))
        acc = multiply(acc, f, dims);
      else
        rest.push_back(std::move(f));
    }
    rest.push_back(sum_out(acc, best, dims));
    factors = std::move(rest);
    eliminated[best] = true;
  }
  Cplx prod(1, 0);
  for (const auto& f : factors) prod *= f.data[0];
  return prod;
}

}  // namespace

Cplx graph_value_c(const ProductGraph& g, EvalStrategy strategy) {
  if (g.has_free_cells()) fail(ErrorCode::FreeCellPresent, "graph has free cells");
  if (g.has_random_cells()) fail(ErrorCode::RandomCellPresent, "graph has random cells");
  return strategy == EvalStrategy::Naive ? eval_naive(g) : eval_greedy(g);
}

double graph_value(const ProductGraph& g, EvalStrategy strategy) {
  Cplx v = graph_value_c(g, strategy);
  if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
    fail(ErrorCode::InvalidOperation, "graph value has a nonzero imaginary part");
  return v.real();
}

namespace {

// Replace the inputs of the given cells, rebuild, and keep everything else.
ProductGraph with_inputs(const ProductGraph& g,
                         const std::vector<std::pair<std::string, CellInput>>& fixes) {
  std::vector<VertexSpec> vspecs;
  std::vector<EdgeSpec> especs;
  for (const auto& v : g.vertices()) vspecs.push_back({v.id, v.dim, v.input});
  for (const auto& e : g.edges()) especs.push_back({e.id, e.head, e.tail, e.input});
  for (const auto& [id, input] : fixes) {
    bool found = false;
    for (auto& v : vspecs)
      if (v.id == id) {
        v.input = input;
        found = true;
      }
    for (auto& e : especs)
      if (e.id == id) {
        e.input = input;
        found = true;
      }
    if (!found) fail(ErrorCode::UnknownCell, "no cell '" + id + "' to fix");
  }
  return build_graph(vspecs, especs);
}

int cell_rows(const ProductGraph& g, const std::string& id) {
  if (g.cell_is_vertex(id)) return g.vertex(id).dim;
  const Edge& e = g.edge(id);
  return g.vertex(e.head).dim * g.vertex(e.tail).dim;
}

CellInput fixed_cell_input(const ProductGraph& g, const std::string& id, int flat) {
  if (g.cell_is_vertex(id)) return CellInput::basis(flat + 1);
  const Edge& e = g.edge(id);
  const int hd = g.vertex(e.head).dim;
  const int td = g.vertex(e.tail).dim;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(hd, td);
  m(flat / td, flat % td) = Cplx(1, 0);
  return CellInput::dense(m);
}

}  // namespace

Cplx eval_with_fixed_cells(const OperatorGraph& g,
                           const std::vector<std::pair<std::string, CellInput>>& fixes,
                           EvalStrategy strategy) {
  for (const auto& [id, input] : fixes) {
    if (!g.base.has_cell(id)) fail(ErrorCode::UnknownCell, "no cell '" + id + "'");
    if (!g.base.cell_input(id).is_free())
      fail(ErrorCode::CellKindMismatch, "cell '" + id + "' is not free");
    (void)input;
  }
  return graph_value_c(with_inputs(g.base, fixes), strategy);
}

Eigen::MatrixXcd operator_matrix_c(const OperatorGraph& g) {
  if (g.in_cells.size() != 1 || g.out_cells.size() != 1)
    fail(ErrorCode::ArityMismatch, "operator matrix needs one in cell and one out cell");
  const std::string& in = g.in_cells[0];
  const std::string& out = g.out_cells[0];
  const int rows = cell_rows(g.base, out);
  const int cols = cell_rows(g.base, in);
  Eigen::MatrixXcd m(rows, cols);
  for (int a = 0; a < rows; ++a)
    for (int b = 0; b < cols; ++b)
      m(a, b) = eval_with_fixed_cells(
          g, {{out, fixed_cell_input(g.base, out, a)}, {in, fixed_cell_input(g.base, in, b)}});
  return m;
}

Eigen::MatrixXd operator_matrix(const OperatorGraph& g) {
  Eigen::MatrixXcd m = operator_matrix_c(g);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j).imag()) > 1e-9 * std::max(1.0, std::abs(m(i, j).real())))
        fail(ErrorCode::InvalidOperation, "operator matrix has a nonzero imaginary part");
  return m.real();
}

Eigen::VectorXcd operator_vector_c(const OperatorGraph& g) {
  if (!g.in_cells.empty() || g.out_cells.size() != 1)
    fail(ErrorCode::ArityMismatch, "operator vector needs no in cells and one out cell");
  const std::string& out = g.out_cells[0];
  if (!g.base.cell_is_vertex(out))
    fail(ErrorCode::CellKindMismatch, "operator vector needs a vertex out cell");
  const int n = g.base.vertex(out).dim;
  Eigen::VectorXcd v(n);
  for (int a = 0; a < n; ++a)
    v[a] = eval_with_fixed_cells(g, {{out, CellInput::basis(a + 1)}});
  return v;
}

Eigen::VectorXd operator_vector(const OperatorGraph& g) {
  Eigen::VectorXcd v = operator_vector_c(g);
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v[i].imag()) > 1e-9 * std::max(1.0, std::abs(v[i].real())))
      fail(ErrorCode::InvalidOperation, "operator vector has a nonzero imaginary part");
  return v.real();
}

}  // namespace pgc
