// ops.cpp — operator-graph operations built on spec-level surgery.

#include "pgc/ops.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pgc {

namespace {

struct Specs {
  std::vector<VertexSpec> v;
  std::vector<EdgeSpec> e;
};

Specs to_specs(const ProductGraph& g) {
  Specs s;
  for (const auto& v : g.vertices()) s.v.push_back({v.id, v.dim, v.input});
  for (const auto& e : g.edges()) s.e.push_back({e.id, e.head, e.tail, e.input});
  return s;
}

VertexSpec* find_vertex(Specs& s, const std::string& id) {
  for (auto& v : s.v)
    if (v.id == id) return &v;
  return nullptr;
}

EdgeSpec* find_edge(Specs& s, const std::string& id) {
  for (auto& e : s.e)
    if (e.id == id) return &e;
  return nullptr;
}

// Append g2 to g1's specs, renaming colliding g2 ids. Returns the id map.
std::map<std::string, std::string> append_renamed(Specs& s, const ProductGraph& g2) {
  std::set<std::string> taken;
  for (const auto& v : s.v) taken.insert(v.id);
  for (const auto& e : s.e) taken.insert(e.id);
  std::map<std::string, std::string> rename;
  auto fresh = [&](const std::string& id) {
    std::string cand = id;
    while (taken.count(cand)) cand += "~2";
    taken.insert(cand);
    return cand;
  };
  for (const auto& v : g2.vertices()) {
    rename[v.id] = fresh(v.id);
    s.v.push_back({rename[v.id], v.dim, v.input});
  }
  for (const auto& e : g2.edges()) {
    rename[e.id] = fresh(e.id);
    s.e.push_back({rename[e.id], rename[e.head], rename[e.tail], e.input});
  }
  return rename;
}

// Merge vertex `drop` into vertex `keep`: Hadamard the inputs, re-point edges.
void merge_vertices(Specs& s, const std::string& keep, const std::string& drop) {
  if (keep == drop) return;
  VertexSpec* vk = find_vertex(s, keep);
  VertexSpec* vd = find_vertex(s, drop);
  if (!vk || !vd) fail(ErrorCode::UnknownCell, "merge target missing");
  if (vk->dim != vd->dim) fail(ErrorCode::DimMismatch, "merged vertices disagree on dim");
  vk->input = hadamard_input(vk->input, vd->input, vk->dim);
  for (auto& e : s.e) {
    if (e.head == drop) e.head = keep;
    if (e.tail == drop) e.tail = keep;
  }
  s.v.erase(std::remove_if(s.v.begin(), s.v.end(),
                           [&](const VertexSpec& v) { return v.id == drop; }),
            s.v.end());
}

void require_role(const std::vector<std::string>& cells, const std::string& id,
                  const char* role) {
  if (std::find(cells.begin(), cells.end(), id) == cells.end())
    fail(ErrorCode::InvalidOperation,
         "cell '" + id + "' is not an " + role + " cell of the operand");
}

std::vector<std::string> without(const std::vector<std::string>& cells,
                                 const std::string& id) {
  std::vector<std::string> out;
  for (const auto& c : cells)
    if (c != id) out.push_back(c);
  return out;
}

std::vector<std::string> mapped(const std::vector<std::string>& cells,
                                const std::map<std::string, std::string>& rename) {
  std::vector<std::string> out;
  for (const auto& c : cells) out.push_back(rename.at(c));
  return out;
}

}  // namespace

OperatorGraph wedge(const OperatorGraph& g1, const OperatorGraph& g2) {
  if (g1.out_cells.size() != 1 || g2.out_cells.size() != 1)
    fail(ErrorCode::FreeCellCountMismatch, "wedge needs exactly one out cell per operand");
  if (!g1.base.cell_is_vertex(g1.out_cells[0]) || !g2.base.cell_is_vertex(g2.out_cells[0]))
    fail(ErrorCode::CellKindMismatch, "wedge needs vertex out cells");
  Specs s = to_specs(g1.base);
  auto rename = append_renamed(s, g2.base);
  const std::string keep = g1.out_cells[0];
  const std::string drop = rename.at(g2.out_cells[0]);
  merge_vertices(s, keep, drop);
  std::vector<std::string> in = g1.in_cells;
  for (const auto& c : mapped(g2.in_cells, rename)) in.push_back(c);
  return make_operator_graph(build_graph(s.v, s.e), in, {keep});
}

OperatorGraph compose(const OperatorGraph& g2, const OperatorGraph& g1,
                      const std::string& c2, const std::string& c1) {
  require_role(g1.out_cells, c1, "out");
  require_role(g2.in_cells, c2, "in");
  const bool v1 = g1.base.cell_is_vertex(c1);
  const bool v2 = g2.base.cell_is_vertex(c2);
  if (v1 != v2)
    fail(ErrorCode::CellKindMismatch, "composed cells must both be vertices or both edges");
  Specs s = to_specs(g1.base);
  auto rename = append_renamed(s, g2.base);
  const std::string c2r = rename.at(c2);
  if (v1) {
    if (g1.base.vertex(c1).dim != g2.base.vertex(c2).dim)
      fail(ErrorCode::DimMismatch, "composed vertex cells disagree on dim");
    // Both index roles are summed over after identification.
    find_vertex(s, c1)->input = CellInput::ones();
    find_vertex(s, c2r)->input = CellInput::ones();
    merge_vertices(s, c1, c2r);
  } else {
    EdgeSpec e1 = *find_edge(s, c1);
    EdgeSpec e2 = *find_edge(s, c2r);
    if (g1.base.vertex(e1.head).dim != g2.base.vertex(g2.base.edge(c2).head).dim ||
        g1.base.vertex(e1.tail).dim != g2.base.vertex(g2.base.edge(c2).tail).dim)
      fail(ErrorCode::DimMismatch, "composed edge cells disagree on shape");
    // Fixing both cells to the same elementary matrix and summing over it
    // ties the head indices together and the tail indices together; realize
    // that with identity wiring edges so shared free endpoints stay distinct.
    s.e.erase(std::remove_if(s.e.begin(), s.e.end(),
                             [&](const EdgeSpec& e) { return e.id == c1 || e.id == c2r; }),
              s.e.end());
    s.e.push_back({c1, e1.head, e2.head, CellInput::identity()});
    s.e.push_back({c2r, e1.tail, e2.tail, CellInput::identity()});
  }
  std::vector<std::string> in = g1.in_cells;
  for (const auto& c : mapped(without(g2.in_cells, c2), rename)) in.push_back(c);
  std::vector<std::string> out = mapped(g2.out_cells, rename);
  for (const auto& c : without(g1.out_cells, c1)) out.push_back(c);
  return make_operator_graph(build_graph(s.v, s.e), in, out);
}

OperatorGraph transpose(const OperatorGraph& g) {
  if (g.in_cells.size() != 1 || g.out_cells.size() != 1)
    fail(ErrorCode::FreeCellCountMismatch, "transpose needs one in and one out cell");
  const std::string& in = g.in_cells[0];
  const std::string& out = g.out_cells[0];
  if (!g.base.cell_is_vertex(in) || !g.base.cell_is_vertex(out))
    fail(ErrorCode::CellKindMismatch, "transpose needs vertex cells");
  Specs s = to_specs(g.base);
  find_vertex(s, in)->input = CellInput::free_out();
  find_vertex(s, out)->input = CellInput::free_in();
  return make_operator_graph(build_graph(s.v, s.e), {out}, {in});
}

ProductGraph trace_graph(const OperatorGraph& g) {
  if (g.in_cells.size() != 1 || g.out_cells.size() != 1)
    fail(ErrorCode::FreeCellCountMismatch, "trace needs one in and one out cell");
  const std::string& in = g.in_cells[0];
  const std::string& out = g.out_cells[0];
  if (!g.base.cell_is_vertex(in) || !g.base.cell_is_vertex(out))
    fail(ErrorCode::CellKindMismatch, "trace needs vertex cells");
  if (g.base.vertex(in).dim != g.base.vertex(out).dim)
    fail(ErrorCode::DimMismatch, "trace cells disagree on dim");
  Specs s = to_specs(g.base);
  find_vertex(s, in)->input = CellInput::ones();
  find_vertex(s, out)->input = CellInput::ones();
  merge_vertices(s, out, in);
  return build_graph(s.v, s.e);
}

std::vector<OperatorGraph> differential(const OperatorGraph& g,
                                        const std::vector<CellInput>& at) {
  if (at.size() != g.in_cells.size())
    fail(ErrorCode::ArityMismatch, "one concrete input per in cell required");
  for (const auto& input : at)
    if (input.is_free() || input.is_random())
      fail(ErrorCode::InvalidOperation, "differential base point must be concrete");
  std::vector<OperatorGraph> out;
  for (std::size_t i = 0; i < g.in_cells.size(); ++i) {
    Specs s = to_specs(g.base);
    for (std::size_t j = 0; j < g.in_cells.size(); ++j) {
      if (j == i) continue;
      const std::string& id = g.in_cells[j];
      if (g.base.cell_is_vertex(id))
        find_vertex(s, id)->input = at[j];
      else
        find_edge(s, id)->input = at[j];
    }
    out.push_back(make_operator_graph(build_graph(s.v, s.e), {g.in_cells[i]}, g.out_cells));
  }
  return out;
}

}  // namespace pgc
