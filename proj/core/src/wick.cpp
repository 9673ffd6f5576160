// wick.cpp — quotient graphs, pairing classification, exact expectations,
// leading-order counts.

#include "pgc/wick.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "pgc/eval.hpp"

namespace pgc {

namespace {

struct UnionFind {
  std::map<std::string, std::string> parent;

  void add(const std::string& x) {
    if (!parent.count(x)) parent[x] = x;
  }
  std::string find_v(std::string x) {
    add(x);
    while (parent[x] != x) x = parent[x];
    return x;
  }
  void unite(const std::string& a, const std::string& b) {
    std::string ra = find_v(a), rb = find_v(b);
    if (ra == rb) return;
    // Lexicographically smallest id represents the class.
    if (rb < ra) std::swap(ra, rb);
    parent[rb] = ra;
  }
};

void validate_pairing(const ProductGraph& g, const Pairing& phi) {
  std::set<std::string> seen;
  for (const auto& [a, b] : phi.pairs) {
    for (const std::string& id : {a, b}) {
      if (!g.has_edge(id) || !g.edge(id).input.is_random())
        fail(ErrorCode::NotAdmissible, "pairing names non-random cell '" + id + "'");
      if (!seen.insert(id).second)
        fail(ErrorCode::NotAdmissible, "edge '" + id + "' paired twice");
    }
  }
  for (const auto& id : g.random_edge_ids())
    if (!seen.count(id))
      fail(ErrorCode::NotAdmissible, "random edge '" + id + "' left unpaired");
}

}  // namespace

QuotientGraph quotient(const ProductGraph& g, const Pairing& phi) {
  validate_pairing(g, phi);
  UnionFind uf;
  for (const auto& v : g.vertices()) uf.add(v.id);
  for (const auto& [a, b] : phi.pairs) {
    const Edge& ea = g.edge(a);
    const Edge& eb = g.edge(b);
    uf.unite(ea.head, eb.head);
    uf.unite(ea.tail, eb.tail);
  }

  QuotientGraph q;
  for (const auto& v : g.vertices()) q.vertex_classes[v.id] = uf.find_v(v.id);

  // One vertex per class, inputs Hadamard-combined in declaration order.
  std::vector<VertexSpec> vspecs;
  std::map<std::string, int> class_pos;
  for (const auto& v : g.vertices()) {
    const std::string rep = q.vertex_classes[v.id];
    auto it = class_pos.find(rep);
    if (it == class_pos.end()) {
      class_pos[rep] = static_cast<int>(vspecs.size());
      vspecs.push_back({rep, v.dim, v.input});
    } else {
      VertexSpec& vs = vspecs[it->second];
      if (vs.dim != v.dim) fail(ErrorCode::DimMismatch, "merged vertices disagree on dim");
      vs.input = hadamard_input(vs.input, v.input, vs.dim);
    }
  }

  std::vector<EdgeSpec> especs;
  std::set<std::string> dropped;
  std::map<std::string, std::pair<std::string, double>> merged;  // id -> (partner, sigma product)
  for (const auto& [a, b] : phi.pairs) {
    const std::string keep = std::min(a, b);
    const std::string drop = std::max(a, b);
    merged[keep] = {drop, g.edge(a).input.sigma * g.edge(b).input.sigma};
    dropped.insert(drop);
    q.edge_classes[a] = keep;
    q.edge_classes[b] = keep;
  }
  for (const auto& e : g.edges()) {
    if (dropped.count(e.id)) continue;
    const std::string head = q.vertex_classes[e.head];
    const std::string tail = q.vertex_classes[e.tail];
    auto it = merged.find(e.id);
    if (it != merged.end())
      especs.push_back({e.id, head, tail, CellInput::ones_matrix(it->second.second)});
    else
      especs.push_back({e.id, head, tail, e.input}); // deterministic or unpaired
  }
  q.graph = build_graph(vspecs, especs);
  return q;
}

namespace {

// Component label of a connected quotient-graph piece is a tree iff its edge
// count is one short of its vertex count (components are connected already;
// loops and parallel edges inflate the count and so break the equality).
std::vector<bool> component_is_tree(const ProductGraph& g) {
  std::vector<int> labels = g.component_labels();
  int c = 0;
  for (int l : labels) c = std::max(c, l + 1);
  std::vector<int> nv(c, 0), ne(c, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) ++nv[labels[i]];
  for (const auto& e : g.edges()) ++ne[labels[g.vertex_index(e.head)]];
  std::vector<bool> tree(c);
  for (int i = 0; i < c; ++i) tree[i] = (ne[i] == nv[i] - 1);
  return tree;
}

}  // namespace

PairingClass classify(const ProductGraph& g, const Pairing& phi) {
  validate_pairing(g, phi);
  const std::vector<int> comp = g.component_labels();
  const int c = g.component_count();

  auto comp_of_edge = [&](const std::string& id) {
    return comp[g.vertex_index(g.edge(id).head)];
  };

  std::vector<std::set<int>> partners(c);
  std::vector<bool> self_paired(c, true);
  for (const auto& [a, b] : phi.pairs) {
    int ca = comp_of_edge(a), cb = comp_of_edge(b);
    if (ca != cb) {
      partners[ca].insert(cb);
      partners[cb].insert(ca);
      self_paired[ca] = self_paired[cb] = false;
    }
  }

  QuotientGraph q = quotient(g, phi);
  const std::vector<int> qcomp = q.graph.component_labels();
  const std::vector<bool> qtree = component_is_tree(q.graph);

  // Image of an original component in the quotient.
  std::vector<int> image(c, -1);
  for (const auto& v : g.vertices()) {
    int ci = comp[g.vertex_index(v.id)];
    image[ci] = qcomp[q.graph.vertex_index(q.vertex_classes.at(v.id))];
  }

  PairingClass pc;
  pc.component_self_paired.resize(c);
  pc.component_is_atom.resize(c);
  bool all_self = true, none_self = true, matched_in_pairs = true, pairs_tree = true;
  bool all_atom = true, no_atom = true;
  for (int i = 0; i < c; ++i) {
    pc.component_self_paired[i] = self_paired[i];
    pc.component_is_atom[i] = self_paired[i] && qtree[image[i]];
    all_self = all_self && self_paired[i];
    none_self = none_self && !self_paired[i];
    all_atom = all_atom && pc.component_is_atom[i];
    no_atom = no_atom && !pc.component_is_atom[i];
    if (partners[i].size() != 1) matched_in_pairs = false;
    if (!qtree[image[i]]) pairs_tree = false;
  }
  pc.fully_atomic = all_self && all_atom;
  pc.bi_atomic = none_self && matched_in_pairs && pairs_tree;
  pc.atom_free = no_atom;
  if (pc.fully_atomic)
    pc.kind = PairingClassKind::FullyAtomic;
  else if (pc.bi_atomic)
    pc.kind = PairingClassKind::BiAtomic;
  else if (pc.atom_free)
    pc.kind = PairingClassKind::AtomFree;
  else
    pc.kind = PairingClassKind::Other;
  return pc;
}

GraphStats graph_stats(const ProductGraph& g) {
  GraphStats s;
  s.c = g.component_count();
  for (const auto& e : g.edges()) {
    if (e.input.is_random()) {
      ++s.n_random;
      s.sigma_G *= e.input.sigma;
      ++s.label_multiset[e.input.label];
    } else if (e.input.is_deterministic()) {
      ++s.e_check;
    }
  }
  s.e_check += s.n_random / 2;
  return s;
}

Cplx wick_expectation_c(const ProductGraph& g, PairingMode mode) {
  if (g.has_free_cells()) fail(ErrorCode::FreeCellPresent, "graph has free cells");
  Cplx sum(0, 0);
  for (const auto& phi : admissible_pairings(g, mode))
    sum += graph_value_c(quotient(g, phi).graph);
  return sum;
}

double wick_expectation(const ProductGraph& g, PairingMode mode) {
  Cplx v = wick_expectation_c(g, mode);
  if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
    fail(ErrorCode::InvalidOperation, "expectation has a nonzero imaginary part");
  return v.real();
}

namespace {

double real_gaussian_moment(int m, double sigma) {
  if (m % 2 != 0) return 0.0;
  double v = 1.0;
  for (int k = m - 1; k >= 1; k -= 2) v *= k;
  return v * std::pow(sigma, m);
}

double complex_gaussian_moment(int a, int b, double sigma) {
  if (a != b) return 0.0;
  double v = 1.0;
  for (int k = 2; k <= a; ++k) v *= k;
  return v * std::pow(sigma, 2 * a);
}

}  // namespace

Cplx isserlis_oracle_c(const ProductGraph& g, PairingMode mode, std::uint64_t work_cap) {
  if (g.has_free_cells()) fail(ErrorCode::FreeCellPresent, "graph has free cells");
  const auto& vs = g.vertices();
  const int n = static_cast<int>(vs.size());
  std::vector<int> dims(n);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    dims[i] = vs[i].dim;
    total *= static_cast<std::uint64_t>(dims[i]);
    if (total > work_cap) fail(ErrorCode::TooLarge, "too many indexations for the oracle");
  }
  const std::uint64_t cells = vs.size() + g.edges().size() + 1;
  if (total > work_cap / cells)
    fail(ErrorCode::TooLarge, "too many indexations for the oracle");

  // Vertex entry tables.
  std::vector<std::vector<Cplx>> vval(n);
  for (int i = 0; i < n; ++i) {
    vval[i].assign(dims[i], Cplx(0, 0));
    switch (vs[i].input.kind) {
      case InputKind::DenseVector:
        for (int k = 0; k < dims[i]; ++k) vval[i][k] = vs[i].input.vec[k];
        break;
      case InputKind::AllOnes:
        std::fill(vval[i].begin(), vval[i].end(), Cplx(1, 0));
        break;
      case InputKind::Basis:
        vval[i][vs[i].input.basis_index - 1] = Cplx(1, 0);
        break;
      default:
        fail(ErrorCode::CellKindMismatch, "vertex input not evaluable");
    }
  }

  struct DetEdge {
    int h, t;
    const CellInput* input;
  };
  struct RndEdge {
    int h, t;
    int group;  // |label|
    bool conj;  // negative label
    double sigma;
  };
  std::vector<DetEdge> det;
  std::vector<RndEdge> rnd;
  for (const auto& e : g.edges()) {
    int h = g.vertex_index(e.head), t = g.vertex_index(e.tail);
    if (e.input.is_random())
      rnd.push_back({h, t, std::abs(e.input.label), e.input.label < 0, e.input.sigma});
    else
      det.push_back({h, t, &e.input});
  }

  auto det_entry = [&](const DetEdge& d, int i, int j) -> Cplx {
    switch (d.input->kind) {
      case InputKind::DenseMatrix: return d.input->mat(i, j);
      case InputKind::Identity: return i == j ? Cplx(1, 0) : Cplx(0, 0);
      case InputKind::AllOnesMatrix: return Cplx(d.input->weight, 0);
      default: fail(ErrorCode::CellKindMismatch, "edge input not evaluable");
    }
  };

  Cplx sum(0, 0);
  std::vector<int> idx(n, 0);
  std::map<std::tuple<int, int, int>, std::pair<int, int>> counts;
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    Cplx prod(1, 0);
    for (int i = 0; i < n; ++i) prod *= vval[i][idx[i]];
    if (prod != Cplx(0, 0))
      for (const auto& d : det) prod *= det_entry(d, idx[d.h], idx[d.t]);
    if (prod != Cplx(0, 0) && !rnd.empty()) {
      counts.clear();
      std::map<std::tuple<int, int, int>, double> sig;
      for (const auto& r : rnd) {
        auto key = std::make_tuple(r.group, idx[r.h], idx[r.t]);
        auto& cnt = counts[key];
        if (mode == PairingMode::Real || !r.conj)
          ++cnt.first;
        else
          ++cnt.second;
        sig[key] = r.sigma;
      }
      double moment = 1.0;
      for (const auto& [key, cnt] : counts) {
        moment *= (mode == PairingMode::Real)
                      ? real_gaussian_moment(cnt.first + cnt.second, sig[key])
                      : complex_gaussian_moment(cnt.first, cnt.second, sig[key]);
        if (moment == 0.0) break;
      }
      prod *= moment;
    }
    sum += prod;
    for (int i = n - 1; i >= 0; --i) {
      if (++idx[i] < dims[i]) break;
      idx[i] = 0;
    }
  }
  return sum;
}

double isserlis_oracle(const ProductGraph& g, PairingMode mode, std::uint64_t work_cap) {
  Cplx v = isserlis_oracle_c(g, mode, work_cap);
  if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
    fail(ErrorCode::InvalidOperation, "oracle value has a nonzero imaginary part");
  return v.real();
}

namespace {

ProductGraph disjoint_union(const std::vector<ProductGraph>& parts) {
  std::vector<VertexSpec> vs;
  std::vector<EdgeSpec> es;
  std::set<std::string> taken;
  int copy = 0;
  for (const auto& g : parts) {
    ++copy;
    std::map<std::string, std::string> rename;
    auto fresh = [&](const std::string& id) {
      std::string cand = id;
      while (taken.count(cand)) cand += "#" + std::to_string(copy);
      taken.insert(cand);
      return cand;
    };
    for (const auto& v : g.vertices()) {
      rename[v.id] = fresh(v.id);
      vs.push_back({rename[v.id], v.dim, v.input});
    }
    for (const auto& e : g.edges()) {
      es.push_back({fresh(e.id), rename[e.head], rename[e.tail], e.input});
    }
  }
  return build_graph(vs, es);
}

}  // namespace

double centered_product_expectation(const std::vector<ProductGraph>& components,
                                    PairingMode mode) {
  ProductGraph u = disjoint_union(components);
  Cplx sum(0, 0);
  for (const auto& phi : admissible_pairings(u, mode))
    if (classify(u, phi).atom_free) sum += graph_value_c(quotient(u, phi).graph);
  if (std::abs(sum.imag()) > 1e-9 * std::max(1.0, std::abs(sum.real())))
    fail(ErrorCode::InvalidOperation, "centered expectation has a nonzero imaginary part");
  return sum.real();
}

LeadingOrder leading_order(const ProductGraph& g, PairingMode mode) {
  if (g.has_free_cells()) fail(ErrorCode::FreeCellPresent, "graph has free cells");
  for (const auto& v : g.vertices())
    if (v.input.kind != InputKind::AllOnes)
      fail(ErrorCode::AssumptionViolated, "vertex '" + v.id + "' input must be all-ones");
  for (const auto& e : g.edges())
    if (e.input.is_deterministic() && e.input.kind != InputKind::Identity)
      fail(ErrorCode::AssumptionViolated,
           "deterministic edge '" + e.id + "' must carry the identity");

  GraphStats st = graph_stats(g);
  LeadingOrder lo;
  lo.sigma_G = st.sigma_G;
  lo.exponent_max = st.e_check + st.c;
  lo.two_exponent_max = 2 * lo.exponent_max;
  lo.two_exponent_atomfree_bound = 2 * st.e_check + st.c;

  int af_best = -1;
  std::int64_t af_count = 0;
  for (const auto& phi : admissible_pairings(g, mode)) {
    QuotientGraph q = quotient(g, phi);
    // Index classes: quotient vertices glued along identity edges.
    UnionFind uf;
    for (const auto& v : q.graph.vertices()) uf.add(v.id);
    for (const auto& e : q.graph.edges())
      if (e.input.kind == InputKind::Identity) uf.unite(e.head, e.tail);
    std::set<std::string> classes;
    for (const auto& v : q.graph.vertices()) classes.insert(uf.find_v(v.id));
    const int expo = static_cast<int>(classes.size());
    lo.exponents.push_back(expo);
    if (expo == lo.exponent_max) ++lo.count_A;
    if (classify(g, phi).atom_free) {
      if (expo > af_best) {
        af_best = expo;
        af_count = 0;
      }
      if (expo == af_best) ++af_count;
    }
  }
  lo.exponent_sub = std::max(af_best, 0);
  lo.count_B = af_count;
  return lo;
}

FluctuationStats fluctuation_stats(const ProductGraph& g, PairingMode mode) {
  FluctuationStats fs;
  for (const auto& phi : admissible_pairings(g, mode))
    if (classify(g, phi).fully_atomic) ++fs.count_A;
  ProductGraph gg = disjoint_union({g, g});
  for (const auto& phi : admissible_pairings(gg, mode))
    if (classify(gg, phi).bi_atomic) ++fs.count_B_pair;
  return fs;
}

std::string pairing_report_json(const ProductGraph& g, PairingMode mode, bool with_values) {
  nlohmann::json report;
  GraphStats st = graph_stats(g);
  report["components"] = st.c;
  report["e_check"] = st.e_check;
  report["n_random"] = st.n_random;
  report["sigma_G"] = st.sigma_G;
  report["pairings"] = nlohmann::json::array();
  for (const auto& phi : admissible_pairings(g, mode)) {
    nlohmann::json item;
    item["pairs"] = nlohmann::json::array();
    for (const auto& [a, b] : phi.pairs) item["pairs"].push_back({a, b});
    PairingClass pc = classify(g, phi);
    switch (pc.kind) {
      case PairingClassKind::FullyAtomic: item["class"] = "A"; break;
      case PairingClassKind::BiAtomic: item["class"] = "B"; break;
      case PairingClassKind::AtomFree: item["class"] = "AF"; break;
      case PairingClassKind::Other: item["class"] = "other"; break;
    }
    item["atom_free"] = pc.atom_free;
    if (with_values) {
      Cplx v = graph_value_c(quotient(g, phi).graph);
      item["value_re"] = v.real();
      item["value_im"] = v.imag();
    }
    report["pairings"].push_back(item);
  }
  return report.dump(2);
}

}  // namespace pgc
