// graph_json.cpp — JSON round-trip for product and operator graphs.

#include "pgc/graph_json.hpp"

#include <nlohmann/json.hpp>

namespace pgc {

namespace {

using nlohmann::json;

json cplx_to_json(const Cplx& z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

Cplx cplx_from_json(const json& j) {
  if (j.is_number()) return Cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return Cplx(j[0].get<double>(), j[1].get<double>());
  fail(ErrorCode::BadConfig, "bad complex entry in dense data");
}

json input_to_json(const CellInput& c) {
  json j;
  switch (c.kind) {
    case InputKind::AllOnes:
      j["kind"] = "ones";
      break;
    case InputKind::Identity:
      j["kind"] = "identity";
      break;
    case InputKind::AllOnesMatrix:
      j["kind"] = "ones_matrix";
      j["weight"] = c.weight;
      break;
    case InputKind::Basis:
      j["kind"] = "basis";
      j["i"] = c.basis_index;
      break;
    case InputKind::Random:
      j["kind"] = "random";
      j["label"] = c.label;
      j["sigma"] = c.sigma;
      break;
    case InputKind::FreeIn:
      j["kind"] = "free_in";
      break;
    case InputKind::FreeOut:
      j["kind"] = "free_out";
      break;
    case InputKind::DenseVector: {
      j["kind"] = "dense";
      json data = json::array();
      for (int i = 0; i < c.vec.size(); ++i) data.push_back(cplx_to_json(c.vec[i]));
      j["data"] = data;
      break;
    }
    case InputKind::DenseMatrix: {
      // Rows of [re,im] pairs, so a 2-column matrix cannot be mistaken for a
      // vector of complex scalars.
      j["kind"] = "dense";
      json data = json::array();
      for (int i = 0; i < c.mat.rows(); ++i) {
        json row = json::array();
        for (int k = 0; k < c.mat.cols(); ++k)
          row.push_back(json::array({c.mat(i, k).real(), c.mat(i, k).imag()}));
        data.push_back(row);
      }
      j["data"] = data;
      break;
    }
  }
  return j;
}

CellInput input_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    fail(ErrorCode::BadConfig, "input needs a kind field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "ones") return CellInput::ones();
  if (kind == "identity") return CellInput::identity();
  if (kind == "ones_matrix") return CellInput::ones_matrix(j.value("weight", 1.0));
  if (kind == "basis") return CellInput::basis(j.at("i").get<int>());
  if (kind == "random")
    return CellInput::random(j.at("label").get<int>(), j.value("sigma", 1.0));
  if (kind == "free_in") return CellInput::free_in();
  if (kind == "free_out") return CellInput::free_out();
  if (kind == "dense") {
    const json& data = j.at("data");
    if (!data.is_array() || data.empty())
      fail(ErrorCode::BadConfig, "dense input needs nonempty data");
    // Matrix rows: nested arrays whose entries are [re,im] pairs, or plain
    // number rows of length != 2 (an [a,b] number row reads as one complex
    // vector entry instead).
    const bool matrix =
        data[0].is_array() &&
        ((!data[0].empty() && data[0][0].is_array()) || data[0].size() != 2);
    if (matrix) {
      const int rows = static_cast<int>(data.size());
      const int cols = static_cast<int>(data[0].size());
      Eigen::MatrixXcd m(rows, cols);
      for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(data[i].size()) != cols)
          fail(ErrorCode::BadConfig, "ragged dense matrix data");
        for (int k = 0; k < cols; ++k) m(i, k) = cplx_from_json(data[i][k]);
      }
      return CellInput::dense(m);
    }
    const int n = static_cast<int>(data.size());
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = cplx_from_json(data[i]);
    return CellInput::dense(v);
  }
  fail(ErrorCode::BadConfig, "unknown input kind '" + kind + "'");
}

json base_to_json(const ProductGraph& g) {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : g.vertices())
    j["vertices"].push_back({{"id", v.id}, {"dim", v.dim}, {"input", input_to_json(v.input)}});
  j["edges"] = json::array();
  for (const auto& e : g.edges())
    j["edges"].push_back({{"id", e.id},
                          {"head", e.head},
                          {"tail", e.tail},
                          {"input", input_to_json(e.input)}});
  return j;
}

ProductGraph base_from_json(const json& j) {
  std::vector<VertexSpec> vs;
  std::vector<EdgeSpec> es;
  for (const auto& v : j.value("vertices", json::array()))
    vs.push_back({v.at("id").get<std::string>(), v.at("dim").get<int>(),
                  input_from_json(v.at("input"))});
  for (const auto& e : j.value("edges", json::array()))
    es.push_back({e.at("id").get<std::string>(), e.at("head").get<std::string>(),
                  e.at("tail").get<std::string>(), input_from_json(e.at("input"))});
  return build_graph(vs, es);
}

std::string dump(const json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

}  // namespace

std::string graph_to_json(const ProductGraph& g, bool pretty) {
  return dump(base_to_json(g), pretty);
}

std::string graph_to_json(const OperatorGraph& g, bool pretty) {
  json j = base_to_json(g.base);
  j["in_cells"] = g.in_cells;
  j["out_cells"] = g.out_cells;
  return dump(j, pretty);
}

ProductGraph product_graph_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::BadConfig, "unparseable graph JSON");
  return base_from_json(j);
}

OperatorGraph operator_graph_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::BadConfig, "unparseable graph JSON");
  ProductGraph base = base_from_json(j);
  std::vector<std::string> in = j.value("in_cells", std::vector<std::string>{});
  std::vector<std::string> out = j.value("out_cells", std::vector<std::string>{});
  return make_operator_graph(std::move(base), std::move(in), std::move(out));
}

}  // namespace pgc
