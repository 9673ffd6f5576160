#pragma once
// graph_json.hpp — JSON serialization of graphs.
//
// Schema: {"vertices":[{"id","dim","input"}], "edges":[{"id","head","tail","input"}]}
// with operator graphs adding "in_cells" and "out_cells" arrays.
// Input encodings: {"kind":"ones"}, {"kind":"identity"},
// {"kind":"ones_matrix","weight":w}, {"kind":"basis","i":k},
// {"kind":"dense","data":[...]} (vector) or nested rows (matrix),
// {"kind":"random","label":l,"sigma":s}, {"kind":"free_in"}, {"kind":"free_out"}.

#include <string>

#include "pgc/graph.hpp"

namespace pgc {

std::string graph_to_json(const ProductGraph& g, bool pretty = true);
std::string graph_to_json(const OperatorGraph& g, bool pretty = true);

ProductGraph product_graph_from_json(const std::string& text);
OperatorGraph operator_graph_from_json(const std::string& text);

}  // namespace pgc
