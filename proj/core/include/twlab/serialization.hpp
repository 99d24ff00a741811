#pragma once

#include <string>
#include <string_view>

#include "twlab/graph.hpp"
#include "twlab/random_models.hpp"

namespace twlab {

// JSON documents carry a "type" field: "csp", "bayesnet" or "digraph".
//
//   csp:      {"type":"csp","n":N,"domain_size":D,"order":d,
//              "constraints":[{"scope":[...],"forbidden":[[...],...]},...]}
//   bayesnet: {"type":"bayesnet","n":N,"domain_sizes":[...],
//              "nodes":[{"id":i,"parents":[...],"cpt":[[...],...]},...]}
//   digraph:  {"type":"digraph","n":N,"arcs":[[parent,child],...]}
//
// Vertex ids are 0-based. CPT rows follow BayesNet's row order.
std::string to_json(const CspInstance& c);
std::string to_json(const BayesNet& b);
std::string to_json(const DiGraph& g);

CspInstance csp_from_json(std::string_view text);
BayesNet bayesnet_from_json(std::string_view text);
DiGraph digraph_from_json(std::string_view text);

// Value of the "type" field; throws ParseError when absent.
std::string json_document_type(std::string_view text);

} // namespace twlab
