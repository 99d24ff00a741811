#pragma once

#include <iosfwd>
#include <string>

#include "twlab/graph.hpp"
#include "twlab/treewidth.hpp"

namespace twlab {

// PACE-2017 graph format: "p tw <n> <m>", then one 1-indexed "u v" line per
// edge. Lines starting with 'c' are comments. Edges are written sorted.
Graph read_gr(std::istream& in);
void write_gr(std::ostream& out, const Graph& g);

// PACE-2017 decomposition format: "s td <bags> <width+1> <n>", one
// "b <i> <v...>" line per bag, then one "i j" line per tree edge, all 1-indexed.
TreeDecomposition read_td(std::istream& in);
void write_td(std::ostream& out, const TreeDecomposition& td, int vertex_count);

Graph read_gr_file(const std::string& path);
TreeDecomposition read_td_file(const std::string& path);

} // namespace twlab
