#pragma once

#include <iosfwd>

#include "treediam/graph.hpp"

namespace treediam {

// One edge per line, "<addr> <addr>", edges in canonical index order.
void write_edge_list(std::ostream& out, const DiamondGraph& g);
void write_edge_list(std::ostream& out, const TreeGraph& g);

// Undirected DOT. Diamond nodes are labelled with their generation number
// (Top and Bottom blank); tree nodes with their bit string.
void write_dot(std::ostream& out, const DiamondGraph& g);
void write_dot(std::ostream& out, const TreeGraph& g);

}  // namespace treediam
