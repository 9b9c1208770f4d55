#pragma once

#include <string>

#include "sidkit/graph.hpp"

namespace sidkit {

enum class GraphFormat { adj_matrix, edge_list };

// adj-matrix: p lines of p whitespace- or comma-separated {0,1}; row r,
// column c is the edge r->c; an optional first line "p=<n>" pins the size.
// edge-list: lines "a -> b", "a -- b" or "node a"; labels are mapped to
// ids in order of first appearance.
Graph parse_graph(const std::string& text, GraphFormat format, GraphKind kind);

// Bit-exact emission. adj-matrix: single spaces, newline-terminated rows.
// edge-list: directed edges "i -> j" sorted by (i,j), undirected "i -- j"
// with i < j, then "node k" for isolated nodes.
std::string serialize_graph(const Graph& g, GraphFormat format = GraphFormat::adj_matrix);

// Syntactic sniffing between the two formats ("->", "--" or "node" tokens
// vs. 0/1 rows). Kind is never guessed.
GraphFormat detect_format(const std::string& text);

}  // namespace sidkit
