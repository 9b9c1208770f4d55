#pragma once

#include <string>
#include <vector>

#include "sidkit/graph.hpp"

namespace sidkit {

inline constexpr int kDefaultExtensionCap = 8;

// True iff every path between a and b is blocked by s (ancestral moral
// graph separation). Requires a DAG and pairwise disjoint sets.
bool d_separated(const Graph& g, const NodeSet& a, const NodeSet& b, const NodeSet& s);

// Partition of the nodes into maximal sets connected by undirected edges;
// nodes without undirected incident edges form singletons.
std::vector<NodeSet> chain_components(const Graph& g);

// Perfect-elimination test via maximum cardinality search on the
// undirected subgraph induced by the component.
bool is_chordal(const Graph& g, const NodeSet& component);

// All orientations of the component's undirected edges that are acyclic
// and create no new v-structure with respect to g; edges outside the
// component are untouched. Throws CapExceeded when the component has more
// than `cap` nodes; the caller is expected to fall back to per-node
// candidate parent sets.
std::vector<Graph> enumerate_extensions(const Graph& g, const NodeSet& component,
                                        int cap = kDefaultExtensionCap);

// True iff dag has cpdag's skeleton, keeps every directed edge of cpdag
// and has exactly the class's v-structures.
bool is_consistent_extension(const Graph& cpdag, const Graph& dag);

// The completed PDAG of dag's Markov equivalence class: skeleton plus
// v-structures, closed under the Meek orientation rules.
Graph completed_pdag_of(const Graph& dag);

// One member of the class represented by cpdag, produced by orienting each
// chain component along its maximum-cardinality-search order.
Graph consistent_extension_of(const Graph& cpdag);

struct CpdagCheck {
    bool ok;
    std::string reason;  // empty when ok
};

// Full CPDAG validation of a PDAG-shaped graph: acyclic directed part,
// chordal chain components, and equality with the completed PDAG of a
// consistent extension.
CpdagCheck check_cpdag(const Graph& g);

}  // namespace sidkit
