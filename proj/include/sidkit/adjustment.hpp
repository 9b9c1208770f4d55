#pragma once

#include <optional>

#include "sidkit/graph.hpp"

namespace sidkit {

// Arrival orientation in the 2p-state reachability walk: head means the
// walked edge points into the node, tail means it points out of it.
enum class Arrival { head, tail };

struct ReachState {
    int node;
    Arrival arrival;
};

enum class StarViolation {
    part1_descendant_of_causal_node,
    part2_unblocked_nondirected_path,
};

struct StarVerdict {
    bool satisfied;
    std::optional<StarViolation> violated_part;  // present iff !satisfied
};

// Closure of g with all edges leaving members of z removed. A directed
// path i -> ... -> k in this matrix has no z-node strictly before k.
BitMatrix blocked_path_matrix(const Graph& g, const NodeSet& z);

// All nodes j != source reachable from source along a walk that is not a
// directed path from source and is unblocked by z. Arrival states are
// closed over the 2p x 2p transition matrix of Arrival-labelled moves;
// turning points off the directed spine are seeded from closure_blocked.
// closure must be path_matrix(g) and closure_blocked must be
// blocked_path_matrix(g, z).
NodeSet reachable_on_non_directed_path(const Graph& g, int source, const NodeSet& z,
                                       const BitMatrix& closure,
                                       const BitMatrix& closure_blocked);

// Per-source scratch shared across all targets j: the part-1 witness row
// and the non-directed reach set are computed once per (source, z).
class StarContext {
public:
    StarContext(const Graph& g, const BitMatrix& closure, int source, NodeSet z);

    // Pre: j != source and j not in z.
    StarVerdict verdict(int j) const;

    bool part1_violated(int j) const { return part1_targets_.test(j); }
    bool part2_violated(int j) const { return non_directed_reach_.test(j); }
    const NodeSet& non_directed_reach() const { return non_directed_reach_; }

private:
    NodeSet z_;
    NodeSet part1_targets_;
    NodeSet non_directed_reach_;
};

// Two-part adjustment condition on z with respect to (g, i, j): part 1, no member
// of z is a reflexive descendant of a node other than i on a directed
// path from i to j; part 2, z blocks every non-directed path from i to j.
// Throws std::invalid_argument when i == j or z meets {i, j}.
StarVerdict satisfies_star(const Graph& g, int i, int j, const NodeSet& z);

}  // namespace sidkit
