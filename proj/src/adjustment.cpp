#include "sidkit/adjustment.hpp"

#include <stdexcept>
#include <vector>

namespace sidkit {

BitMatrix blocked_path_matrix(const Graph& g, const NodeSet& z) {
    BitMatrix adj = g.kind() == GraphKind::dag ? g.adjacency() : directed_part(g);
    z.for_each([&](int v) { adj.clear_row(v); });
    return reflexive_closure(adj);
}

// The walk state space has 2p states: head(v) = v (arrived along an edge
// into v), tail(v) = v + p (arrived along an edge out of v). For every
// directed edge q -> v the four local patterns give the transitions
//   (q, head) -> (v, head)   chain  -> q ->      requires q not in z
//   (q, tail) -> (v, head)   fork   <- q ->      requires q not in z
//   (v, head) -> (q, tail)   collider -> v <-    requires z meets DE*(v)
//   (v, tail) -> (q, tail)   chain  <- v <-      requires v not in z
// States of the source are excluded; a path never revisits its start.
NodeSet reachable_on_non_directed_path(const Graph& g, int source, const NodeSet& z,
                                       const BitMatrix& closure,
                                       const BitMatrix& closure_blocked) {
    int p = g.node_count();
    auto head = [](int v) { return v; };
    auto tail = [p](int v) { return v + p; };

    std::vector<bool> collider_open(static_cast<size_t>(p));
    for (int v = 0; v < p; ++v) collider_open[v] = closure.row_intersects(v, z);

    BitMatrix walk(2 * p);
    for (int v = 0; v < p; ++v) {
        if (v == source) continue;
        for (int q = 0; q < p; ++q) {
            if (q == source || !g.arc(q, v)) continue;
            if (!z.test(q)) {
                walk.set(head(q), head(v));
                walk.set(tail(q), head(v));
            }
            if (collider_open[v]) walk.set(head(v), tail(q));
            if (!z.test(v)) walk.set(tail(v), tail(q));
        }
    }

    // Seeds where a walk first deviates from a directed path: the source's
    // parents, plus collider turns off the directed spine. closure_blocked
    // row(source) holds exactly the nodes reached by a directed path whose
    // interior avoids z, so a turn there is reachable head-first.
    NodeSet seeds(2 * p);
    for (int q = 0; q < p; ++q)
        if (g.arc(q, source) && q != source) seeds.set(tail(q));
    for (int k = 0; k < p; ++k) {
        if (k == source || !closure_blocked.get(source, k) || !collider_open[k]) continue;
        for (int q = 0; q < p; ++q)
            if (g.arc(q, k) && q != source) seeds.set(tail(q));
    }

    NodeSet result(p);
    if (seeds.empty()) return result;

    BitMatrix reach = reflexive_closure(std::move(walk));
    NodeSet states(2 * p);
    seeds.for_each([&](int s) { states |= reach.row_as_set(s); });
    for (int v = 0; v < p; ++v)
        if (v != source && (states.test(head(v)) || states.test(tail(v)))) result.set(v);
    return result;
}

StarContext::StarContext(const Graph& g, const BitMatrix& closure, int source, NodeSet z)
    : z_(std::move(z)), part1_targets_(g.node_count()), non_directed_reach_(g.node_count()) {
    int p = g.node_count();
    // Part 1 witnesses: children of the source whose reflexive descendant
    // set meets z lie on a directed path to exactly the targets in their
    // closure row.
    for (int c = 0; c < p; ++c)
        if (g.arc(source, c) && closure.row_intersects(c, z_))
            part1_targets_ |= closure.row_as_set(c);
    BitMatrix blocked = blocked_path_matrix(g, z_);
    non_directed_reach_ = reachable_on_non_directed_path(g, source, z_, closure, blocked);
}

StarVerdict StarContext::verdict(int j) const {
    if (part1_targets_.test(j))
        return {false, StarViolation::part1_descendant_of_causal_node};
    if (non_directed_reach_.test(j))
        return {false, StarViolation::part2_unblocked_nondirected_path};
    return {true, std::nullopt};
}

StarVerdict satisfies_star(const Graph& g, int i, int j, const NodeSet& z) {
    if (g.kind() != GraphKind::dag) throw std::invalid_argument("satisfies_star requires a DAG");
    if (i == j) throw std::invalid_argument("satisfies_star requires i != j");
    if (i < 0 || i >= g.node_count() || j < 0 || j >= g.node_count())
        throw std::invalid_argument("node out of range");
    if (z.test(i) || z.test(j))
        throw std::invalid_argument("adjustment set must not contain the pair nodes");
    StarContext ctx(g, path_matrix(g), i, z);
    return ctx.verdict(j);
}

}  // namespace sidkit
