#include "sidkit/structure.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

#include "sidkit/errors.hpp"

namespace sidkit {

bool d_separated(const Graph& g, const NodeSet& a, const NodeSet& b, const NodeSet& s) {
    if (g.kind() != GraphKind::dag) throw std::invalid_argument("d_separated requires a DAG");
    if (a.intersects(b) || a.intersects(s) || b.intersects(s))
        throw std::invalid_argument("d_separated requires pairwise disjoint sets");
    int p = g.node_count();

    // Ancestral set of a | b | s, then the moral graph on it: drop
    // directions, marry co-parents, delete s, and test plain connectivity.
    NodeSet relevant = a | b | s;
    {
        std::vector<int> stack = relevant.to_vector();
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < p; ++v)
                if (g.arc(v, u) && !relevant.test(v)) {
                    relevant.set(v);
                    stack.push_back(v);
                }
        }
    }

    BitMatrix moral(p);
    for (int u = 0; u < p; ++u) {
        if (!relevant.test(u)) continue;
        for (int v = 0; v < p; ++v)
            if (g.arc(v, u)) {
                moral.set(u, v);
                moral.set(v, u);
            }
        // marry parents of u
        std::vector<int> pa;
        for (int v = 0; v < p; ++v)
            if (g.arc(v, u)) pa.push_back(v);
        for (size_t x = 0; x < pa.size(); ++x)
            for (size_t y = x + 1; y < pa.size(); ++y) {
                moral.set(pa[x], pa[y]);
                moral.set(pa[y], pa[x]);
            }
    }

    NodeSet seen = a;
    std::vector<int> stack = a.to_vector();
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (b.test(u)) return false;
        for (int v = 0; v < p; ++v) {
            if (!moral.get(u, v) || seen.test(v) || s.test(v) || !relevant.test(v)) continue;
            seen.set(v);
            stack.push_back(v);
        }
    }
    return !seen.intersects(b);
}

std::vector<NodeSet> chain_components(const Graph& g) {
    if (g.kind() == GraphKind::dag)
        throw std::invalid_argument("chain_components expects a PDAG or CPDAG");
    int p = g.node_count();
    std::vector<NodeSet> components;
    NodeSet assigned(p);
    for (int start = 0; start < p; ++start) {
        if (assigned.test(start)) continue;
        NodeSet comp(p);
        comp.set(start);
        assigned.set(start);
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < p; ++v)
                if (g.has_undirected_edge(u, v) && !assigned.test(v)) {
                    assigned.set(v);
                    comp.set(v);
                    stack.push_back(v);
                }
        }
        components.push_back(std::move(comp));
    }
    return components;
}

namespace {

// Maximum cardinality search over the undirected subgraph induced by
// `nodes`. Returns the visit order; the reverse order is a perfect
// elimination ordering iff the subgraph is chordal.
std::vector<int> mcs_order(const Graph& g, const NodeSet& nodes) {
    std::vector<int> members = nodes.to_vector();
    int m = static_cast<int>(members.size());
    std::vector<int> weight(m, 0);
    std::vector<bool> visited(m, false);
    std::vector<int> order;
    order.reserve(m);
    for (int step = 0; step < m; ++step) {
        int best = -1;
        for (int k = 0; k < m; ++k)
            if (!visited[k] && (best == -1 || weight[k] > weight[best])) best = k;
        visited[best] = true;
        order.push_back(members[best]);
        for (int k = 0; k < m; ++k)
            if (!visited[k] && g.has_undirected_edge(members[best], members[k])) ++weight[k];
    }
    return order;
}

}  // namespace

bool is_chordal(const Graph& g, const NodeSet& component) {
    std::vector<int> order = mcs_order(g, component);
    int m = static_cast<int>(order.size());
    std::vector<int> position(g.node_count(), -1);
    for (int k = 0; k < m; ++k) position[order[k]] = k;
    for (int k = 1; k < m; ++k) {
        int v = order[k];
        // Earlier neighbors of v must all be adjacent to the latest one.
        int latest = -1;
        for (int t = 0; t < k; ++t)
            if (g.has_undirected_edge(v, order[t])) latest = t;
        if (latest == -1) continue;
        for (int t = 0; t < latest; ++t) {
            int u = order[t];
            if (g.has_undirected_edge(v, u) && !g.has_undirected_edge(order[latest], u))
                return false;
        }
    }
    return true;
}

namespace {

struct UndirectedEdge {
    int a, b;
};

bool creates_cycle(const BitMatrix& adj, int p, int from, int to) {
    // Directed-part reachability to -> ... -> from?
    std::vector<int> stack{to};
    NodeSet seen(p);
    seen.set(to);
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (u == from) return true;
        for (int v = 0; v < p; ++v)
            if (adj.get(u, v) && !adj.get(v, u) && !seen.test(v)) {
                seen.set(v);
                stack.push_back(v);
            }
    }
    return false;
}

void enumerate_orientations(const Graph& g, BitMatrix& adj,
                            const std::vector<UndirectedEdge>& edges, size_t index,
                            std::vector<Graph>& out) {
    int p = g.node_count();
    if (index == edges.size()) {
        bool any_undirected = false;
        for (int i = 0; i < p && !any_undirected; ++i)
            for (int j = i + 1; j < p; ++j)
                if (adj.get(i, j) && adj.get(j, i)) {
                    any_undirected = true;
                    break;
                }
        out.push_back(trusted_graph(p, any_undirected ? GraphKind::pdag : GraphKind::dag, adj));
        return;
    }
    auto [a, b] = edges[index];
    for (int dir = 0; dir < 2; ++dir) {
        int from = dir == 0 ? a : b;
        int to = dir == 0 ? b : a;
        adj.reset(to, from);  // orient from -> to
        bool ok = !creates_cycle(adj, p, from, to);
        if (ok) {
            // A new arrowhead at `to` must not meet a non-adjacent co-parent.
            for (int q = 0; q < p && ok; ++q) {
                if (q == from || !adj.get(q, to) || adj.get(to, q)) continue;
                if (!g.adjacent(q, from)) ok = false;
            }
        }
        if (ok) enumerate_orientations(g, adj, edges, index + 1, out);
        adj.set(to, from);  // restore the undirected pair
    }
}

}  // namespace

std::vector<Graph> enumerate_extensions(const Graph& g, const NodeSet& component, int cap) {
    if (component.count() > cap)
        throw CapExceeded("chain component " + component.str() + " exceeds the extension cap of " +
                          std::to_string(cap) + " nodes");
    std::vector<UndirectedEdge> edges;
    std::vector<int> members = component.to_vector();
    for (size_t x = 0; x < members.size(); ++x)
        for (size_t y = x + 1; y < members.size(); ++y)
            if (g.has_undirected_edge(members[x], members[y]))
                edges.push_back({members[x], members[y]});
    BitMatrix adj = g.adjacency();
    std::vector<Graph> out;
    enumerate_orientations(g, adj, edges, 0, out);
    return out;
}

namespace {

// V-structures a -> c <- b with a, b non-adjacent, over strictly-directed
// edges; encoded as (min(a,b), max(a,b), c).
std::vector<std::array<int, 3>> v_structures(const Graph& g) {
    int p = g.node_count();
    std::vector<std::array<int, 3>> out;
    for (int c = 0; c < p; ++c) {
        std::vector<int> pa;
        for (int a = 0; a < p; ++a)
            if (g.has_directed_edge(a, c)) pa.push_back(a);
        for (size_t x = 0; x < pa.size(); ++x)
            for (size_t y = x + 1; y < pa.size(); ++y)
                if (!g.adjacent(pa[x], pa[y]))
                    out.push_back({std::min(pa[x], pa[y]), std::max(pa[x], pa[y]), c});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

bool is_consistent_extension(const Graph& cpdag, const Graph& dag) {
    if (cpdag.node_count() != dag.node_count()) return false;
    int p = cpdag.node_count();
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (cpdag.adjacent(i, j) != dag.adjacent(i, j)) return false;
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            if (cpdag.has_directed_edge(i, j) && !dag.has_directed_edge(i, j)) return false;
    return v_structures(cpdag) == v_structures(dag);
}

Graph completed_pdag_of(const Graph& dag) {
    if (dag.kind() != GraphKind::dag)
        throw std::invalid_argument("completed_pdag_of requires a DAG");
    int p = dag.node_count();

    // Pattern: skeleton undirected, v-structure edges directed.
    BitMatrix adj(p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            if (dag.adjacent(i, j)) adj.set(i, j);
    for (const auto& [a, b, c] : v_structures(dag)) {
        adj.reset(c, a);
        adj.reset(c, b);
    }

    auto directed = [&](int i, int j) { return adj.get(i, j) && !adj.get(j, i); };
    auto undirected = [&](int i, int j) { return adj.get(i, j) && adj.get(j, i); };
    auto orient = [&](int i, int j) { adj.reset(j, i); };

    // Meek rules R1-R3 to a fixed point. R4 only fires under background
    // knowledge, which patterns of DAGs never carry.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b) {
                if (!undirected(a, b)) continue;
                bool fire = false;
                // R1: c -> a, c not adjacent b  =>  a -> b
                for (int c = 0; c < p && !fire; ++c)
                    if (directed(c, a) && !dag.adjacent(c, b)) fire = true;
                // R2: a -> c -> b  =>  a -> b
                for (int c = 0; c < p && !fire; ++c)
                    if (directed(a, c) && directed(c, b)) fire = true;
                // R3: a - c -> b, a - d -> b, c/d non-adjacent  =>  a -> b
                for (int c = 0; c < p && !fire; ++c) {
                    if (!(undirected(a, c) && directed(c, b))) continue;
                    for (int d = c + 1; d < p && !fire; ++d)
                        if (undirected(a, d) && directed(d, b) && !dag.adjacent(c, d)) fire = true;
                }
                if (fire) {
                    orient(a, b);
                    changed = true;
                }
            }
    }
    return trusted_graph(p, GraphKind::cpdag, adj);
}

Graph consistent_extension_of(const Graph& cpdag) {
    if (cpdag.kind() != GraphKind::cpdag)
        throw std::invalid_argument("consistent_extension_of requires a CPDAG");
    int p = cpdag.node_count();
    BitMatrix adj = cpdag.adjacency();
    for (const NodeSet& comp : chain_components(cpdag)) {
        if (comp.count() < 2) continue;
        std::vector<int> order = mcs_order(cpdag, comp);
        std::vector<int> position(p, -1);
        for (int k = 0; k < static_cast<int>(order.size()); ++k) position[order[k]] = k;
        comp.for_each([&](int a) {
            comp.for_each([&](int b) {
                if (cpdag.has_undirected_edge(a, b) && position[a] < position[b])
                    adj.reset(b, a);  // orient earlier -> later in MCS order
            });
        });
    }
    return Graph::from_adjacency(GraphKind::dag, adj);
}

CpdagCheck check_cpdag(const Graph& g) {
    int p = g.node_count();
    // Work on a pdag-kind view so chain components are well-defined for
    // any input kind.
    Graph view = trusted_graph(p, GraphKind::cpdag, g.adjacency());
    for (const NodeSet& comp : chain_components(view))
        if (comp.count() >= 2 && !is_chordal(view, comp))
            return {false, "chain component " + comp.str() + " is not chordal"};

    Graph extension = view;
    try {
        extension = consistent_extension_of(view);
    } catch (const ValidationError& e) {
        return {false, std::string("no consistent extension: ") + e.what()};
    }
    Graph completed = completed_pdag_of(extension);
    if (!(completed.adjacency() == g.adjacency())) {
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j)
                if (completed.adjacency().get(i, j) != g.adjacency().get(i, j))
                    return {false,
                            "not a completed PDAG: edge between nodes " + std::to_string(i) +
                                " and " + std::to_string(j) +
                                " disagrees with the completed pattern of a consistent extension"};
        return {false, "not a completed PDAG"};
    }
    return {true, ""};
}

}  // namespace sidkit
