#include "sidkit/graph.hpp"

#include <stdexcept>
#include <utility>

#include "sidkit/errors.hpp"
#include "sidkit/structure.hpp"

namespace sidkit {

std::string to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::dag: return "dag";
        case GraphKind::pdag: return "pdag";
        case GraphKind::cpdag: return "cpdag";
    }
    return "?";
}

namespace {

// Kahn's algorithm over an arbitrary adjacency-selection predicate.
// Returns the set of nodes stuck on a directed cycle (empty if acyclic).
NodeSet cycle_nodes(const BitMatrix& adj, int p) {
    std::vector<int> indegree(p, 0);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            if (adj.get(i, j)) ++indegree[j];
    std::vector<int> queue;
    queue.reserve(p);
    for (int i = 0; i < p; ++i)
        if (indegree[i] == 0) queue.push_back(i);
    int processed = 0;
    while (!queue.empty()) {
        int u = queue.back();
        queue.pop_back();
        ++processed;
        for (int v = 0; v < p; ++v)
            if (adj.get(u, v) && --indegree[v] == 0) queue.push_back(v);
    }
    NodeSet stuck(p);
    if (processed < p)
        for (int i = 0; i < p; ++i)
            if (indegree[i] > 0) stuck.set(i);
    return stuck;
}

}  // namespace

Graph::Graph(int node_count, GraphKind kind, const std::vector<Edge>& edges)
    : p_(node_count), kind_(kind), adj_(node_count) {
    if (node_count < 1) throw ValidationError("graph must have at least one node");
    for (const Edge& e : edges) {
        if (e.from < 0 || e.from >= p_ || e.to < 0 || e.to >= p_)
            throw ValidationError("edge endpoint out of range: " + std::to_string(e.from) +
                                  " -> " + std::to_string(e.to));
        adj_.set(e.from, e.to);
        if (e.undirected) adj_.set(e.to, e.from);
    }
    validate();
}

Graph::Graph(Trusted, int node_count, GraphKind kind, BitMatrix adjacency)
    : p_(node_count), kind_(kind), adj_(std::move(adjacency)) {}

Graph trusted_graph(int node_count, GraphKind kind, BitMatrix adjacency) {
    return Graph(Graph::Trusted{}, node_count, kind, std::move(adjacency));
}

Graph Graph::from_adjacency(GraphKind kind, const BitMatrix& adjacency) {
    Graph g(Trusted{}, adjacency.dim(), kind, adjacency);
    if (adjacency.dim() < 1) throw ValidationError("graph must have at least one node");
    g.validate();
    return g;
}

void Graph::validate() const {
    for (int i = 0; i < p_; ++i)
        if (adj_.get(i, i)) throw ValidationError("self-loop at node " + std::to_string(i));

    if (kind_ == GraphKind::dag) {
        for (int i = 0; i < p_; ++i)
            for (int j = i + 1; j < p_; ++j)
                if (adj_.get(i, j) && adj_.get(j, i))
                    throw ValidationError("undirected edge in a DAG between nodes " +
                                          std::to_string(i) + " and " + std::to_string(j));
        NodeSet stuck = cycle_nodes(adj_, p_);
        if (!stuck.empty())
            throw ValidationError("directed cycle through nodes " + stuck.str());
        return;
    }

    // PDAG and CPDAG: the strictly-directed part must be acyclic.
    NodeSet stuck = cycle_nodes(directed_part(*this), p_);
    if (!stuck.empty())
        throw ValidationError("directed cycle through nodes " + stuck.str());

    if (kind_ == GraphKind::cpdag) {
        CpdagCheck check = check_cpdag(*this);
        if (!check.ok) throw ValidationError(check.reason);
    }
}

int Graph::edge_count() const {
    int count = 0;
    for (int i = 0; i < p_; ++i)
        for (int j = i + 1; j < p_; ++j)
            if (adjacent(i, j)) ++count;
    return count;
}

NodeSet Graph::parents(int i) const {
    NodeSet s(p_);
    for (int j = 0; j < p_; ++j)
        if (adj_.get(j, i)) s.set(j);
    return s;
}

NodeSet Graph::children(int i) const { return adj_.row_as_set(i); }

NodeSet Graph::strict_parents(int i) const {
    NodeSet s(p_);
    for (int j = 0; j < p_; ++j)
        if (adj_.get(j, i) && !adj_.get(i, j)) s.set(j);
    return s;
}

NodeSet Graph::strict_children(int i) const {
    NodeSet s(p_);
    for (int j = 0; j < p_; ++j)
        if (adj_.get(i, j) && !adj_.get(j, i)) s.set(j);
    return s;
}

NodeSet Graph::undirected_neighbors(int i) const {
    NodeSet s(p_);
    for (int j = 0; j < p_; ++j)
        if (adj_.get(i, j) && adj_.get(j, i)) s.set(j);
    return s;
}

NodeSet Graph::descendants(int i) const {
    if (kind_ != GraphKind::dag)
        throw std::invalid_argument("descendants requires a DAG");
    NodeSet seen(p_);
    std::vector<int> stack{i};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < p_; ++v) {
            if (adj_.get(u, v) && !seen.test(v)) {
                seen.set(v);
                stack.push_back(v);
            }
        }
    }
    seen.reset(i);  // a node is not its own descendant
    return seen;
}

NodeSet Graph::ancestors(int i) const {
    if (kind_ != GraphKind::dag)
        throw std::invalid_argument("ancestors requires a DAG");
    NodeSet seen(p_);
    std::vector<int> stack{i};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < p_; ++v) {
            if (adj_.get(v, u) && !seen.test(v)) {
                seen.set(v);
                stack.push_back(v);
            }
        }
    }
    seen.reset(i);
    return seen;
}

NodeSet Graph::non_descendants(int i) const {
    NodeSet s = descendants(i).complement();
    s.reset(i);  // i belongs to neither DE(i) nor ND(i)
    return s;
}

NodeSet relatives(const Graph& g, int i, Relation which) {
    if (i < 0 || i >= g.node_count()) throw std::invalid_argument("node out of range");
    switch (which) {
        case Relation::parents: return g.parents(i);
        case Relation::children: return g.children(i);
        case Relation::descendants: return g.descendants(i);
        case Relation::ancestors: return g.ancestors(i);
        case Relation::non_descendants: return g.non_descendants(i);
    }
    throw std::invalid_argument("unknown relation");
}

BitMatrix directed_part(const Graph& g) {
    int p = g.node_count();
    BitMatrix d(p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            if (g.adjacency().get(i, j) && !g.adjacency().get(j, i)) d.set(i, j);
    return d;
}

BitMatrix path_matrix(const Graph& g) {
    if (g.kind() == GraphKind::dag) return reflexive_closure(g.adjacency());
    return reflexive_closure(directed_part(g));
}

}  // namespace sidkit
