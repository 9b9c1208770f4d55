#include "support.hpp"

#include <array>
#include <map>

#include "sidkit/errors.hpp"

namespace sidkit::test {

Graph example1_g() {
    return Graph(5, GraphKind::dag,
                 {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
}

Graph example1_h1() {
    return Graph(5, GraphKind::dag,
                 {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}});
}

Graph example1_h2() {
    return Graph(5, GraphKind::dag,
                 {{1, 0}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
}

Graph adjustment_figure() {
    return Graph(7, GraphKind::dag,
                 {{kQ, kX}, {kP, kX}, {kP, kY}, {kX, kA}, {kX, kB}, {kB, kW}, {kB, kY}});
}

Graph wide_fork_truth(int targets) {
    std::vector<Edge> edges{{0, 1}};
    for (int k = 0; k < targets; ++k) {
        edges.push_back({0, 2 + k});
        edges.push_back({1, 2 + k});
    }
    return Graph(targets + 2, GraphKind::dag, edges);
}

Graph wide_fork_reversed(int targets) {
    std::vector<Edge> edges{{1, 0}};
    for (int k = 0; k < targets; ++k) {
        edges.push_back({0, 2 + k});
        edges.push_back({1, 2 + k});
    }
    return Graph(targets + 2, GraphKind::dag, edges);
}

Graph chain_dag(int p) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < p; ++i) edges.push_back({i, i + 1});
    return Graph(p, GraphKind::dag, edges);
}

Graph undirected_chain_cpdag(int p) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < p; ++i) edges.push_back({i, i + 1, true});
    return Graph(p, GraphKind::cpdag, edges);
}

NodeSet set_of(int universe, std::initializer_list<int> xs) {
    NodeSet s(universe);
    for (int x : xs) s.set(x);
    return s;
}

std::vector<Graph> all_dags(int p) {
    std::vector<std::array<int, 2>> pairs;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) pairs.push_back({i, j});
    std::vector<Graph> out;
    std::uint64_t total = 1;
    for (size_t k = 0; k < pairs.size(); ++k) total *= 3;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        std::vector<Edge> edges;
        for (const auto& [i, j] : pairs) {
            switch (c % 3) {
                case 1: edges.push_back({i, j}); break;
                case 2: edges.push_back({j, i}); break;
                default: break;
            }
            c /= 3;
        }
        try {
            out.emplace_back(p, GraphKind::dag, edges);
        } catch (const ValidationError&) {
            // cyclic orientation
        }
    }
    return out;
}

namespace {

// Equivalence key: skeleton plus v-structures.
std::vector<std::uint64_t> class_key(const Graph& g) {
    int p = g.node_count();
    std::vector<std::uint64_t> key;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            key.push_back(g.adjacent(i, j) ? 1 : 0);
    for (int c = 0; c < p; ++c)
        for (int a = 0; a < p; ++a)
            for (int b = a + 1; b < p; ++b) {
                bool v = g.has_directed_edge(a, c) && g.has_directed_edge(b, c) &&
                         !g.adjacent(a, b);
                key.push_back(v ? 1 : 0);
            }
    return key;
}

}  // namespace

Graph induced_subgraph(const Graph& g, const NodeSet& nodes, GraphKind kind) {
    std::vector<int> members = nodes.to_vector();
    int m = static_cast<int>(members.size());
    BitMatrix adj(m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (g.arc(members[a], members[b])) adj.set(a, b);
    return trusted_graph(m, kind, adj);
}

std::vector<MarkovClass> markov_classes(int p) {
    std::map<std::vector<std::uint64_t>, std::vector<Graph>> groups;
    for (Graph& g : all_dags(p)) groups[class_key(g)].push_back(std::move(g));
    std::vector<MarkovClass> out;
    for (auto& [key, members] : groups) {
        BitMatrix adj(p);
        for (const Graph& g : members)
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < p; ++j)
                    if (g.arc(i, j)) adj.set(i, j);
        out.push_back({trusted_graph(p, GraphKind::cpdag, adj), std::move(members)});
    }
    return out;
}

}  // namespace sidkit::test
