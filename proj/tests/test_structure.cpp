#include <algorithm>
#include <set>

#include "doctest.h"
#include "sidkit/errors.hpp"
#include "sidkit/oracle.hpp"
#include "sidkit/rng.hpp"
#include "sidkit/simbench.hpp"
#include "sidkit/structure.hpp"
#include "support.hpp"

using namespace sidkit;
using namespace sidkit::test;

namespace {

// Path-enumeration reference for d-separation.
bool d_separated_by_paths(const Graph& g, const NodeSet& a, const NodeSet& b, const NodeSet& s) {
    bool separated = true;
    a.for_each([&](int x) {
        b.for_each([&](int y) {
            for (const auto& path : simple_paths(g, x, y))
                if (!path_blocked(g, path, s)) separated = false;
        });
    });
    return separated;
}

}  // namespace

TEST_CASE("d-separation golden cases") {
    Graph collider(3, GraphKind::dag, {{0, 2}, {1, 2}});
    CHECK(d_separated(collider, set_of(3, {0}), set_of(3, {1}), NodeSet(3)));
    CHECK(!d_separated(collider, set_of(3, {0}), set_of(3, {1}), set_of(3, {2})));

    Graph chain = chain_dag(3);
    CHECK(d_separated(chain, set_of(3, {0}), set_of(3, {2}), set_of(3, {1})));
    CHECK(!d_separated(chain, set_of(3, {0}), set_of(3, {2}), NodeSet(3)));

    Graph fig = adjustment_figure();
    CHECK(!d_separated(fig, set_of(7, {kX}), set_of(7, {kY}), set_of(7, {kW})));
    // conditioning on both parents of Y's non-causal paths blocks nothing
    // extra: X -> B -> Y stays open whatever the set
    CHECK(!d_separated(fig, set_of(7, {kX}), set_of(7, {kY}), set_of(7, {kP})));

    CHECK_THROWS_AS(d_separated(chain, set_of(3, {0}), set_of(3, {0}), NodeSet(3)),
                    std::invalid_argument);
}

TEST_CASE("d-separation agrees with path enumeration on small random DAGs") {
    SplitMix64 rng(11);
    int checked = 0;
    for (int rep = 0; rep < 200; ++rep) {
        int p = 3 + static_cast<int>(rng.below(3));  // 3..5
        GenConfig cfg{p, Regime::custom, 0.45, rng.next()};
        Graph g = random_dag(cfg);
        for (int x = 0; x < p; ++x)
            for (int y = 0; y < p; ++y) {
                if (x == y) continue;
                std::uint64_t smask = rng.below(1ULL << p);
                NodeSet s(p);
                for (int k = 0; k < p; ++k)
                    if ((smask >> k) & 1 && k != x && k != y) s.set(k);
                NodeSet a = NodeSet::single(p, x), b = NodeSet::single(p, y);
                CHECK(d_separated(g, a, b, s) == d_separated_by_paths(g, a, b, s));
                ++checked;
            }
    }
    CHECK(checked > 1000);
}

TEST_CASE("chain components partition the nodes") {
    Graph directed(4, GraphKind::pdag, {{0, 1}, {2, 3}});
    auto comps = chain_components(directed);
    CHECK(comps.size() == 4);  // all singletons

    Graph mixed(5, GraphKind::pdag, {{0, 1, true}, {1, 2, true}, {2, 3}, {3, 4}});
    comps = chain_components(mixed);
    CHECK(comps.size() == 3);
    CHECK(std::count_if(comps.begin(), comps.end(),
                        [](const NodeSet& c) { return c.count() == 3; }) == 1);

    Graph chain_class = undirected_chain_cpdag(6);
    comps = chain_components(chain_class);
    CHECK(comps.size() == 1);
    CHECK(comps[0].count() == 6);
}

TEST_CASE("chain components: disjoint, covering, no undirected edge crosses") {
    SplitMix64 rng(13);
    for (int rep = 0; rep < 50; ++rep) {
        int p = 3 + static_cast<int>(rng.below(6));
        std::vector<Edge> edges;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j) {
                std::uint64_t roll = rng.below(5);
                if (roll == 0) edges.push_back({i, j, true});
                if (roll == 1) edges.push_back({i, j, false});
            }
        Graph g(p, GraphKind::pdag, edges);
        auto comps = chain_components(g);
        NodeSet seen(p);
        for (const NodeSet& c : comps) {
            CHECK(!c.empty());
            CHECK(!seen.intersects(c));
            seen |= c;
        }
        CHECK(seen == NodeSet::full(p));
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j)
                if (g.has_undirected_edge(i, j))
                    for (const NodeSet& c : comps) CHECK(c.test(i) == c.test(j));
    }
}

TEST_CASE("chordality golden cases") {
    Graph square(4, GraphKind::pdag,
                 {{0, 1, true}, {1, 2, true}, {2, 3, true}, {3, 0, true}});
    CHECK(!is_chordal(square, NodeSet::full(4)));

    Graph triangle(3, GraphKind::pdag, {{0, 1, true}, {1, 2, true}, {2, 0, true}});
    CHECK(is_chordal(triangle, NodeSet::full(3)));

    // trees are chordal
    Graph tree(6, GraphKind::pdag,
               {{0, 1, true}, {0, 2, true}, {1, 3, true}, {1, 4, true}, {2, 5, true}});
    CHECK(is_chordal(tree, NodeSet::full(6)));

    Graph square_with_diagonal(4, GraphKind::pdag,
                               {{0, 1, true}, {1, 2, true}, {2, 3, true}, {3, 0, true},
                                {0, 2, true}});
    CHECK(is_chordal(square_with_diagonal, NodeSet::full(4)));

    // 5-cycle
    Graph pentagon(5, GraphKind::pdag,
                   {{0, 1, true}, {1, 2, true}, {2, 3, true}, {3, 4, true}, {4, 0, true}});
    CHECK(!is_chordal(pentagon, NodeSet::full(5)));
}

TEST_CASE("extension enumeration golden counts") {
    Graph single(2, GraphKind::cpdag, {{0, 1, true}});
    auto exts = enumerate_extensions(single, NodeSet::full(2));
    CHECK(exts.size() == 2);

    Graph chain3 = undirected_chain_cpdag(3);
    exts = enumerate_extensions(chain3, NodeSet::full(3));
    CHECK(exts.size() == 3);  // the collider at the middle node is rejected

    Graph triangle(3, GraphKind::cpdag, {{0, 1, true}, {1, 2, true}, {2, 0, true}});
    exts = enumerate_extensions(triangle, NodeSet::full(3));
    CHECK(exts.size() == 6);  // all acyclic triangle orientations

    CHECK_THROWS_AS(enumerate_extensions(undirected_chain_cpdag(9), NodeSet::full(9)),
                    CapExceeded);
    CHECK(enumerate_extensions(undirected_chain_cpdag(9), NodeSet::full(9), 9).size() == 9);
}

namespace {

// Direct reference for extension counts: try all orientations of the
// undirected edges, keep the acyclic ones without new v-structures.
std::int64_t count_orientations_bruteforce(const Graph& g, const NodeSet& comp) {
    std::vector<std::pair<int, int>> edges;
    std::vector<int> members = comp.to_vector();
    for (size_t a = 0; a < members.size(); ++a)
        for (size_t b = a + 1; b < members.size(); ++b)
            if (g.has_undirected_edge(members[a], members[b]))
                edges.push_back({members[a], members[b]});
    std::int64_t count = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << edges.size()); ++mask) {
        BitMatrix adj = g.adjacency();
        for (size_t e = 0; e < edges.size(); ++e) {
            auto [a, b] = edges[e];
            if ((mask >> e) & 1)
                adj.reset(b, a);
            else
                adj.reset(a, b);
        }
        Graph candidate = trusted_graph(g.node_count(), GraphKind::pdag, adj);
        try {
            Graph::from_adjacency(GraphKind::pdag, adj);
        } catch (const ValidationError&) {
            continue;  // directed cycle
        }
        // no new v-structure anywhere
        bool clean = true;
        int p = g.node_count();
        for (int c = 0; c < p && clean; ++c)
            for (int x = 0; x < p && clean; ++x) {
                if (!candidate.has_directed_edge(x, c)) continue;
                for (int y = x + 1; y < p && clean; ++y) {
                    if (!candidate.has_directed_edge(y, c) || g.adjacent(x, y)) continue;
                    bool was = g.has_directed_edge(x, c) && g.has_directed_edge(y, c);
                    if (!was) clean = false;
                }
            }
        if (clean) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("extension counts match brute-force orientation enumeration up to size 5") {
    // undirected path, star, cycle-with-chord and complete graph on 5 nodes
    std::vector<Graph> cases;
    cases.push_back(undirected_chain_cpdag(5));
    cases.push_back(Graph(5, GraphKind::cpdag,
                          {{0, 1, true}, {0, 2, true}, {0, 3, true}, {0, 4, true}}));
    {
        std::vector<Edge> complete;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) complete.push_back({i, j, true});
        cases.push_back(Graph(5, GraphKind::cpdag, complete));
    }
    for (const Graph& g : cases) {
        NodeSet comp = NodeSet::full(5);
        auto exts = enumerate_extensions(g, comp, 8);
        CHECK(static_cast<std::int64_t>(exts.size()) == count_orientations_bruteforce(g, comp));
    }
    // complete graph on 5 nodes: every topological order, once each
    CHECK(enumerate_extensions(cases.back(), NodeSet::full(5), 8).size() == 120);
}

TEST_CASE("every enumerated extension is a consistent extension of its component") {
    for (int p = 2; p <= 4; ++p) {
        for (const MarkovClass& cls : markov_classes(p)) {
            for (const NodeSet& comp : chain_components(cls.cpdag)) {
                if (comp.count() < 2) continue;
                auto exts = enumerate_extensions(cls.cpdag, comp, 8);
                CHECK(!exts.empty());
                std::set<std::vector<std::uint64_t>> distinct;
                Graph comp_cpdag = induced_subgraph(cls.cpdag, comp, GraphKind::cpdag);
                for (const Graph& ext : exts) {
                    std::vector<std::uint64_t> fingerprint;
                    for (int i = 0; i < p; ++i)
                        for (int j = 0; j < p; ++j) fingerprint.push_back(ext.arc(i, j));
                    distinct.insert(fingerprint);
                    // oriented exactly the component's undirected edges
                    comp.for_each([&](int i) {
                        comp.for_each([&](int j) {
                            if (cls.cpdag.has_undirected_edge(i, j))
                                CHECK(ext.has_directed_edge(i, j) != ext.has_directed_edge(j, i));
                        });
                    });
                    // and restricted to the component it is a consistent
                    // extension of the component's own class
                    Graph comp_dag = induced_subgraph(ext, comp, GraphKind::dag);
                    CHECK(is_consistent_extension(comp_cpdag, comp_dag));
                }
                CHECK(distinct.size() == exts.size());
            }
        }
    }
}

TEST_CASE("full-graph extensions enumerate the whole Markov class") {
    // When the CPDAG has a single nontrivial component plus singletons,
    // local extension of that component must recover every class member.
    for (int p = 2; p <= 4; ++p) {
        for (const MarkovClass& cls : markov_classes(p)) {
            auto comps = chain_components(cls.cpdag);
            int nontrivial = 0;
            for (const NodeSet& c : comps)
                if (c.count() >= 2) ++nontrivial;
            if (nontrivial != 1) continue;
            for (const NodeSet& c : comps) {
                if (c.count() < 2) continue;
                auto exts = enumerate_extensions(cls.cpdag, c, 8);
                CHECK(exts.size() == cls.members.size());
                for (const Graph& ext : exts) {
                    Graph as_dag = Graph::from_adjacency(GraphKind::dag, ext.adjacency());
                    CHECK(std::count(cls.members.begin(), cls.members.end(), as_dag) == 1);
                    CHECK(is_consistent_extension(cls.cpdag, as_dag));
                }
            }
        }
    }
}

TEST_CASE("consistent-extension predicate golden cases") {
    Graph c(2, GraphKind::cpdag, {{0, 1, true}});
    CHECK(is_consistent_extension(c, Graph(2, GraphKind::dag, {{0, 1}})));
    CHECK(is_consistent_extension(c, Graph(2, GraphKind::dag, {{1, 0}})));

    Graph directed(3, GraphKind::cpdag, {{0, 2}, {1, 2}});
    CHECK(is_consistent_extension(directed, Graph(3, GraphKind::dag, {{0, 2}, {1, 2}})));
    CHECK(!is_consistent_extension(directed, Graph(3, GraphKind::dag, {{2, 0}, {1, 2}})));
    CHECK(!is_consistent_extension(directed, Graph(3, GraphKind::dag, {{0, 2}})));
}

TEST_CASE("completed patterns match orientation intersection over the class") {
    for (int p = 2; p <= 4; ++p) {
        for (const MarkovClass& cls : markov_classes(p)) {
            for (const Graph& member : cls.members) {
                Graph completed = completed_pdag_of(member);
                CHECK(completed.adjacency() == cls.cpdag.adjacency());
                CHECK(is_consistent_extension(completed, member));
            }
        }
    }
}

TEST_CASE("consistent_extension_of produces a class member") {
    for (int p = 2; p <= 4; ++p) {
        for (const MarkovClass& cls : markov_classes(p)) {
            Graph ext = consistent_extension_of(cls.cpdag);
            CHECK(std::count(cls.members.begin(), cls.members.end(), ext) == 1);
        }
    }
    // and for a larger chordal component than the enumeration cap
    Graph big = undirected_chain_cpdag(20);
    Graph ext = consistent_extension_of(big);
    CHECK(completed_pdag_of(ext).adjacency() == big.adjacency());
}

TEST_CASE("cpdag validation accepts completed patterns and rejects others") {
    SplitMix64 rng(17);
    for (int rep = 0; rep < 30; ++rep) {
        GenConfig cfg{3 + static_cast<int>(rng.below(5)), Regime::custom, 0.4, rng.next()};
        Graph dag = random_dag(cfg);
        Graph cp = completed_pdag_of(dag);
        CHECK(check_cpdag(cp).ok);
    }

    // non-chordal component
    Graph square(4, GraphKind::pdag,
                 {{0, 1, true}, {1, 2, true}, {2, 3, true}, {3, 0, true}});
    CpdagCheck check = check_cpdag(square);
    CHECK(!check.ok);
    CHECK(check.reason.find("chordal") != std::string::npos);
    CHECK_THROWS_AS(Graph(4, GraphKind::cpdag,
                          {{0, 1, true}, {1, 2, true}, {2, 3, true}, {3, 0, true}}),
                    ValidationError);

    // a triangle with one directed edge cannot be completed
    Graph almost(3, GraphKind::pdag, {{0, 1, true}, {1, 2, true}, {0, 2}});
    CHECK(!check_cpdag(almost).ok);

    // 0 -> 1 - 2 with 0, 2 non-adjacent: the first Meek rule still has an
    // orientation to add, so the pattern is not completed
    Graph pending(3, GraphKind::pdag, {{0, 1}, {1, 2, true}});
    CHECK(!check_cpdag(pending).ok);
    // the undirected path is the genuine CPDAG of the chain class
    CHECK(check_cpdag(Graph(3, GraphKind::pdag, {{0, 2, true}, {1, 2, true}})).ok);
}
