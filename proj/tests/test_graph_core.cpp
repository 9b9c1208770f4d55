#include <string>

#include "doctest.h"
#include "sidkit/errors.hpp"
#include "sidkit/graph.hpp"
#include "sidkit/graph_io.hpp"
#include "sidkit/rng.hpp"
#include "sidkit/simbench.hpp"
#include "sidkit/structure.hpp"
#include "support.hpp"

using namespace sidkit;
using namespace sidkit::test;

TEST_CASE("adjacency parsing, smallest cases") {
    Graph g = parse_graph("0 1\n0 0", GraphFormat::adj_matrix, GraphKind::dag);
    CHECK(g.node_count() == 2);
    CHECK(g.has_directed_edge(0, 1));
    CHECK(g.edge_count() == 1);

    CHECK_THROWS_AS(parse_graph("0 1\n1 0", GraphFormat::adj_matrix, GraphKind::dag),
                    ValidationError);
    // the same text is a fine PDAG
    Graph u = parse_graph("0 1\n1 0", GraphFormat::adj_matrix, GraphKind::pdag);
    CHECK(u.has_undirected_edge(0, 1));
}

TEST_CASE("adjacency parsing, malformed input") {
    CHECK_THROWS_AS(parse_graph("", GraphFormat::adj_matrix, GraphKind::dag), ParseError);
    CHECK_THROWS_AS(parse_graph("0 1\n0", GraphFormat::adj_matrix, GraphKind::dag), ParseError);
    CHECK_THROWS_AS(parse_graph("0 2\n0 0", GraphFormat::adj_matrix, GraphKind::dag), ParseError);
    try {
        parse_graph("0 0\n0 x", GraphFormat::adj_matrix, GraphKind::dag);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(parse_graph("p=3\n0 1\n0 0", GraphFormat::adj_matrix, GraphKind::dag),
                    ParseError);
    // header accepted when consistent; commas allowed
    Graph g = parse_graph("p=2\n0,1\n0,0", GraphFormat::adj_matrix, GraphKind::dag);
    CHECK(g.has_directed_edge(0, 1));
}

TEST_CASE("self-loops and cycles are named in errors") {
    CHECK_THROWS_WITH_AS(parse_graph("1 0\n0 0", GraphFormat::adj_matrix, GraphKind::dag),
                         doctest::Contains("self-loop"), ValidationError);
    try {
        parse_graph("0 1 0\n0 0 1\n1 0 0", GraphFormat::adj_matrix, GraphKind::dag);
        CHECK(false);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("cycle") != std::string::npos);
        CHECK(std::string(e.what()).find("0") != std::string::npos);
    }
}

TEST_CASE("edge-list parsing") {
    Graph g = parse_graph("a -> b\nb -- c\nnode d\n", GraphFormat::edge_list, GraphKind::pdag);
    CHECK(g.node_count() == 4);
    CHECK(g.has_directed_edge(0, 1));
    CHECK(g.has_undirected_edge(1, 2));
    CHECK(g.undirected_neighbors(3).empty());
    CHECK_THROWS_AS(parse_graph("a => b", GraphFormat::edge_list, GraphKind::dag), ParseError);
    CHECK_THROWS_AS(parse_graph("", GraphFormat::edge_list, GraphKind::dag), ParseError);
}

TEST_CASE("format detection") {
    CHECK(detect_format("0 1\n0 0\n") == GraphFormat::adj_matrix);
    CHECK(detect_format("a -> b\n") == GraphFormat::edge_list);
    CHECK(detect_format("node a\n") == GraphFormat::edge_list);
}

TEST_CASE("example-1 true graph round-trips bit-exactly") {
    Graph g = example1_g();
    std::string text = serialize_graph(g);
    CHECK(text ==
          "0 1 1 1 1\n"
          "0 0 1 1 1\n"
          "0 0 0 0 0\n"
          "0 0 0 0 0\n"
          "0 0 0 0 0\n");
    CHECK(parse_graph(text, GraphFormat::adj_matrix, GraphKind::dag) == g);
    CHECK(g.edge_count() == 7);
}

TEST_CASE("round-trips for random graphs, both formats and all kinds") {
    SplitMix64 rng(20240701);
    for (int rep = 0; rep < 60; ++rep) {
        int p = 2 + static_cast<int>(rng.below(7));
        GenConfig cfg{p, Regime::custom, 0.4, rng.next()};
        Graph dag = random_dag(cfg);
        for (GraphFormat fmt : {GraphFormat::adj_matrix, GraphFormat::edge_list}) {
            CHECK(parse_graph(serialize_graph(dag, fmt), fmt, GraphKind::dag) == dag);
            Graph cp = completed_pdag_of(dag);
            CHECK(parse_graph(serialize_graph(cp, fmt), fmt, GraphKind::cpdag) == cp);
        }
    }
}

TEST_CASE("relatives on the example-1 graph") {
    Graph g = example1_g();
    CHECK(g.descendants(0) == set_of(5, {1, 2, 3, 4}));
    CHECK(relatives(g, 0, Relation::descendants) == set_of(5, {1, 2, 3, 4}));
    CHECK(g.parents(2) == set_of(5, {0, 1}));
    CHECK(g.children(1) == set_of(5, {2, 3, 4}));
    CHECK(g.ancestors(2) == set_of(5, {0, 1}));
    CHECK(g.non_descendants(0).empty());
    CHECK(g.non_descendants(3) == set_of(5, {0, 1, 2, 4}));
    // sinks have no descendants
    CHECK(g.descendants(4).empty());
}

TEST_CASE("relatives on a chain") {
    Graph g = chain_dag(3);
    CHECK(g.ancestors(2) == set_of(3, {0, 1}));
    CHECK(g.descendants(2).empty());
    CHECK(g.non_descendants(1) == set_of(3, {0}));
}

TEST_CASE("directed-path relatives require a DAG") {
    Graph pd(3, GraphKind::pdag, {{0, 1, true}, {1, 2}});
    CHECK_THROWS_AS(pd.descendants(0), std::invalid_argument);
    CHECK_THROWS_AS(relatives(pd, 0, Relation::ancestors), std::invalid_argument);
    // raw parents/children stay available on PDAGs; an undirected edge
    // contributes to both sides
    CHECK(pd.parents(1) == set_of(3, {0}));
    CHECK(pd.children(1) == set_of(3, {0, 2}));
    CHECK(pd.strict_children(1) == set_of(3, {2}));
    CHECK(pd.undirected_neighbors(1) == set_of(3, {0}));
}

TEST_CASE("windows line endings parse identically") {
    Graph unix_g = parse_graph("0 1\n0 0\n", GraphFormat::adj_matrix, GraphKind::dag);
    Graph dos_g = parse_graph("0 1\r\n0 0\r\n", GraphFormat::adj_matrix, GraphKind::dag);
    CHECK(unix_g == dos_g);
    Graph edges = parse_graph("a -> b\r\nnode c\r\n", GraphFormat::edge_list, GraphKind::dag);
    CHECK(edges.node_count() == 3);
}

TEST_CASE("path matrix golden values") {
    Graph chain = chain_dag(3);
    BitMatrix closure = path_matrix(chain);
    CHECK(closure.get(0, 2));
    CHECK(!closure.get(2, 0));
    for (int i = 0; i < 3; ++i) CHECK(closure.get(i, i));

    Graph empty(4, GraphKind::dag, {});
    BitMatrix id = path_matrix(empty);
    CHECK(id.count() == 4);

    Graph g = example1_g();
    BitMatrix c1 = path_matrix(g);
    for (int j = 0; j < 5; ++j) CHECK(c1.get(0, j));  // row X1 all ones
    for (int j = 0; j < 5; ++j) CHECK(c1.get(3, j) == (j == 3));
}

TEST_CASE("path matrix is a fixed point of squaring and matches DFS") {
    SplitMix64 rng(7);
    for (int rep = 0; rep < 40; ++rep) {
        int p = 2 + static_cast<int>(rng.below(9));
        GenConfig cfg{p, Regime::custom, 0.35, rng.next()};
        Graph g = random_dag(cfg);
        BitMatrix closure = path_matrix(g);
        BitMatrix squared = closure;
        squared.square_inplace();
        CHECK(squared == closure);
        for (int i = 0; i < p; ++i) {
            NodeSet below = g.descendants(i);
            below.set(i);
            CHECK(closure.row_as_set(i) == below);
        }
    }
}

TEST_CASE("node sets: complement and subset helpers") {
    NodeSet s = set_of(70, {0, 64, 69});
    CHECK(s.count() == 3);
    CHECK(s.complement().count() == 67);
    CHECK(NodeSet::full(70).contains_all(s));
    CHECK(!s.intersects(set_of(70, {1, 2})));
    CHECK(s.str() == "{0, 64, 69}");
}
