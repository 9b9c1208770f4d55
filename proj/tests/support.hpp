#pragma once

#include <initializer_list>
#include <vector>

#include "sidkit/graph.hpp"
#include "sidkit/node_set.hpp"

namespace sidkit::test {

// Five-node pair of estimates around one true graph: X1=0, X2=1, Y1=2,
// Y2=3, Y3=4. g: X1->X2 and both X1, X2 into every Y. h1 adds Y1->Y2;
// h2 reverses X1->X2.
Graph example1_g();
Graph example1_h1();
Graph example1_h2();

// Adjustment-set showcase graph: X=0, Y=1, Q=2, P=3, A=4, B=5, W=6.
// Edges Q->X, P->X, P->Y, X->A, X->B, B->W, B->Y.
inline constexpr int kX = 0, kY = 1, kQ = 2, kP = 3, kA = 4, kB = 5, kW = 6;
Graph adjustment_figure();

// The Example-1 family generalized to m target nodes (p = m + 2):
// X1->X2, X1->Yk, X2->Yk. Reversing X1->X2 attains SID = 2(p-1) at SHD 1.
Graph wide_fork_truth(int targets);
Graph wide_fork_reversed(int targets);

Graph chain_dag(int p);
Graph undirected_chain_cpdag(int p);

NodeSet set_of(int universe, std::initializer_list<int> xs);

// Every DAG over p labeled nodes (all 3^(p(p-1)/2) pair assignments,
// acyclic ones kept). 25 graphs at p = 3, 543 at p = 4.
std::vector<Graph> all_dags(int p);

// Markov equivalence classes of all_dags(p); the class CPDAG is built by
// intersecting member orientations (an edge stays directed only when all
// members orient it the same way).
struct MarkovClass {
    Graph cpdag;
    std::vector<Graph> members;
};
std::vector<MarkovClass> markov_classes(int p);

// Induced subgraph on `nodes`, relabeled 0..|nodes|-1 in ascending order.
Graph induced_subgraph(const Graph& g, const NodeSet& nodes, GraphKind kind);

}  // namespace sidkit::test
