#pragma once

#include <string>
#include <vector>

#include "sidkit/bit_matrix.hpp"
#include "sidkit/node_set.hpp"

namespace sidkit {

enum class GraphKind { dag, pdag, cpdag };

std::string to_string(GraphKind kind);

struct Edge {
    int from;
    int to;
    bool undirected = false;
};

// Immutable graph over integer node ids 0..p-1. The adjacency matrix entry
// (i,j) means an edge i->j; an undirected edge i-j is stored as the
// symmetric pair (i,j) and (j,i). Construction validates the declared
// kind's invariants and throws ValidationError naming offending nodes.
class Graph {
public:
    Graph(int node_count, GraphKind kind, const std::vector<Edge>& edges);

    static Graph from_adjacency(GraphKind kind, const BitMatrix& adjacency);

    int node_count() const { return p_; }
    GraphKind kind() const { return kind_; }
    const BitMatrix& adjacency() const { return adj_; }

    bool arc(int i, int j) const { return adj_.get(i, j); }
    bool adjacent(int i, int j) const { return adj_.get(i, j) || adj_.get(j, i); }
    bool has_directed_edge(int i, int j) const { return adj_.get(i, j) && !adj_.get(j, i); }
    bool has_undirected_edge(int i, int j) const { return adj_.get(i, j) && adj_.get(j, i); }

    // Skeleton size; an undirected edge counts once.
    int edge_count() const;

    // Raw adjacency relatives. For an undirected edge both endpoints show
    // up as parent and child of each other, matching the edge-set reading
    // of the adjacency matrix; use the strict accessors for PDAGs.
    NodeSet parents(int i) const;
    NodeSet children(int i) const;

    NodeSet strict_parents(int i) const;
    NodeSet strict_children(int i) const;
    NodeSet undirected_neighbors(int i) const;

    // Directed-path relatives; require kind == dag. descendants(i) and
    // ancestors(i) exclude i itself; non_descendants(i) excludes both
    // descendants and i.
    NodeSet descendants(int i) const;
    NodeSet ancestors(int i) const;
    NodeSet non_descendants(int i) const;

    bool operator==(const Graph& other) const {
        return p_ == other.p_ && kind_ == other.kind_ && adj_ == other.adj_;
    }

private:
    struct Trusted {};
    Graph(Trusted, int node_count, GraphKind kind, BitMatrix adjacency);

    friend Graph trusted_graph(int, GraphKind, BitMatrix);

    void validate() const;

    int p_;
    GraphKind kind_;
    BitMatrix adj_;
};

// Construction without invariant validation, for graphs that are correct
// by construction (completed patterns, enumerated extensions). Library
// internal; validated constructors are the public path.
Graph trusted_graph(int node_count, GraphKind kind, BitMatrix adjacency);

enum class Relation { parents, children, descendants, ancestors, non_descendants };

NodeSet relatives(const Graph& g, int i, Relation which);

// Reflexive-transitive closure of the strictly-directed part of g,
// computed by repeated boolean squaring of (Id + A). Entry (i,j) is 1 iff
// i = j or a directed path leads from i to j. Undirected edges do not
// participate.
BitMatrix path_matrix(const Graph& g);

// Strictly-directed adjacency entries only (undirected pairs masked out).
BitMatrix directed_part(const Graph& g);

}  // namespace sidkit
