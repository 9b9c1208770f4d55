#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sidkit/distances.hpp"
#include "sidkit/graph.hpp"
#include "sidkit/structure.hpp"

namespace sidkit {

struct ComponentBounds {
    NodeSet component;
    std::int64_t min_sum = 0;
    std::int64_t max_sum = 0;
    std::int64_t extension_count = 0;
};

struct SidBounds {
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    std::int64_t fixed = 0;  // contribution of nodes with fully determined parent sets
    std::vector<ComponentBounds> per_component;
    // true: both bounds are met by a single member of the represented
    // class ("attained bounds"); false: per-node bounds from the subset
    // fallback, not necessarily jointly attainable.
    bool attained = true;
    std::vector<std::string> warnings;
};

struct IdentifiabilityMask {
    int node_count = 0;
    std::vector<bool> identifiable;  // p*p row-major, diagonal false

    bool at(int i, int j) const { return identifiable[static_cast<size_t>(i) * node_count + j]; }
};

// Entry (i,j) is false iff a possibly-directed path from i to j starts
// with an undirected edge; such intervention distributions differ between
// members of the class. Requires kind == cpdag.
IdentifiabilityMask identifiability_mask(const Graph& cpdag);

// SID bounds between a true DAG and an estimated Markov equivalence
// class: each chain component is extended locally to all DAGs, per-node
// counts are summed per extension, and per-component minima/maxima plus
// the fixed-node contribution give lower and upper bounds. Components
// larger than `cap` nodes switch the whole computation to the per-node
// fallback (with a warning).
SidBounds sid_dag_cpdag(const Graph& truth, const Graph& estimate_cpdag,
                        int cap = kDefaultExtensionCap);

// SID between a true equivalence class and an estimated DAG: pairs not
// identifiable in the class are excluded; identifiable pairs are scored
// against one consistent extension (the verdict is extension-invariant).
SidReport sid_cpdag_dag(const Graph& truth_cpdag, const Graph& estimate_dag);

// Class-vs-class bounds: minimum and maximum of the identifiable-pair
// count over the estimated class, decomposed per chain component.
SidBounds sid_cpdag_cpdag(const Graph& truth_cpdag, const Graph& estimate_cpdag,
                          int cap = kDefaultExtensionCap);

// Per-node bounds for an estimate that is not a completed PDAG (or has an
// oversized component): candidate parent sets of node i are its directed
// parents joined with each subset of its undirected neighbors; bounds sum
// per-node minima/maxima and need not be jointly attained.
SidBounds sid_dag_pdag_fallback(const Graph& truth, const Graph& estimate_pdag);

enum class ClassPolicy { auto_fallback, strict };

// CLI-facing dispatcher: validates the estimate as a CPDAG and either
// routes to the exact per-component bounds or (policy permitting) to the
// per-node fallback with a warning.
SidBounds sid_dag_class(const Graph& truth, const Graph& estimate, ClassPolicy policy,
                        int cap = kDefaultExtensionCap);

// Same dispatch with a class as truth: identifiable pairs only, scored
// against one consistent extension of the truth class.
SidBounds sid_cpdag_class(const Graph& truth_cpdag, const Graph& estimate, ClassPolicy policy,
                          int cap = kDefaultExtensionCap);

}  // namespace sidkit
