#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sidkit/graph.hpp"

namespace sidkit {

enum class PairVerdict : unsigned char {
    self,      // diagonal
    correct,   // intervention distribution correctly inferred
    incorrect, // falsely inferred; counts toward the total
    excluded,  // not identifiable (equivalence-class comparisons only)
};

char verdict_char(PairVerdict v);

struct SidReport {
    int node_count = 0;
    std::int64_t total = 0;                // == number of incorrect verdicts
    std::vector<PairVerdict> verdicts;     // p*p, row-major (source, target)
    std::vector<int> source_order;         // deterministic iteration order

    PairVerdict at(int i, int j) const { return verdicts[static_cast<size_t>(i) * node_count + j]; }
    std::int64_t excluded_count() const;
};

// Extension point for how an estimate turns into adjustment sets. Only
// parent adjustment ships; alternative strategies (minimal sets, ...)
// would slot in here.
enum class AdjustmentStrategy { parent_adjustment };

struct SidOptions {
    // Skip rows whose parent sets coincide in both graphs. Disabling is
    // for tests only; the result must be identical either way.
    bool row_shortcut = true;
    AdjustmentStrategy strategy = AdjustmentStrategy::parent_adjustment;
    int threads = -1;  // -1: SIDKIT_THREADS / hardware
};

// Number of node pairs {i,j} whose edge type (none, i->j, i<-j,
// undirected) differs. Symmetric; accepts DAGs and PDAGs.
std::int64_t shd(const Graph& g, const Graph& h);

// Structural intervention distance from truth g to estimate h, both DAGs:
// pair (i,j) is incorrect iff [j in PA_h(i) and j in DE_g(i)] or
// [j not in PA_h(i) and PA_h(i) fails the star condition for (g,i,j)].
SidReport sid(const Graph& g, const Graph& h, const SidOptions& options = {});

// Exact half-integral count: (sid(g,h) + sid(h,g)) / 2.
struct HalfCount {
    std::int64_t twice = 0;

    double value() const { return static_cast<double>(twice) / 2.0; }
    bool integral() const { return (twice & 1) == 0; }
    std::string str() const;
    bool operator==(const HalfCount&) const = default;
};

HalfCount sid_symmetric(const Graph& g, const Graph& h, const SidOptions& options = {});

// Absolute difference in skeleton sizes; undirected edges count once.
// Accepts mixed kinds.
std::int64_t dne(const Graph& g, const Graph& h);

}  // namespace sidkit
