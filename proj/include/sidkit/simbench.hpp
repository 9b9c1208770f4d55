#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sidkit/graph.hpp"
#include "sidkit/oracle.hpp"

namespace sidkit {

enum class Regime { sparse, dense, custom };

std::string to_string(Regime r);

struct GenConfig {
    int p = 0;
    Regime regime = Regime::sparse;
    double p_connect = 0.0;  // consulted only for Regime::custom
    std::uint64_t seed = 0;

    // sparse: 1.5/(p-1); dense: 0.3; custom: p_connect.
    double edge_probability() const;
    void validate() const;  // p >= 2, probability in (0, 1]
};

// Uniform node order, then each forward pair becomes an edge
// independently with the regime's probability. Deterministic in the seed.
Graph random_dag(const GenConfig& cfg);

// Edge coefficients uniform on [-1.0,-0.1] u [0.1,1.0], unit noise
// variances. Deterministic in the seed.
LinearSem random_sem(const Graph& g, std::uint64_t seed);

enum class ExperimentKind { sid_vs_shd, sid_vs_effects, scaling };

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::sid_vs_shd;
    Regime regime = Regime::sparse;
    double p_connect = 0.0;          // custom regime only
    std::vector<int> node_counts;    // one entry per p (scaling uses several)
    std::int64_t pairs = 0;          // pairs per node count
    std::uint64_t seed = 0;
    double tol = 1e-8;               // effect comparison threshold
    int timing_reps = 3;             // scaling: median over this many runs
    int threads = -1;
};

struct ExperimentRow {
    std::int64_t pair_id = 0;
    int p = 0;
    Regime regime = Regime::sparse;
    std::optional<std::int64_t> shd;
    std::optional<std::int64_t> sid;
    std::optional<std::int64_t> effect_mismatches;
    std::optional<std::int64_t> sid_lower;
    std::optional<std::int64_t> sid_upper;
    std::optional<std::int64_t> wall_time_ns;
};

// Rows come back sorted by pair id; all columns except wall_time_ns are
// functions of (spec, seed) alone, independent of the worker count.
std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);

// Stable column order:
// pair_id,p,regime,shd,sid,effect_mismatches,sid_lower,sid_upper,wall_time_ns
// with absent metrics left empty.
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

}  // namespace sidkit
