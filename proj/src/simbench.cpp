#include "sidkit/simbench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sidkit/distances.hpp"
#include "sidkit/parallel.hpp"
#include "sidkit/rng.hpp"

namespace sidkit {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::sparse: return "sparse";
        case Regime::dense: return "dense";
        case Regime::custom: return "custom";
    }
    return "?";
}

double GenConfig::edge_probability() const {
    switch (regime) {
        case Regime::sparse: return 1.5 / static_cast<double>(p - 1);
        case Regime::dense: return 0.3;
        case Regime::custom: return p_connect;
    }
    return 0.0;
}

void GenConfig::validate() const {
    if (p < 2) throw std::invalid_argument("GenConfig: p must be at least 2");
    double q = edge_probability();
    if (!(q > 0.0 && q <= 1.0))
        throw std::invalid_argument("GenConfig: edge probability must lie in (0, 1]");
}

Graph random_dag(const GenConfig& cfg) {
    cfg.validate();
    SplitMix64 rng(cfg.seed);
    int p = cfg.p;
    std::vector<int> order(p);
    std::iota(order.begin(), order.end(), 0);
    for (int i = p - 1; i > 0; --i)
        std::swap(order[i], order[static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1))]);
    double q = cfg.edge_probability();
    std::vector<Edge> edges;
    for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b)
            if (rng.bernoulli(q)) edges.push_back({order[a], order[b], false});
    return Graph(p, GraphKind::dag, edges);
}

LinearSem random_sem(const Graph& g, std::uint64_t seed) {
    if (g.kind() != GraphKind::dag) throw std::invalid_argument("random_sem requires a DAG");
    SplitMix64 rng(seed);
    int p = g.node_count();
    Matrix b(p);
    // Iterate pairs in a fixed order so the draw sequence is reproducible.
    for (int child = 0; child < p; ++child)
        for (int parent = 0; parent < p; ++parent) {
            if (!g.arc(parent, child)) continue;
            double magnitude = 0.1 + 0.9 * rng.uniform01();
            double sign = (rng.next() & 1) ? 1.0 : -1.0;
            b.at(child, parent) = sign * magnitude;
        }
    return LinearSem(g, std::move(b), std::vector<double>(static_cast<size_t>(p), 1.0));
}

namespace {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t pair, std::uint64_t role) {
    std::uint64_t s = mix64(master + 0x9E3779B97F4A7C15ULL * (pair + 1));
    return mix64(s + 0x9E3779B97F4A7C15ULL * (role + 1));
}

std::int64_t median_ns(std::vector<std::int64_t> samples) {
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
    if (spec.node_counts.empty())
        throw std::invalid_argument("run_experiment: at least one node count required");
    if (spec.pairs < 0) throw std::invalid_argument("run_experiment: negative pair count");
    std::int64_t total = static_cast<std::int64_t>(spec.node_counts.size()) * spec.pairs;
    std::vector<ExperimentRow> rows(static_cast<size_t>(total));

    parallel_for(
        static_cast<int>(total),
        [&](int idx) {
            int p = spec.node_counts[static_cast<size_t>(idx / spec.pairs)];
            GenConfig cfg{p, spec.regime, spec.p_connect, 0};

            cfg.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(idx), 0);
            Graph g = random_dag(cfg);
            cfg.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(idx), 1);
            Graph h = random_dag(cfg);

            ExperimentRow row;
            row.pair_id = idx;
            row.p = p;
            row.regime = spec.regime;
            SidOptions sid_options;
            sid_options.threads = 1;  // pairs already run concurrently

            switch (spec.kind) {
                case ExperimentKind::sid_vs_shd:
                    row.shd = shd(g, h);
                    row.sid = sid(g, h, sid_options).total;
                    break;
                case ExperimentKind::sid_vs_effects: {
                    row.shd = shd(g, h);
                    row.sid = sid(g, h, sid_options).total;
                    LinearSem sem =
                        random_sem(g, derive_seed(spec.seed, static_cast<std::uint64_t>(idx), 2));
                    row.effect_mismatches = count_effect_mismatches(sem, g, h, spec.tol);
                    break;
                }
                case ExperimentKind::scaling: {
                    std::vector<std::int64_t> samples;
                    std::int64_t sid_total = 0;
                    int reps = std::max(1, spec.timing_reps);
                    for (int r = 0; r < reps; ++r) {
                        auto t0 = std::chrono::steady_clock::now();
                        sid_total = sid(g, h, sid_options).total;
                        auto t1 = std::chrono::steady_clock::now();
                        samples.push_back(
                            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
                    }
                    row.sid = sid_total;
                    row.wall_time_ns = median_ns(std::move(samples));
                    break;
                }
            }
            rows[static_cast<size_t>(idx)] = std::move(row);
        },
        spec.threads);
    // pair_id equals the index, so rows are already sorted.
    return rows;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
    std::ostringstream out;
    out << "pair_id,p,regime,shd,sid,effect_mismatches,sid_lower,sid_upper,wall_time_ns\n";
    auto cell = [&](const std::optional<std::int64_t>& v) -> std::string {
        return v.has_value() ? std::to_string(*v) : std::string();
    };
    for (const ExperimentRow& r : rows) {
        out << r.pair_id << ',' << r.p << ',' << to_string(r.regime) << ',' << cell(r.shd) << ','
            << cell(r.sid) << ',' << cell(r.effect_mismatches) << ',' << cell(r.sid_lower) << ','
            << cell(r.sid_upper) << ',' << cell(r.wall_time_ns) << '\n';
    }
    return out.str();
}

}  // namespace sidkit
