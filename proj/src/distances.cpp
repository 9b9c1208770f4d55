#include "sidkit/distances.hpp"

#include <stdexcept>

#include "sidkit/adjustment.hpp"
#include "sidkit/parallel.hpp"

namespace sidkit {

char verdict_char(PairVerdict v) {
    switch (v) {
        case PairVerdict::self: return 's';
        case PairVerdict::correct: return 'c';
        case PairVerdict::incorrect: return 'f';
        case PairVerdict::excluded: return 'x';
    }
    return '?';
}

std::int64_t SidReport::excluded_count() const {
    std::int64_t n = 0;
    for (PairVerdict v : verdicts)
        if (v == PairVerdict::excluded) ++n;
    return n;
}

namespace {

void require_same_p(const Graph& g, const Graph& h, const char* what) {
    if (g.node_count() != h.node_count())
        throw std::invalid_argument(std::string(what) + ": node counts differ (" +
                                    std::to_string(g.node_count()) + " vs " +
                                    std::to_string(h.node_count()) + ")");
}

enum class EdgeType : unsigned char { none, forward, backward, undirected };

EdgeType edge_type(const Graph& g, int i, int j) {
    bool ij = g.arc(i, j), ji = g.arc(j, i);
    if (ij && ji) return EdgeType::undirected;
    if (ij) return EdgeType::forward;
    if (ji) return EdgeType::backward;
    return EdgeType::none;
}

}  // namespace

std::int64_t shd(const Graph& g, const Graph& h) {
    require_same_p(g, h, "shd");
    std::int64_t count = 0;
    for (int i = 0; i < g.node_count(); ++i)
        for (int j = i + 1; j < g.node_count(); ++j)
            if (edge_type(g, i, j) != edge_type(h, i, j)) ++count;
    return count;
}

std::int64_t dne(const Graph& g, const Graph& h) {
    require_same_p(g, h, "dne");
    std::int64_t a = g.edge_count(), b = h.edge_count();
    return a > b ? a - b : b - a;
}

SidReport sid(const Graph& g, const Graph& h, const SidOptions& options) {
    require_same_p(g, h, "sid");
    if (g.kind() != GraphKind::dag || h.kind() != GraphKind::dag)
        throw std::invalid_argument("sid requires two DAGs");
    if (options.strategy != AdjustmentStrategy::parent_adjustment)
        throw std::invalid_argument("only parent adjustment is implemented");
    int p = g.node_count();

    SidReport report;
    report.node_count = p;
    report.verdicts.assign(static_cast<size_t>(p) * p, PairVerdict::correct);
    report.source_order.resize(p);
    for (int i = 0; i < p; ++i) {
        report.source_order[i] = i;
        report.verdicts[static_cast<size_t>(i) * p + i] = PairVerdict::self;
    }

    BitMatrix closure = path_matrix(g);

    parallel_for(
        p,
        [&](int i) {
            NodeSet pa_h = h.parents(i);
            if (options.row_shortcut && pa_h == g.parents(i)) return;  // whole row correct
            StarContext ctx(g, closure, i, pa_h);
            auto* row = report.verdicts.data() + static_cast<size_t>(i) * p;
            for (int j = 0; j < p; ++j) {
                if (j == i) continue;
                bool wrong;
                if (pa_h.test(j)) {
                    // h predicts a null effect; wrong iff g has i ~> j.
                    wrong = closure.get(i, j);
                } else {
                    wrong = !ctx.verdict(j).satisfied;
                }
                if (wrong) row[j] = PairVerdict::incorrect;
            }
        },
        options.threads);

    for (PairVerdict v : report.verdicts)
        if (v == PairVerdict::incorrect) ++report.total;
    return report;
}

std::string HalfCount::str() const {
    std::string s = std::to_string(twice / 2);
    if (twice & 1) s += ".5";
    return s;
}

HalfCount sid_symmetric(const Graph& g, const Graph& h, const SidOptions& options) {
    return HalfCount{sid(g, h, options).total + sid(h, g, options).total};
}

}  // namespace sidkit
