#include "sidkit/cpdag_sid.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "sidkit/adjustment.hpp"
#include "sidkit/errors.hpp"

namespace sidkit {

namespace {

void require_same_p(const Graph& a, const Graph& b, const char* what) {
    if (a.node_count() != b.node_count())
        throw std::invalid_argument(std::string(what) + ": node counts differ (" +
                                    std::to_string(a.node_count()) + " vs " +
                                    std::to_string(b.node_count()) + ")");
}

// Per-node counts I(truth, .)_i for a candidate parent set, memoized on
// (i, parent set): sibling extensions of a component often give a node the
// same parents.
class RowScorer {
public:
    RowScorer(const Graph& truth, const IdentifiabilityMask* mask)
        : g_(truth), closure_(path_matrix(truth)), mask_(mask) {}

    const BitMatrix& closure() const { return closure_; }

    std::int64_t count(int i, const NodeSet& z) {
        auto key = std::make_pair(i, z.words());
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        StarContext ctx(g_, closure_, i, z);
        int p = g_.node_count();
        std::int64_t n = 0;
        for (int j = 0; j < p; ++j) {
            if (j == i) continue;
            if (mask_ != nullptr && !mask_->at(i, j)) continue;
            bool wrong = z.test(j) ? closure_.get(i, j) : !ctx.verdict(j).satisfied;
            if (wrong) ++n;
        }
        memo_.emplace(std::move(key), n);
        return n;
    }

private:
    const Graph& g_;
    BitMatrix closure_;
    const IdentifiabilityMask* mask_;
    std::map<std::pair<int, std::vector<std::uint64_t>>, std::int64_t> memo_;
};

// Candidate parent sets of every node: directed parents joined with each
// subset of the undirected neighbors. Sums of per-node minima and maxima;
// not necessarily attained by a single class member.
SidBounds per_node_bounds(const Graph& truth, const Graph& estimate,
                          const IdentifiabilityMask* mask) {
    int p = truth.node_count();
    RowScorer scorer(truth, mask);
    SidBounds bounds;
    bounds.attained = false;
    for (int i = 0; i < p; ++i) {
        NodeSet base = estimate.strict_parents(i);
        std::vector<int> neighbors = estimate.undirected_neighbors(i).to_vector();
        std::int64_t lo = -1, hi = -1;
        for (std::uint64_t mask_bits = 0; mask_bits < (1ULL << neighbors.size()); ++mask_bits) {
            NodeSet z = base;
            for (size_t k = 0; k < neighbors.size(); ++k)
                if ((mask_bits >> k) & 1) z.set(neighbors[k]);
            std::int64_t n = scorer.count(i, z);
            if (lo < 0 || n < lo) lo = n;
            if (n > hi) hi = n;
        }
        bounds.lower += lo;
        bounds.upper += hi;
    }
    return bounds;
}

// Exact per-component bounds over local extensions of the estimate's
// chain components. Throws CapExceeded for oversized components.
SidBounds component_bounds(const Graph& truth, const Graph& estimate_class,
                           const IdentifiabilityMask* mask, int cap) {
    RowScorer scorer(truth, mask);
    SidBounds bounds;
    bounds.attained = true;
    for (const NodeSet& comp : chain_components(estimate_class)) {
        if (comp.count() < 2) {
            int i = comp.first();
            bounds.fixed += scorer.count(i, estimate_class.strict_parents(i));
            continue;
        }
        std::vector<Graph> extensions = enumerate_extensions(estimate_class, comp, cap);
        ComponentBounds cb;
        cb.component = comp;
        cb.extension_count = static_cast<std::int64_t>(extensions.size());
        std::int64_t lo = -1, hi = -1;
        for (const Graph& ext : extensions) {
            std::int64_t sum = 0;
            comp.for_each([&](int i) { sum += scorer.count(i, ext.strict_parents(i)); });
            if (lo < 0 || sum < lo) lo = sum;
            if (sum > hi) hi = sum;
        }
        cb.min_sum = lo;
        cb.max_sum = hi;
        bounds.per_component.push_back(std::move(cb));
    }
    std::int64_t mins = 0, maxs = 0;
    for (const ComponentBounds& cb : bounds.per_component) {
        mins += cb.min_sum;
        maxs += cb.max_sum;
    }
    bounds.lower = bounds.fixed + mins;
    bounds.upper = bounds.fixed + maxs;
    return bounds;
}

Graph as_cpdag_view(const Graph& g) {
    return trusted_graph(g.node_count(), GraphKind::cpdag, g.adjacency());
}

}  // namespace

IdentifiabilityMask identifiability_mask(const Graph& cpdag) {
    if (cpdag.kind() != GraphKind::cpdag)
        throw std::invalid_argument("identifiability_mask requires a CPDAG");
    int p = cpdag.node_count();
    IdentifiabilityMask mask;
    mask.node_count = p;
    mask.identifiable.assign(static_cast<size_t>(p) * p, true);
    for (int i = 0; i < p; ++i) mask.identifiable[static_cast<size_t>(i) * p + i] = false;

    for (int i = 0; i < p; ++i) {
        // Possibly-directed reachability seeded by undirected neighbors of
        // i; the first step is the mandatory undirected edge, later steps
        // follow undirected or forward-directed edges. i is never re-entered.
        NodeSet seen(p);
        std::vector<int> stack;
        for (int u = 0; u < p; ++u)
            if (cpdag.has_undirected_edge(i, u)) {
                seen.set(u);
                stack.push_back(u);
            }
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < p; ++w) {
                if (w == i || seen.test(w)) continue;
                if (cpdag.has_undirected_edge(v, w) || cpdag.has_directed_edge(v, w)) {
                    seen.set(w);
                    stack.push_back(w);
                }
            }
        }
        seen.for_each([&](int j) { mask.identifiable[static_cast<size_t>(i) * p + j] = false; });
    }
    return mask;
}

SidBounds sid_dag_cpdag(const Graph& truth, const Graph& estimate_cpdag, int cap) {
    require_same_p(truth, estimate_cpdag, "sid_dag_cpdag");
    if (truth.kind() != GraphKind::dag)
        throw std::invalid_argument("sid_dag_cpdag: truth must be a DAG");
    if (estimate_cpdag.kind() != GraphKind::cpdag)
        throw std::invalid_argument("sid_dag_cpdag: estimate must be a CPDAG");
    try {
        return component_bounds(truth, estimate_cpdag, nullptr, cap);
    } catch (const CapExceeded& e) {
        SidBounds bounds = per_node_bounds(truth, estimate_cpdag, nullptr);
        bounds.warnings.push_back(std::string("per-node fallback: ") + e.what());
        return bounds;
    }
}

SidReport sid_cpdag_dag(const Graph& truth_cpdag, const Graph& estimate_dag) {
    require_same_p(truth_cpdag, estimate_dag, "sid_cpdag_dag");
    if (truth_cpdag.kind() != GraphKind::cpdag)
        throw std::invalid_argument("sid_cpdag_dag: truth must be a CPDAG");
    if (estimate_dag.kind() != GraphKind::dag)
        throw std::invalid_argument("sid_cpdag_dag: estimate must be a DAG");
    int p = truth_cpdag.node_count();

    IdentifiabilityMask mask = identifiability_mask(truth_cpdag);
    // Identifiable verdicts agree across the class, so one extension serves
    // as the scoring truth.
    Graph g1 = consistent_extension_of(truth_cpdag);
    BitMatrix closure = path_matrix(g1);

    SidReport report;
    report.node_count = p;
    report.verdicts.assign(static_cast<size_t>(p) * p, PairVerdict::correct);
    report.source_order.resize(p);
    for (int i = 0; i < p; ++i) {
        report.source_order[i] = i;
        report.verdicts[static_cast<size_t>(i) * p + i] = PairVerdict::self;
    }

    for (int i = 0; i < p; ++i) {
        NodeSet pa_h = estimate_dag.parents(i);
        StarContext ctx(g1, closure, i, pa_h);
        auto* row = report.verdicts.data() + static_cast<size_t>(i) * p;
        for (int j = 0; j < p; ++j) {
            if (j == i) continue;
            if (!mask.at(i, j)) {
                row[j] = PairVerdict::excluded;
                continue;
            }
            bool wrong = pa_h.test(j) ? closure.get(i, j) : !ctx.verdict(j).satisfied;
            if (wrong) row[j] = PairVerdict::incorrect;
        }
    }
    for (PairVerdict v : report.verdicts)
        if (v == PairVerdict::incorrect) ++report.total;
    return report;
}

SidBounds sid_cpdag_cpdag(const Graph& truth_cpdag, const Graph& estimate_cpdag, int cap) {
    require_same_p(truth_cpdag, estimate_cpdag, "sid_cpdag_cpdag");
    if (truth_cpdag.kind() != GraphKind::cpdag || estimate_cpdag.kind() != GraphKind::cpdag)
        throw std::invalid_argument("sid_cpdag_cpdag requires two CPDAGs");
    IdentifiabilityMask mask = identifiability_mask(truth_cpdag);
    Graph g1 = consistent_extension_of(truth_cpdag);
    try {
        return component_bounds(g1, estimate_cpdag, &mask, cap);
    } catch (const CapExceeded& e) {
        SidBounds bounds = per_node_bounds(g1, estimate_cpdag, &mask);
        bounds.warnings.push_back(std::string("per-node fallback: ") + e.what());
        return bounds;
    }
}

SidBounds sid_dag_pdag_fallback(const Graph& truth, const Graph& estimate_pdag) {
    require_same_p(truth, estimate_pdag, "sid_dag_pdag_fallback");
    if (truth.kind() != GraphKind::dag)
        throw std::invalid_argument("sid_dag_pdag_fallback: truth must be a DAG");
    return per_node_bounds(truth, estimate_pdag, nullptr);
}

SidBounds sid_dag_class(const Graph& truth, const Graph& estimate, ClassPolicy policy, int cap) {
    require_same_p(truth, estimate, "sid");
    if (estimate.kind() == GraphKind::cpdag) return sid_dag_cpdag(truth, estimate, cap);
    CpdagCheck check = check_cpdag(estimate);
    if (check.ok) return sid_dag_cpdag(truth, as_cpdag_view(estimate), cap);
    if (policy == ClassPolicy::strict)
        throw ValidationError("estimate is not a valid CPDAG: " + check.reason);
    SidBounds bounds = sid_dag_pdag_fallback(truth, estimate);
    bounds.warnings.push_back("per-node fallback: " + check.reason);
    return bounds;
}

SidBounds sid_cpdag_class(const Graph& truth_cpdag, const Graph& estimate, ClassPolicy policy,
                          int cap) {
    require_same_p(truth_cpdag, estimate, "sid");
    if (truth_cpdag.kind() != GraphKind::cpdag)
        throw std::invalid_argument("sid_cpdag_class: truth must be a CPDAG");
    if (estimate.kind() == GraphKind::cpdag)
        return sid_cpdag_cpdag(truth_cpdag, estimate, cap);
    CpdagCheck check = check_cpdag(estimate);
    if (check.ok) return sid_cpdag_cpdag(truth_cpdag, as_cpdag_view(estimate), cap);
    if (policy == ClassPolicy::strict)
        throw ValidationError("estimate is not a valid CPDAG: " + check.reason);
    IdentifiabilityMask mask = identifiability_mask(truth_cpdag);
    SidBounds bounds = per_node_bounds(consistent_extension_of(truth_cpdag), estimate, &mask);
    bounds.warnings.push_back("per-node fallback: " + check.reason);
    return bounds;
}

}  // namespace sidkit
