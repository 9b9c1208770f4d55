#include "sidkit/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sidkit/errors.hpp"

namespace sidkit {

namespace {

void check_caps(const Graph& g) {
    if (g.node_count() > kOracleNodeCap)
        throw CapExceeded("oracle refuses graphs with more than " +
                          std::to_string(kOracleNodeCap) + " nodes (got " +
                          std::to_string(g.node_count()) + ")");
}

void collect_paths(const Graph& g, int current, int target, std::vector<int>& path,
                   NodeSet& visited, std::vector<std::vector<int>>& out) {
    if (current == target) {
        out.push_back(path);
        if (static_cast<std::int64_t>(out.size()) > kOraclePathCap)
            throw CapExceeded("oracle path enumeration exceeded " +
                              std::to_string(kOraclePathCap) + " paths");
        return;
    }
    for (int next = 0; next < g.node_count(); ++next) {
        if (visited.test(next) || !g.adjacent(current, next)) continue;
        visited.set(next);
        path.push_back(next);
        collect_paths(g, next, target, path, visited, out);
        path.pop_back();
        visited.reset(next);
    }
}

}  // namespace

std::vector<std::vector<int>> simple_paths(const Graph& g, int i, int j) {
    check_caps(g);
    std::vector<std::vector<int>> out;
    std::vector<int> path{i};
    NodeSet visited(g.node_count());
    visited.set(i);
    collect_paths(g, i, j, path, visited, out);
    return out;
}

bool path_blocked(const Graph& g, const std::vector<int>& path, const NodeSet& s) {
    for (size_t k = 1; k + 1 < path.size(); ++k) {
        int prev = path[k - 1], cur = path[k], next = path[k + 1];
        bool collider = g.arc(prev, cur) && g.arc(next, cur);
        if (collider) {
            // Open only when cur or one of its descendants is in s.
            NodeSet below = g.descendants(cur);
            below.set(cur);
            if (!below.intersects(s)) return true;
        } else if (s.test(cur)) {
            return true;
        }
    }
    return false;
}

bool path_directed_from_source(const Graph& g, const std::vector<int>& path) {
    for (size_t k = 0; k + 1 < path.size(); ++k)
        if (!g.has_directed_edge(path[k], path[k + 1])) return false;
    return true;
}

bool satisfies_star_bruteforce(const Graph& g, int i, int j, const NodeSet& z) {
    if (g.kind() != GraphKind::dag)
        throw std::invalid_argument("satisfies_star_bruteforce requires a DAG");
    if (i == j || z.test(i) || z.test(j))
        throw std::invalid_argument("satisfies_star_bruteforce: bad (i, j, z)");
    check_caps(g);

    NodeSet causal(g.node_count());
    for (const std::vector<int>& path : simple_paths(g, i, j)) {
        if (path_directed_from_source(g, path)) {
            for (size_t k = 1; k < path.size(); ++k) causal.set(path[k]);
        } else if (!path_blocked(g, path, z)) {
            return false;  // part 2
        }
    }
    NodeSet forbidden(g.node_count());
    causal.for_each([&](int w) {
        forbidden |= g.descendants(w);
        forbidden.set(w);
    });
    return !forbidden.intersects(z);  // part 1
}

std::int64_t sid_bruteforce(const Graph& g, const Graph& h) {
    if (g.node_count() != h.node_count())
        throw std::invalid_argument("sid_bruteforce: node counts differ");
    if (g.kind() != GraphKind::dag || h.kind() != GraphKind::dag)
        throw std::invalid_argument("sid_bruteforce requires two DAGs");
    check_caps(g);
    int p = g.node_count();
    std::int64_t total = 0;
    for (int i = 0; i < p; ++i) {
        NodeSet pa_h = h.parents(i);
        NodeSet below = g.descendants(i);
        for (int j = 0; j < p; ++j) {
            if (j == i) continue;
            bool wrong = pa_h.test(j) ? below.test(j)
                                      : !satisfies_star_bruteforce(g, i, j, pa_h);
            if (wrong) ++total;
        }
    }
    return total;
}

LinearSem::LinearSem(Graph g, Matrix b, std::vector<double> noise)
    : graph(std::move(g)), coefficients(std::move(b)), noise_var(std::move(noise)) {
    int p = graph.node_count();
    if (graph.kind() != GraphKind::dag)
        throw std::invalid_argument("LinearSem requires a DAG");
    if (coefficients.n != p || static_cast<int>(noise_var.size()) != p)
        throw std::invalid_argument("LinearSem: dimension mismatch");
    for (double v : noise_var)
        if (!(v > 0.0)) throw std::invalid_argument("LinearSem: noise variances must be positive");
    for (int child = 0; child < p; ++child)
        for (int parent = 0; parent < p; ++parent) {
            bool edge = graph.arc(parent, child);
            bool nonzero = coefficients.at(child, parent) != 0.0;
            if (edge != nonzero)
                throw std::invalid_argument(
                    "LinearSem: coefficient support must match the graph's edges (node " +
                    std::to_string(parent) + " -> " + std::to_string(child) + ")");
        }
}

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd e(m.n, m.n);
    for (int r = 0; r < m.n; ++r)
        for (int c = 0; c < m.n; ++c) e(r, c) = m.at(r, c);
    return e;
}

}  // namespace

Matrix sem_covariance(const LinearSem& sem) {
    int p = sem.node_count();
    Eigen::MatrixXd ib = Eigen::MatrixXd::Identity(p, p) - to_eigen(sem.coefficients);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(ib);
    // (I - B) is a permuted triangular matrix with unit diagonal for any
    // DAG-supported B, hence invertible.
    Eigen::MatrixXd a = lu.solve(Eigen::MatrixXd::Identity(p, p));
    if (!a.allFinite()) throw NumericError("sem_covariance: (I - B) solve failed");
    Eigen::VectorXd d(p);
    for (int k = 0; k < p; ++k) d(k) = sem.noise_var[k];
    Eigen::MatrixXd sigma = a * d.asDiagonal() * a.transpose();
    Matrix out(p);
    for (int r = 0; r < p; ++r)
        for (int c = 0; c < p; ++c) out.at(r, c) = 0.5 * (sigma(r, c) + sigma(c, r));
    return out;
}

double causal_effect(const Matrix& sigma, int i, int j, const NodeSet& z) {
    if (i == j || z.test(i) || z.test(j))
        throw std::invalid_argument("causal_effect: bad (i, j, z)");
    std::vector<int> idx{i};
    for (int v : z.to_vector()) idx.push_back(v);
    int m = static_cast<int>(idx.size());
    Eigen::MatrixXd sigma2(m, m);
    Eigen::VectorXd sigma1(m);
    for (int r = 0; r < m; ++r) {
        sigma1(r) = sigma.at(j, idx[r]);
        for (int c = 0; c < m; ++c) sigma2(r, c) = sigma.at(idx[r], idx[c]);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sigma2, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(m - 1);
    double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    if (!(cond < 1e12))
        throw NumericError("causal_effect: adjustment covariance is numerically singular "
                           "(condition number " + std::to_string(cond) + ")");
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(m);
    e1(0) = 1.0;
    Eigen::VectorXd x = sigma2.ldlt().solve(e1);
    return sigma1.dot(x);
}

Matrix effect_table(const Matrix& sigma, const Graph& adjustment_graph) {
    int p = adjustment_graph.node_count();
    if (sigma.n != p) throw std::invalid_argument("effect_table: dimension mismatch");
    Matrix out(p);
    for (int i = 0; i < p; ++i) {
        NodeSet pa = adjustment_graph.parents(i);
        for (int j = 0; j < p; ++j) {
            if (j == i) continue;
            out.at(i, j) = pa.test(j) ? 0.0 : causal_effect(sigma, i, j, pa);
        }
    }
    return out;
}

std::int64_t count_effect_mismatches(const LinearSem& sem, const Graph& g, const Graph& h,
                                     double tol) {
    if (!(sem.graph == g))
        throw std::invalid_argument("count_effect_mismatches: sem must be a model of g");
    if (g.node_count() != h.node_count())
        throw std::invalid_argument("count_effect_mismatches: node counts differ");
    Matrix sigma = sem_covariance(sem);
    Matrix truth = effect_table(sigma, g);
    Matrix estimate = effect_table(sigma, h);
    int p = g.node_count();
    std::int64_t count = 0;
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            if (i != j && std::abs(truth.at(i, j) - estimate.at(i, j)) > tol) ++count;
    return count;
}

}  // namespace sidkit
