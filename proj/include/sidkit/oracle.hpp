#pragma once

#include <cstdint>
#include <vector>

#include "sidkit/graph.hpp"

namespace sidkit {

// Slow-path truth sources. Everything here works by explicit enumeration
// or dense linear algebra and is independent of the bit-matrix fast path
// it is used to check.

inline constexpr int kOracleNodeCap = 12;
inline constexpr std::int64_t kOraclePathCap = 1'000'000;

// All simple paths between i and j in the skeleton of g, as vertex
// sequences. Throws CapExceeded beyond kOracleNodeCap nodes or
// kOraclePathCap paths.
std::vector<std::vector<int>> simple_paths(const Graph& g, int i, int j);

// Blocking test: some interior node is a non-collider in s, or
// a collider with no reflexive descendant in s. Endpoints are not
// consulted.
bool path_blocked(const Graph& g, const std::vector<int>& path, const NodeSet& s);

// True iff the path's edges all point forward from path.front().
bool path_directed_from_source(const Graph& g, const std::vector<int>& path);

// Star condition checked by full path enumeration.
bool satisfies_star_bruteforce(const Graph& g, int i, int j, const NodeSet& z);

// SID by per-pair brute force; identical contract to sid(g, h).total.
std::int64_t sid_bruteforce(const Graph& g, const Graph& h);

// Dense real matrix carrier for the linear-Gaussian oracle.
struct Matrix {
    int n = 0;
    std::vector<double> v;  // row-major

    Matrix() = default;
    explicit Matrix(int dim) : n(dim), v(static_cast<size_t>(dim) * dim, 0.0) {}
    double& at(int r, int c) { return v[static_cast<size_t>(r) * n + c]; }
    double at(int r, int c) const { return v[static_cast<size_t>(r) * n + c]; }
};

// Linear structural equation model X_j = sum_k B[j][k] X_k + N_j over a
// DAG; B's support must match the graph's edges exactly and noise
// variances must be positive.
struct LinearSem {
    Graph graph;
    Matrix coefficients;              // coefficients.at(child, parent)
    std::vector<double> noise_var;

    LinearSem(Graph g, Matrix b, std::vector<double> noise);
    int node_count() const { return graph.node_count(); }
};

// Sigma = (I - B)^-1 D (I - B)^-T with D = diag(noise_var).
Matrix sem_covariance(const LinearSem& sem);

// First regression coefficient of X_j on (X_i, z) under sigma: the total
// causal effect an estimate adjusting for z would report. Throws
// NumericError with a condition-number diagnostic when the (X_i, z)
// covariance block is numerically singular.
double causal_effect(const Matrix& sigma, int i, int j, const NodeSet& z);

// Entry (i,j) = causal_effect(sigma, i, j, PA_adjust(i)), or 0 when j is
// a parent of i in the adjustment graph; diagonal 0 by convention.
Matrix effect_table(const Matrix& sigma, const Graph& adjustment_graph);

// Ordered pairs whose analytic effects under g-parent and h-parent
// adjustment differ by more than tol. sem must be a model of g.
std::int64_t count_effect_mismatches(const LinearSem& sem, const Graph& g, const Graph& h,
                                     double tol = 1e-8);

}  // namespace sidkit
