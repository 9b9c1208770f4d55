#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "sidkit/adjustment.hpp"
#include "sidkit/cpdag_sid.hpp"
#include "sidkit/distances.hpp"
#include "sidkit/errors.hpp"
#include "sidkit/graph_io.hpp"
#include "sidkit/oracle.hpp"
#include "sidkit/simbench.hpp"
#include "sidkit/structure.hpp"

namespace py = pybind11;
using namespace sidkit;

namespace {

GraphKind kind_from(const std::string& s) {
    if (s == "dag") return GraphKind::dag;
    if (s == "pdag") return GraphKind::pdag;
    if (s == "cpdag") return GraphKind::cpdag;
    throw std::invalid_argument("unknown graph kind '" + s + "'");
}

GraphFormat format_from(const std::string& s, const std::string& text) {
    if (s == "auto") return detect_format(text);
    if (s == "adj") return GraphFormat::adj_matrix;
    if (s == "edges") return GraphFormat::edge_list;
    throw std::invalid_argument("unknown format '" + s + "'");
}

Regime regime_from(const std::string& s) {
    if (s == "sparse") return Regime::sparse;
    if (s == "dense") return Regime::dense;
    if (s == "custom") return Regime::custom;
    throw std::invalid_argument("unknown regime '" + s + "'");
}

NodeSet set_from(int universe, const std::vector<int>& xs) {
    NodeSet s(universe);
    for (int x : xs) {
        if (x < 0 || x >= universe) throw std::invalid_argument("node out of range");
        s.set(x);
    }
    return s;
}

std::vector<std::vector<double>> matrix_rows(const Matrix& m) {
    std::vector<std::vector<double>> rows(static_cast<size_t>(m.n));
    for (int r = 0; r < m.n; ++r) {
        rows[r].resize(static_cast<size_t>(m.n));
        for (int c = 0; c < m.n; ++c) rows[r][c] = m.at(r, c);
    }
    return rows;
}

std::vector<std::string> report_rows(const SidReport& report) {
    std::vector<std::string> rows;
    for (int i = 0; i < report.node_count; ++i) {
        std::string row;
        for (int j = 0; j < report.node_count; ++j) row += verdict_char(report.at(i, j));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "structural intervention distance toolkit";

    py::register_exception<ParseError>(m, "GraphParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "GraphValidationError", PyExc_ValueError);
    py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
    py::register_exception<NumericError>(m, "NumericSingularity", PyExc_ArithmeticError);

    py::class_<Graph>(m, "Graph")
        .def_static(
            "parse",
            [](const std::string& text, const std::string& format, const std::string& kind) {
                return parse_graph(text, format_from(format, text), kind_from(kind));
            },
            py::arg("text"), py::arg("format") = "auto", py::arg("kind") = "dag")
        .def_static(
            "from_edges",
            [](int p, const std::vector<std::tuple<int, int>>& directed,
               const std::vector<std::tuple<int, int>>& undirected, const std::string& kind) {
                std::vector<Edge> edges;
                for (auto [a, b] : directed) edges.push_back({a, b, false});
                for (auto [a, b] : undirected) edges.push_back({a, b, true});
                return Graph(p, kind_from(kind), edges);
            },
            py::arg("p"), py::arg("directed"),
            py::arg("undirected") = std::vector<std::tuple<int, int>>{},
            py::arg("kind") = "dag")
        .def("serialize",
             [](const Graph& g, const std::string& format) {
                 return serialize_graph(g, format == "edges" ? GraphFormat::edge_list
                                                             : GraphFormat::adj_matrix);
             },
             py::arg("format") = "adj")
        .def_property_readonly("p", &Graph::node_count)
        .def_property_readonly("kind", [](const Graph& g) { return to_string(g.kind()); })
        .def("edge_count", &Graph::edge_count)
        .def("has_directed_edge", &Graph::has_directed_edge)
        .def("has_undirected_edge", &Graph::has_undirected_edge)
        .def("parents", [](const Graph& g, int i) { return g.parents(i).to_vector(); })
        .def("children", [](const Graph& g, int i) { return g.children(i).to_vector(); })
        .def("descendants", [](const Graph& g, int i) { return g.descendants(i).to_vector(); })
        .def("ancestors", [](const Graph& g, int i) { return g.ancestors(i).to_vector(); })
        .def("non_descendants",
             [](const Graph& g, int i) { return g.non_descendants(i).to_vector(); })
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "<Graph kind=" + to_string(g.kind()) + " p=" +
                   std::to_string(g.node_count()) + " edges=" + std::to_string(g.edge_count()) +
                   ">";
        });

    py::class_<SidReport>(m, "SidReport")
        .def_readonly("total", &SidReport::total)
        .def_property_readonly("excluded", &SidReport::excluded_count)
        .def_property_readonly("verdicts", &report_rows)
        .def("__repr__", [](const SidReport& r) {
            return "<SidReport total=" + std::to_string(r.total) + ">";
        });

    py::class_<ComponentBounds>(m, "ComponentBounds")
        .def_property_readonly("nodes",
                               [](const ComponentBounds& c) { return c.component.to_vector(); })
        .def_readonly("min_sum", &ComponentBounds::min_sum)
        .def_readonly("max_sum", &ComponentBounds::max_sum)
        .def_readonly("extension_count", &ComponentBounds::extension_count);

    py::class_<SidBounds>(m, "SidBounds")
        .def_readonly("lower", &SidBounds::lower)
        .def_readonly("upper", &SidBounds::upper)
        .def_readonly("fixed", &SidBounds::fixed)
        .def_readonly("attained", &SidBounds::attained)
        .def_readonly("per_component", &SidBounds::per_component)
        .def_readonly("warnings", &SidBounds::warnings)
        .def("__repr__", [](const SidBounds& b) {
            return "<SidBounds lower=" + std::to_string(b.lower) +
                   " upper=" + std::to_string(b.upper) + ">";
        });

    m.def("shd", &shd, py::arg("g"), py::arg("h"));
    m.def("dne", &dne, py::arg("g"), py::arg("h"));
    m.def(
        "sid", [](const Graph& g, const Graph& h) { return sid(g, h); }, py::arg("g"),
        py::arg("h"));
    m.def(
        "sid_symmetric",
        [](const Graph& g, const Graph& h) { return sid_symmetric(g, h).value(); }, py::arg("g"),
        py::arg("h"));

    m.def(
        "sid_dag_cpdag",
        [](const Graph& g, const Graph& c, int cap) { return sid_dag_cpdag(g, c, cap); },
        py::arg("g"), py::arg("cpdag"), py::arg("cap") = kDefaultExtensionCap);
    m.def("sid_cpdag_dag", &sid_cpdag_dag, py::arg("cpdag"), py::arg("h"));
    m.def(
        "sid_cpdag_cpdag",
        [](const Graph& c, const Graph& d, int cap) { return sid_cpdag_cpdag(c, d, cap); },
        py::arg("truth_cpdag"), py::arg("estimate_cpdag"), py::arg("cap") = kDefaultExtensionCap);
    m.def("sid_dag_pdag_fallback", &sid_dag_pdag_fallback, py::arg("g"), py::arg("pdag"));

    m.def("identifiability_mask", [](const Graph& c) {
        IdentifiabilityMask mask = identifiability_mask(c);
        std::vector<std::vector<bool>> rows(static_cast<size_t>(mask.node_count));
        for (int i = 0; i < mask.node_count; ++i) {
            rows[i].resize(static_cast<size_t>(mask.node_count));
            for (int j = 0; j < mask.node_count; ++j) rows[i][j] = mask.at(i, j);
        }
        return rows;
    });

    m.def("completed_pdag_of", &completed_pdag_of, py::arg("dag"));
    m.def("consistent_extension_of", &consistent_extension_of, py::arg("cpdag"));
    m.def("is_consistent_extension", &is_consistent_extension, py::arg("cpdag"), py::arg("dag"));
    m.def(
        "chain_components",
        [](const Graph& g) {
            std::vector<std::vector<int>> out;
            for (const NodeSet& c : chain_components(g)) out.push_back(c.to_vector());
            return out;
        },
        py::arg("g"));
    m.def(
        "enumerate_extensions",
        [](const Graph& g, const std::vector<int>& component, int cap) {
            return enumerate_extensions(g, set_from(g.node_count(), component), cap);
        },
        py::arg("g"), py::arg("component"), py::arg("cap") = kDefaultExtensionCap);
    m.def(
        "d_separated",
        [](const Graph& g, const std::vector<int>& a, const std::vector<int>& b,
           const std::vector<int>& s) {
            int p = g.node_count();
            return d_separated(g, set_from(p, a), set_from(p, b), set_from(p, s));
        },
        py::arg("g"), py::arg("a"), py::arg("b"), py::arg("s") = std::vector<int>{});

    m.def(
        "satisfies_star",
        [](const Graph& g, int i, int j, const std::vector<int>& z) {
            StarVerdict v = satisfies_star(g, i, j, set_from(g.node_count(), z));
            std::optional<std::string> part;
            if (v.violated_part == StarViolation::part1_descendant_of_causal_node)
                part = "part1-descendant-of-causal-node";
            else if (v.violated_part == StarViolation::part2_unblocked_nondirected_path)
                part = "part2-unblocked-nondirected-path";
            return py::make_tuple(v.satisfied, part);
        },
        py::arg("g"), py::arg("i"), py::arg("j"), py::arg("z"));
    m.def(
        "satisfies_star_bruteforce",
        [](const Graph& g, int i, int j, const std::vector<int>& z) {
            return satisfies_star_bruteforce(g, i, j, set_from(g.node_count(), z));
        },
        py::arg("g"), py::arg("i"), py::arg("j"), py::arg("z"));
    m.def("sid_bruteforce", &sid_bruteforce, py::arg("g"), py::arg("h"));

    py::class_<LinearSem>(m, "LinearSem")
        .def_property_readonly("graph", [](const LinearSem& s) { return s.graph; })
        .def_property_readonly("coefficients",
                               [](const LinearSem& s) { return matrix_rows(s.coefficients); })
        .def_readonly("noise_var", &LinearSem::noise_var);

    m.def("random_sem", &random_sem, py::arg("g"), py::arg("seed"));
    m.def(
        "sem_covariance", [](const LinearSem& sem) { return matrix_rows(sem_covariance(sem)); },
        py::arg("sem"));
    m.def(
        "causal_effect",
        [](const std::vector<std::vector<double>>& sigma, int i, int j,
           const std::vector<int>& z) {
            int n = static_cast<int>(sigma.size());
            Matrix s(n);
            for (int r = 0; r < n; ++r) {
                if (static_cast<int>(sigma[r].size()) != n)
                    throw std::invalid_argument("covariance matrix must be square");
                for (int c = 0; c < n; ++c) s.at(r, c) = sigma[r][c];
            }
            return causal_effect(s, i, j, set_from(n, z));
        },
        py::arg("sigma"), py::arg("i"), py::arg("j"), py::arg("z"));
    m.def("count_effect_mismatches", &count_effect_mismatches, py::arg("sem"), py::arg("g"),
          py::arg("h"), py::arg("tol") = 1e-8);

    m.def(
        "random_dag",
        [](int p, const std::string& regime, double p_connect, std::uint64_t seed) {
            return random_dag(GenConfig{p, regime_from(regime), p_connect, seed});
        },
        py::arg("p"), py::arg("regime") = "sparse", py::arg("p_connect") = 0.0,
        py::arg("seed") = 0);
}
