#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sidkit/cpdag_sid.hpp"
#include "sidkit/distances.hpp"
#include "sidkit/errors.hpp"
#include "sidkit/graph_io.hpp"
#include "sidkit/oracle.hpp"
#include "sidkit/rng.hpp"
#include "sidkit/simbench.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace sidkit;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitCap = 4;
constexpr int kExitOutput = 5;

struct ExitWith {
    int code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ExitWith{kExitParse, "cannot read '" + path + "'"};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Whole-file write via a temporary in the same directory; a failed
// command never leaves partial output behind.
void write_file_atomically(const std::string& path, const std::string& content) {
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ExitWith{kExitOutput, "cannot write '" + path + "'"};
    out << content;
    out.flush();
    if (!out) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw ExitWith{kExitOutput, "cannot write '" + path + "'"};
    }
    out.close();
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ExitWith{kExitOutput, "cannot write '" + path + "': " + ec.message()};
    }
}

GraphKind parse_kind(const std::string& s) {
    if (s == "dag") return GraphKind::dag;
    if (s == "pdag") return GraphKind::pdag;
    if (s == "cpdag") return GraphKind::cpdag;
    throw ExitWith{kExitMismatch, "unknown graph kind '" + s + "'"};
}

Regime parse_regime(const std::string& s) {
    if (s == "sparse") return Regime::sparse;
    if (s == "dense") return Regime::dense;
    if (s == "custom") return Regime::custom;
    throw ExitWith{kExitMismatch, "unknown regime '" + s + "'"};
}

// Parses per the declared kind; cpdag inputs are parsed as PDAGs so that
// validation failures can be routed (fallback or strict error) instead of
// refused outright.
Graph load_graph(const std::string& path, const std::string& format, GraphKind kind) {
    std::string text = read_file(path);
    GraphFormat fmt;
    if (format == "auto")
        fmt = detect_format(text);
    else if (format == "adj")
        fmt = GraphFormat::adj_matrix;
    else if (format == "edges")
        fmt = GraphFormat::edge_list;
    else
        throw ExitWith{kExitParse, "unknown format '" + format + "'"};
    try {
        GraphKind parse_as = kind == GraphKind::cpdag ? GraphKind::pdag : kind;
        return parse_graph(text, fmt, parse_as);
    } catch (const ParseError& e) {
        throw ExitWith{kExitParse, path + ": " + e.what()};
    } catch (const ValidationError& e) {
        throw ExitWith{kExitParse, path + ": " + e.what()};
    }
}

ordered_json bounds_json(const SidBounds& b) {
    ordered_json j;
    j["lower"] = b.lower;
    j["upper"] = b.upper;
    j["fixed"] = b.fixed;
    j["attained"] = b.attained;
    ordered_json comps = ordered_json::array();
    for (const ComponentBounds& cb : b.per_component) {
        ordered_json c;
        c["nodes"] = cb.component.to_vector();
        c["min"] = cb.min_sum;
        c["max"] = cb.max_sum;
        c["extensions"] = cb.extension_count;
        comps.push_back(c);
    }
    j["per_component"] = comps;
    return j;
}

std::vector<std::string> verdict_rows(const SidReport& report) {
    std::vector<std::string> rows;
    rows.reserve(static_cast<size_t>(report.node_count));
    for (int i = 0; i < report.node_count; ++i) {
        std::string row;
        for (int j = 0; j < report.node_count; ++j) row += verdict_char(report.at(i, j));
        rows.push_back(row);
    }
    return rows;
}

struct DistArgs {
    std::string true_path, est_path;
    std::string metric = "sid";
    std::string true_kind = "dag", est_kind = "dag";
    std::string format = "auto";
    bool json = false;
    bool verdicts = false;
    bool strict_cpdag = false;
    int cap = kDefaultExtensionCap;
};

int run_dist(const DistArgs& args) {
    GraphKind tk = parse_kind(args.true_kind);
    GraphKind ek = parse_kind(args.est_kind);
    Graph truth = load_graph(args.true_path, args.format, tk);
    Graph estimate = load_graph(args.est_path, args.format, ek);
    ClassPolicy policy = args.strict_cpdag ? ClassPolicy::strict : ClassPolicy::auto_fallback;

    if (truth.node_count() != estimate.node_count())
        throw ExitWith{kExitMismatch, "node counts differ: " + args.true_path + " has " +
                                          std::to_string(truth.node_count()) + ", " +
                                          args.est_path + " has " +
                                          std::to_string(estimate.node_count())};

    // Truth-side CPDAGs must be valid; estimates may fall back.
    if (tk == GraphKind::cpdag) {
        CpdagCheck check = check_cpdag(truth);
        if (!check.ok) throw ExitWith{kExitParse, args.true_path + ": " + check.reason};
        truth = trusted_graph(truth.node_count(), GraphKind::cpdag, truth.adjacency());
    }

    bool want_all = args.metric == "all";
    ordered_json out;
    out["schema_version"] = 1;
    out["inputs"] =
        ordered_json::array({{{"path", args.true_path}, {"kind", to_string(tk)}},
                             {{"path", args.est_path}, {"kind", to_string(ek)}}});
    ordered_json metrics;
    std::vector<std::string> lines;
    std::vector<std::string> warnings;

    if (want_all || args.metric == "shd") {
        std::int64_t v = shd(truth, estimate);
        metrics["shd"] = v;
        lines.push_back("shd: " + std::to_string(v));
    }

    auto emit_sid_bounds = [&](const SidBounds& b) {
        metrics["sid"] = bounds_json(b);
        lines.push_back("sid_lower: " + std::to_string(b.lower));
        lines.push_back("sid_upper: " + std::to_string(b.upper));
        lines.push_back(std::string("bounds: ") +
                        (b.attained ? "attained by class members" : "per-node (fallback)"));
        for (const std::string& w : b.warnings) warnings.push_back(w);
    };

    if (want_all || args.metric == "sid") {
        if (tk == GraphKind::dag && ek == GraphKind::dag) {
            SidReport report = sid(truth, estimate);
            metrics["sid"] = ordered_json{{"value", report.total}};
            lines.push_back("sid: " + std::to_string(report.total));
            if (args.verdicts) out["verdicts"] = verdict_rows(report);
        } else if (tk == GraphKind::dag) {
            emit_sid_bounds(sid_dag_class(truth, estimate, policy, args.cap));
        } else if (tk == GraphKind::cpdag && ek == GraphKind::dag) {
            SidReport report = sid_cpdag_dag(truth, estimate);
            metrics["sid"] =
                ordered_json{{"value", report.total}, {"excluded", report.excluded_count()}};
            lines.push_back("sid: " + std::to_string(report.total) +
                            " (excluded pairs: " + std::to_string(report.excluded_count()) + ")");
            if (args.verdicts) out["verdicts"] = verdict_rows(report);
        } else if (tk == GraphKind::cpdag) {
            emit_sid_bounds(sid_cpdag_class(truth, estimate, policy, args.cap));
        } else {
            throw ExitWith{kExitMismatch, "sid requires the true graph to be a dag or a cpdag"};
        }
    }

    if (want_all || args.metric == "sid-sym") {
        if (tk != GraphKind::dag || ek != GraphKind::dag) {
            if (!want_all) throw ExitWith{kExitMismatch, "sid-sym requires two DAGs"};
        } else {
            HalfCount sym = sid_symmetric(truth, estimate);
            metrics["sid_sym"] = sym.value();
            lines.push_back("sid_sym: " + sym.str());
        }
    }

    if (want_all || args.metric == "dne") {
        std::int64_t v = dne(truth, estimate);
        metrics["dne"] = v;
        lines.push_back("dne: " + std::to_string(v));
    }

    if (metrics.empty()) throw ExitWith{kExitMismatch, "unknown metric '" + args.metric + "'"};
    out["metrics"] = metrics;
    out["warnings"] = warnings;

    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    if (args.json) {
        std::cout << out.dump(2) << "\n";
    } else {
        for (const std::string& line : lines) std::cout << line << "\n";
    }
    return 0;
}

struct VerifyArgs {
    std::string true_path, est_path;
    std::string mode = "oracle";
    std::string format = "auto";
    std::uint64_t seed = 0;
    double tol = 1e-8;
    int batch = 0;
    int p = 5;
    std::string regime = "dense";
    double p_connect = 0.0;
    bool json = false;
};

int run_verify(const VerifyArgs& args) {
    ordered_json out;
    out["schema_version"] = 1;
    out["mode"] = args.mode;

    if (args.batch > 0) {
        if (args.mode == "oracle" && args.p > kOracleNodeCap)
            throw ExitWith{kExitCap, "oracle mode caps p at " + std::to_string(kOracleNodeCap)};
        Regime regime = parse_regime(args.regime);
        int agree = 0;
        if (args.mode == "gaussian") {
            ExperimentSpec spec;
            spec.kind = ExperimentKind::sid_vs_effects;
            spec.regime = regime;
            spec.p_connect = args.p_connect;
            spec.node_counts = {args.p};
            spec.pairs = args.batch;
            spec.seed = args.seed;
            spec.tol = args.tol;
            for (const ExperimentRow& row : run_experiment(spec))
                if (row.sid == row.effect_mismatches) ++agree;
        } else if (args.mode == "oracle") {
            for (std::int64_t k = 0; k < args.batch; ++k) {
                GenConfig cfg{args.p, regime, args.p_connect, 0};
                cfg.seed = mix64(args.seed + 0x9E3779B97F4A7C15ULL * (2 * k + 1));
                Graph g = random_dag(cfg);
                cfg.seed = mix64(args.seed + 0x9E3779B97F4A7C15ULL * (2 * k + 2));
                Graph h = random_dag(cfg);
                if (sid(g, h).total == sid_bruteforce(g, h)) ++agree;
            }
        } else {
            throw ExitWith{kExitMismatch, "unknown mode '" + args.mode + "'"};
        }
        double fraction = static_cast<double>(agree) / static_cast<double>(args.batch);
        out["pairs"] = args.batch;
        out["agreements"] = agree;
        out["agreement_fraction"] = fraction;
        if (args.json)
            std::cout << out.dump(2) << "\n";
        else
            std::printf("agreement: %d/%d (%.2f%%)\n", agree, args.batch, 100.0 * fraction);
        return 0;
    }

    if (args.true_path.empty() || args.est_path.empty())
        throw ExitWith{kExitMismatch, "verify needs two graph files or --batch"};
    Graph g = load_graph(args.true_path, args.format, GraphKind::dag);
    Graph h = load_graph(args.est_path, args.format, GraphKind::dag);
    std::int64_t fast = sid(g, h).total;
    std::int64_t reference;
    const char* label;
    if (args.mode == "oracle") {
        try {
            reference = sid_bruteforce(g, h);
        } catch (const CapExceeded& e) {
            throw ExitWith{kExitCap, e.what()};
        }
        out["fast"] = fast;
        out["oracle"] = reference;
        label = "oracle";
    } else if (args.mode == "gaussian") {
        LinearSem sem = random_sem(g, args.seed);
        reference = count_effect_mismatches(sem, g, h, args.tol);
        out["fast"] = fast;
        out["effect_mismatches"] = reference;
        label = "gaussian";
    } else {
        throw ExitWith{kExitMismatch, "unknown mode '" + args.mode + "'"};
    }
    bool agree = fast == reference;
    out["agree"] = agree;
    if (args.json) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("fast: %lld\n%s: %lld\nagree: %s\n", static_cast<long long>(fast), label,
                    static_cast<long long>(reference), agree ? "yes" : "no");
    }
    return 0;
}

struct GenArgs {
    int p = 0;
    std::string regime = "sparse";
    double p_connect = 0.0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_gen(const GenArgs& args) {
    GenConfig cfg{args.p, parse_regime(args.regime), args.p_connect, args.seed};
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ExitWith{kExitMismatch, e.what()};
    }
    std::string text = serialize_graph(random_dag(cfg));
    if (args.out.empty())
        std::cout << text;
    else
        write_file_atomically(args.out, text);
    return 0;
}

struct ExperimentArgs {
    std::string kind;
    std::vector<int> node_counts;
    std::int64_t pairs = 100;
    std::string regime = "sparse";
    double p_connect = 0.0;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    int reps = 3;
    std::string out;
};

int run_experiment_cmd(const ExperimentArgs& args) {
    ExperimentSpec spec;
    if (args.kind == "sid-vs-shd")
        spec.kind = ExperimentKind::sid_vs_shd;
    else if (args.kind == "sid-vs-effects")
        spec.kind = ExperimentKind::sid_vs_effects;
    else if (args.kind == "scaling")
        spec.kind = ExperimentKind::scaling;
    else
        throw ExitWith{kExitMismatch, "unknown experiment kind '" + args.kind + "'"};
    spec.regime = parse_regime(args.regime);
    spec.p_connect = args.p_connect;
    spec.node_counts = args.node_counts;
    spec.pairs = args.pairs;
    spec.seed = args.seed;
    spec.tol = args.tol;
    spec.timing_reps = args.reps;
    std::string csv;
    try {
        csv = experiment_csv(run_experiment(spec));
    } catch (const std::invalid_argument& e) {
        throw ExitWith{kExitMismatch, e.what()};
    }
    if (args.out.empty())
        std::cout << csv;
    else
        write_file_atomically(args.out, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structural intervention distance toolkit"};
    app.require_subcommand(1);

    DistArgs dist_args;
    CLI::App* dist = app.add_subcommand("dist", "distances between two graph files");
    dist->add_option("true", dist_args.true_path, "true graph file")->required();
    dist->add_option("est", dist_args.est_path, "estimated graph file")->required();
    dist->add_option("--metric", dist_args.metric, "sid | shd | sid-sym | dne | all");
    dist->add_option("--true-kind", dist_args.true_kind, "dag | pdag | cpdag");
    dist->add_option("--est-kind", dist_args.est_kind, "dag | pdag | cpdag");
    dist->add_option("--format", dist_args.format, "auto | adj | edges");
    dist->add_option("--cap", dist_args.cap, "chain-component extension cap");
    dist->add_flag("--json", dist_args.json, "machine-readable report");
    dist->add_flag("--verdicts", dist_args.verdicts, "include the per-pair verdict matrix");
    dist->add_flag("--strict-cpdag", dist_args.strict_cpdag,
                   "fail instead of falling back on invalid CPDAGs");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "cross-check sid against a slow reference");
    verify->add_option("true", verify_args.true_path, "true graph file");
    verify->add_option("est", verify_args.est_path, "estimated graph file");
    verify->add_option("--mode", verify_args.mode, "oracle | gaussian");
    verify->add_option("--format", verify_args.format, "auto | adj | edges");
    verify->add_option("--seed", verify_args.seed, "seed for generated models");
    verify->add_option("--tol", verify_args.tol, "effect comparison threshold");
    verify->add_option("--batch", verify_args.batch, "verify this many seeded random pairs");
    verify->add_option("--p", verify_args.p, "node count for --batch");
    verify->add_option("--regime", verify_args.regime, "sparse | dense | custom");
    verify->add_option("--p-connect", verify_args.p_connect, "edge probability (custom regime)");
    verify->add_flag("--json", verify_args.json, "machine-readable report");

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "write a seeded random DAG");
    gen->add_option("--p", gen_args.p, "node count")->required();
    gen->add_option("--regime", gen_args.regime, "sparse | dense | custom");
    gen->add_option("--p-connect", gen_args.p_connect, "edge probability (custom regime)");
    gen->add_option("--seed", gen_args.seed, "generator seed");
    gen->add_option("--out", gen_args.out, "output file (stdout if absent)");

    ExperimentArgs exp_args;
    CLI::App* experiment = app.add_subcommand("experiment", "run a seeded experiment grid");
    experiment->add_option("kind", exp_args.kind, "sid-vs-shd | sid-vs-effects | scaling")
        ->required();
    experiment->add_option("--p", exp_args.node_counts, "node counts")->required()->delimiter(',');
    experiment->add_option("--pairs", exp_args.pairs, "pairs per node count");
    experiment->add_option("--regime", exp_args.regime, "sparse | dense | custom");
    experiment->add_option("--p-connect", exp_args.p_connect, "edge probability (custom regime)");
    experiment->add_option("--seed", exp_args.seed, "experiment seed");
    experiment->add_option("--tol", exp_args.tol, "effect comparison threshold");
    experiment->add_option("--reps", exp_args.reps, "timing repetitions (scaling)");
    experiment->add_option("--out", exp_args.out, "CSV output file (stdout if absent)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dist->parsed()) return run_dist(dist_args);
        if (verify->parsed()) return run_verify(verify_args);
        if (gen->parsed()) return run_gen(gen_args);
        if (experiment->parsed()) return run_experiment_cmd(exp_args);
    } catch (const ExitWith& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMismatch;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
