#include "sidkit/graph_io.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <vector>

#include "sidkit/errors.hpp"

namespace sidkit {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

bool blank(const std::string& s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

struct Token {
    std::string text;
    int column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line, bool commas) {
    std::vector<Token> out;
    std::string cur;
    int start = 0;
    for (int i = 0; i <= static_cast<int>(line.size()); ++i) {
        char c = i < static_cast<int>(line.size()) ? line[i] : ' ';
        bool sep = std::isspace(static_cast<unsigned char>(c)) || (commas && c == ',');
        if (sep) {
            if (!cur.empty()) {
                out.push_back({cur, start + 1});
                cur.clear();
            }
        } else {
            if (cur.empty()) start = i;
            cur += c;
        }
    }
    return out;
}

Graph parse_adj_matrix(const std::string& text, GraphKind kind) {
    std::vector<std::string> lines = split_lines(text);
    std::vector<std::vector<Token>> rows;
    std::vector<int> row_lines;
    int declared_p = -1;
    bool first_content = true;
    for (int li = 0; li < static_cast<int>(lines.size()); ++li) {
        if (blank(lines[li])) continue;
        if (first_content) {
            first_content = false;
            std::string stripped;
            for (char c : lines[li])
                if (!std::isspace(static_cast<unsigned char>(c))) stripped += c;
            if (stripped.rfind("p=", 0) == 0) {
                try {
                    declared_p = std::stoi(stripped.substr(2));
                } catch (...) {
                    throw ParseError("malformed size header '" + lines[li] + "'", li + 1, 1);
                }
                continue;
            }
        }
        rows.push_back(tokenize(lines[li], /*commas=*/true));
        row_lines.push_back(li + 1);
    }
    if (rows.empty()) throw ParseError("no adjacency rows found", 1, 1);
    int p = static_cast<int>(rows.size());
    if (declared_p >= 0 && declared_p != p)
        throw ParseError("header declares p=" + std::to_string(declared_p) + " but found " +
                             std::to_string(p) + " rows",
                         row_lines.back(), 1);
    BitMatrix adj(p);
    for (int r = 0; r < p; ++r) {
        if (static_cast<int>(rows[r].size()) != p)
            throw ParseError("expected " + std::to_string(p) + " entries, found " +
                                 std::to_string(rows[r].size()),
                             row_lines[r], 1);
        for (int c = 0; c < p; ++c) {
            const Token& t = rows[r][c];
            if (t.text == "1")
                adj.set(r, c);
            else if (t.text != "0")
                throw ParseError("expected 0 or 1, found '" + t.text + "'", row_lines[r],
                                 t.column);
        }
    }
    return Graph::from_adjacency(kind, adj);
}

Graph parse_edge_list(const std::string& text, GraphKind kind) {
    std::vector<std::string> lines = split_lines(text);
    std::map<std::string, int> ids;
    std::vector<Edge> edges;
    auto id_of = [&](const std::string& label) {
        return ids.emplace(label, static_cast<int>(ids.size())).first->second;
    };
    for (int li = 0; li < static_cast<int>(lines.size()); ++li) {
        if (blank(lines[li])) continue;
        std::vector<Token> toks = tokenize(lines[li], /*commas=*/false);
        if (toks.size() == 2 && toks[0].text == "node") {
            id_of(toks[1].text);
            continue;
        }
        if (toks.size() == 3 && (toks[1].text == "->" || toks[1].text == "--")) {
            int a = id_of(toks[0].text);
            int b = id_of(toks[2].text);
            edges.push_back({a, b, toks[1].text == "--"});
            continue;
        }
        throw ParseError("expected 'a -> b', 'a -- b' or 'node a'", li + 1,
                         toks.empty() ? 1 : toks[0].column);
    }
    if (ids.empty()) throw ParseError("no nodes declared", 1, 1);
    return Graph(static_cast<int>(ids.size()), kind, edges);
}

}  // namespace

Graph parse_graph(const std::string& text, GraphFormat format, GraphKind kind) {
    return format == GraphFormat::adj_matrix ? parse_adj_matrix(text, kind)
                                             : parse_edge_list(text, kind);
}

std::string serialize_graph(const Graph& g, GraphFormat format) {
    std::ostringstream out;
    int p = g.node_count();
    if (format == GraphFormat::adj_matrix) {
        for (int r = 0; r < p; ++r) {
            for (int c = 0; c < p; ++c) {
                if (c) out << ' ';
                out << (g.arc(r, c) ? '1' : '0');
            }
            out << '\n';
        }
        return out.str();
    }
    // Leading node declarations pin the label-to-id mapping, so the output
    // re-parses to the identical graph regardless of edge order.
    for (int i = 0; i < p; ++i) out << "node " << i << '\n';
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            if (g.has_directed_edge(i, j)) out << i << " -> " << j << '\n';
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (g.has_undirected_edge(i, j)) out << i << " -- " << j << '\n';
    return out.str();
}

GraphFormat detect_format(const std::string& text) {
    for (const std::string& line : split_lines(text)) {
        if (blank(line)) continue;
        if (line.find("->") != std::string::npos || line.find("--") != std::string::npos ||
            line.rfind("node", 0) == 0 || line.find(" node ") != std::string::npos)
            return GraphFormat::edge_list;
    }
    return GraphFormat::adj_matrix;
}

}  // namespace sidkit
