#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "treedepth/errors.hpp"
#include "treedepth/graph.hpp"
#include "treedepth/td_decomposition.hpp"
#include "treedepth/tree_decomposition.hpp"

namespace treedepth {

namespace detail {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

/// Non-empty lines split on blanks; lines starting with `c` are dropped.
inline std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::istringstream in{std::string(text.substr(pos, end - pos))};
        Line line{number, {}};
        for (std::string tok; in >> tok;) line.tokens.push_back(tok);
        if (!line.tokens.empty() && line.tokens[0] != "c") out.push_back(std::move(line));
        pos = end + 1;
    }
    return out;
}

inline long long to_int(const Line& line, std::size_t i, const char* what) {
    const std::string& tok = line.tokens.at(i);
    long long value = 0;
    std::size_t used = 0;
    try {
        value = std::stoll(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size() || tok.empty()) throw ParseError(line.number, std::string("expected integer ") + what + ", got '" + tok + "'");
    return value;
}

inline long long to_int_in(const Line& line, std::size_t i, const char* what, long long lo, long long hi) {
    long long v = to_int(line, i, what);
    if (v < lo || v > hi)
        throw ParseError(line.number, std::string(what) + " " + std::to_string(v) + " out of range [" +
                                          std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

constexpr long long kMaxCount = 1LL << 30;

}  // namespace detail

/// `.gr` graph: `c` comment lines, one `p tdp <n> <m>` header, then m lines of
/// 1-based endpoints.
inline Graph parse_gr(std::string_view text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(0, "missing 'p tdp' header");
    const auto& head = lines[0];
    if (head.tokens.size() != 4 || head.tokens[0] != "p" || head.tokens[1] != "tdp")
        throw ParseError(head.number, "expected header 'p tdp <n> <m>'");
    const auto n = static_cast<Vertex>(detail::to_int_in(head, 2, "vertex count", 0, detail::kMaxCount));
    const auto m = detail::to_int_in(head, 3, "edge count", 0, detail::kMaxCount);
    if (static_cast<long long>(lines.size()) - 1 != m)
        throw ParseError(lines.size() > static_cast<std::size_t>(m) + 1 ? lines[m + 1].number : 0,
                         "header declares " + std::to_string(m) + " edges, found " + std::to_string(lines.size() - 1));
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::set<std::pair<Vertex, Vertex>> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.tokens[0] == "p") throw ParseError(l.number, "duplicate header");
        if (l.tokens.size() != 2) throw ParseError(l.number, "edge line needs two endpoints");
        auto u = static_cast<Vertex>(detail::to_int_in(l, 0, "endpoint", 1, n)) - 1;
        auto v = static_cast<Vertex>(detail::to_int_in(l, 1, "endpoint", 1, n)) - 1;
        if (u == v) throw ParseError(l.number, "self-loop");
        if (!seen.emplace(std::min(u, v), std::max(u, v)).second) throw ParseError(l.number, "duplicate edge");
        edges.emplace_back(u, v);
    }
    return Graph(n, edges);
}

inline std::string write_gr(const Graph& g) {
    std::ostringstream out;
    out << "p tdp " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

struct TdDocument {
    TreeDecomposition td;
    int declared_max_bag = 0;
    Vertex n = 0;

    int declared_width() const { return declared_max_bag - 1; }
};

/// `.td` tree decomposition: header `s td <bags> <max-bag-size> <n>`, bag lines
/// `b <id> <v...>`, then bag-tree edges `<a> <b>`, all 1-based. Checks the
/// structure only; graph-dependent validation is `validate`.
inline TdDocument parse_td(std::string_view text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(0, "missing 's td' header");
    const auto& head = lines[0];
    if (head.tokens.size() != 5 || head.tokens[0] != "s" || head.tokens[1] != "td")
        throw ParseError(head.number, "expected header 's td <bags> <max-bag-size> <n>'");
    TdDocument doc;
    const auto bags = static_cast<int>(detail::to_int_in(head, 2, "bag count", 0, detail::kMaxCount));
    doc.declared_max_bag = static_cast<int>(detail::to_int_in(head, 3, "max bag size", 0, detail::kMaxCount));
    doc.n = static_cast<Vertex>(detail::to_int_in(head, 4, "vertex count", 0, detail::kMaxCount));

    std::vector<std::vector<Vertex>> contents(static_cast<std::size_t>(bags));
    std::vector<char> defined(static_cast<std::size_t>(bags), 0);
    std::vector<std::pair<int, int>> edges;
    std::size_t i = 1;
    for (; i < lines.size() && lines[i].tokens[0] == "b"; ++i) {
        const auto& l = lines[i];
        if (l.tokens.size() < 2) throw ParseError(l.number, "bag line needs an id");
        auto id = static_cast<int>(detail::to_int_in(l, 1, "bag id", 1, bags)) - 1;
        if (defined[id]) throw ParseError(l.number, "bag " + std::to_string(id + 1) + " defined twice");
        defined[id] = 1;
        if (static_cast<long long>(l.tokens.size()) - 2 > doc.declared_max_bag)
            throw ParseError(l.number, "bag larger than declared maximum");
        for (std::size_t k = 2; k < l.tokens.size(); ++k)
            contents[id].push_back(static_cast<Vertex>(detail::to_int_in(l, k, "vertex", 1, doc.n)) - 1);
        auto sorted = contents[id];
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ParseError(l.number, "repeated vertex in bag");
    }
    for (int b = 0; b < bags; ++b)
        if (!defined[b]) throw ParseError(0, "bag " + std::to_string(b + 1) + " not defined");
    for (; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.tokens[0] == "b") throw ParseError(l.number, "bag line after tree edges");
        if (l.tokens[0] == "s") throw ParseError(l.number, "duplicate header");
        if (l.tokens.size() != 2) throw ParseError(l.number, "tree edge line needs two bag ids");
        auto a = static_cast<int>(detail::to_int_in(l, 0, "bag id", 1, bags)) - 1;
        auto b = static_cast<int>(detail::to_int_in(l, 1, "bag id", 1, bags)) - 1;
        if (a == b) throw ParseError(l.number, "tree edge is a loop");
        edges.emplace_back(a, b);
    }
    if (bags > 0 && static_cast<int>(edges.size()) != bags - 1) throw ParseError(0, "bag tree must have bags - 1 edges");
    try {
        doc.td = TreeDecomposition::from_edges(std::move(contents), edges);
    } catch (const InputError& e) {
        throw ParseError(0, e.what());
    }
    if (!is_tree_shaped(doc.td)) throw ParseError(0, "bag tree is not a tree");
    return doc;
}

inline std::string write_td(const TreeDecomposition& td, Vertex n) {
    std::ostringstream out;
    out << "s td " << td.num_nodes() << ' ' << td.width() + 1 << ' ' << n << '\n';
    for (int b = 0; b < td.num_nodes(); ++b) {
        out << "b " << b + 1;
        for (Vertex v : td.bags[b]) out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [a, b] : td.tree_edges()) out << a + 1 << ' ' << b + 1 << '\n';
    return out.str();
}

/// `.tree` format. Line 1 is the height (number of levels, so a single vertex
/// has height 1). Line i + 1 is the 1-based parent of vertex i, or 0 for a root.
/// Every node must carry a label, and the labels must be exactly 0..n-1.
inline std::string write_treedepth_decomposition(const TreedepthDecomposition& t) {
    const int n = t.num_nodes();
    std::vector<int> node(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        Vertex v = t.label[i];
        if (v < 0 || v >= n || node[v] != -1) throw InputError("write_treedepth_decomposition: labels must be a permutation");
        node[v] = i;
    }
    std::ostringstream out;
    out << height(t) << '\n';
    for (Vertex v = 0; v < n; ++v) {
        int p = t.parent[node[v]];
        out << (p < 0 ? 0 : t.label[p] + 1) << '\n';
    }
    return out.str();
}

struct TreeFile {
    TreedepthDecomposition decomposition;
    int declared_height = 0;
};

inline TreeFile parse_treedepth_decomposition(std::string_view text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(0, "missing height line");
    for (const auto& l : lines)
        if (l.tokens.size() != 1) throw ParseError(l.number, "expected a single integer");
    TreeFile file;
    file.declared_height = static_cast<int>(detail::to_int_in(lines[0], 0, "height", 0, detail::kMaxCount));
    const auto n = static_cast<long long>(lines.size()) - 1;
    std::vector<int> parent;
    for (std::size_t i = 1; i < lines.size(); ++i)
        parent.push_back(static_cast<int>(detail::to_int_in(lines[i], 0, "parent", 0, n)) - 1);
    file.decomposition = TreedepthDecomposition::from_parents(std::move(parent));
    if (!has_acyclic_parents(file.decomposition)) throw ParseError(0, "parent links contain a cycle");
    return file;
}

/// Machine-readable summary of one solver run. Serialized as JSON with sorted
/// keys; optional fields are omitted when unset.
struct RunReport {
    std::string instance;
    std::string solver;
    std::string answer;  // "YES"/"NO" for decisions, the value for exact runs
    std::vector<std::uint64_t> bag_table_sizes;
    std::uint64_t peak_table_size = 0;
    double wall_time_ms = 0.0;
    std::optional<int> t;
    std::optional<int> width;
    bool dfs_cap_triggered = false;
    bool clique_certificate = false;
    std::uint64_t table_bound_violations = 0;
    std::vector<std::string> notes;

    void set_table_sizes(std::vector<std::uint64_t> sizes) {
        bag_table_sizes = std::move(sizes);
        peak_table_size = bag_table_sizes.empty() ? 0 : *std::max_element(bag_table_sizes.begin(), bag_table_sizes.end());
    }

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline nlohmann::json to_json(const RunReport& r) {
    nlohmann::json j;
    j["instance"] = r.instance;
    j["solver"] = r.solver;
    j["answer"] = r.answer;
    j["bag_table_sizes"] = r.bag_table_sizes;
    j["peak_table_size"] = r.peak_table_size;
    j["wall_time_ms"] = r.wall_time_ms;
    if (r.t) j["t"] = *r.t;
    if (r.width) j["width"] = *r.width;
    j["dfs_cap_triggered"] = r.dfs_cap_triggered;
    j["clique_certificate"] = r.clique_certificate;
    j["table_bound_violations"] = r.table_bound_violations;
    j["notes"] = r.notes;
    return j;
}

inline std::string write_report(const RunReport& r) { return to_json(r).dump(2) + "\n"; }

inline RunReport parse_report(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("report: ") + e.what());
    }
    try {
        RunReport r;
        r.instance = j.at("instance").get<std::string>();
        r.solver = j.at("solver").get<std::string>();
        r.answer = j.at("answer").get<std::string>();
        r.bag_table_sizes = j.at("bag_table_sizes").get<std::vector<std::uint64_t>>();
        r.peak_table_size = j.at("peak_table_size").get<std::uint64_t>();
        r.wall_time_ms = j.at("wall_time_ms").get<double>();
        if (j.contains("t")) r.t = j["t"].get<int>();
        if (j.contains("width")) r.width = j["width"].get<int>();
        r.dfs_cap_triggered = j.at("dfs_cap_triggered").get<bool>();
        r.clique_certificate = j.at("clique_certificate").get<bool>();
        r.table_bound_violations = j.at("table_bound_violations").get<std::uint64_t>();
        r.notes = j.at("notes").get<std::vector<std::string>>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("report: ") + e.what());
    }
}

}  // namespace treedepth
