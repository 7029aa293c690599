#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "treedepth/errors.hpp"
#include "treedepth/graph.hpp"

namespace treedepth {

/// Rooted forest whose nodes may carry a graph vertex. parent[i] == -1 marks
/// a root; label[i] == -1 marks an unlabeled node.
struct TreedepthDecomposition {
    std::vector<int> parent;
    std::vector<Vertex> label;

    /// Fully labeled decomposition where node i carries vertex i.
    static TreedepthDecomposition from_parents(std::vector<int> parent) {
        TreedepthDecomposition t;
        t.label.resize(parent.size());
        for (std::size_t i = 0; i < parent.size(); ++i) t.label[i] = static_cast<Vertex>(i);
        t.parent = std::move(parent);
        return t;
    }

    int num_nodes() const { return static_cast<int>(parent.size()); }

    std::vector<int> roots() const {
        std::vector<int> out;
        for (int i = 0; i < num_nodes(); ++i)
            if (parent[i] == -1) out.push_back(i);
        return out;
    }

    std::vector<std::vector<int>> children() const {
        std::vector<std::vector<int>> out(parent.size());
        for (int i = 0; i < num_nodes(); ++i)
            if (parent[i] >= 0) out[parent[i]].push_back(i);
        return out;
    }

    /// Root depth is 1. Assumes acyclic parent links.
    std::vector<int> depths() const {
        std::vector<int> d(parent.size(), 0);
        for (int i = 0; i < num_nodes(); ++i) {
            if (d[i]) continue;
            std::vector<int> path;
            int x = i;
            while (x >= 0 && !d[x]) {
                path.push_back(x);
                x = parent[x];
            }
            int base = x >= 0 ? d[x] : 0;
            for (auto it = path.rbegin(); it != path.rend(); ++it) d[*it] = ++base;
        }
        return d;
    }

    bool is_ancestor(int a, int b) const {
        for (int x = parent[b]; x >= 0; x = parent[x])
            if (x == a) return true;
        return false;
    }

    /// node_of[v] is the node labeled v, or -1.
    std::vector<int> node_of(Vertex n) const {
        std::vector<int> out(static_cast<std::size_t>(n), -1);
        for (int i = 0; i < num_nodes(); ++i)
            if (label[i] >= 0 && label[i] < n) out[label[i]] = i;
        return out;
    }

    friend bool operator==(const TreedepthDecomposition&, const TreedepthDecomposition&) = default;
};

inline bool has_acyclic_parents(const TreedepthDecomposition& t) {
    const int n = t.num_nodes();
    if (t.label.size() != t.parent.size()) return false;
    std::vector<char> state(static_cast<std::size_t>(n), 0);  // 0 new, 1 on stack, 2 done
    for (int i = 0; i < n; ++i) {
        std::vector<int> path;
        int x = i;
        while (x >= 0 && state[x] == 0) {
            if (x >= n) return false;
            state[x] = 1;
            path.push_back(x);
            x = t.parent[x];
            if (x >= n || x < -1) return false;
        }
        if (x >= 0 && state[x] == 1) return false;
        for (int y : path) state[y] = 2;
    }
    return true;
}

/// Height of the forest in nodes; 0 for the empty forest.
inline int height(const TreedepthDecomposition& t) {
    auto d = t.depths();
    return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

struct TddViolation {
    enum class Kind { kStructure, kMissingVertex, kUncoveredEdge };
    Kind kind;
    std::vector<Vertex> witness;
    std::string message;
};

/// nullopt iff every vertex labels exactly one node and every edge joins an
/// ancestor/descendant pair.
inline std::optional<TddViolation> validate_tdd(const Graph& g, const TreedepthDecomposition& t) {
    using K = TddViolation::Kind;
    if (!has_acyclic_parents(t)) return TddViolation{K::kStructure, {}, "parent links do not form a forest"};
    const Vertex n = g.num_vertices();
    std::vector<int> node(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < t.num_nodes(); ++i) {
        Vertex v = t.label[i];
        if (v == -1) continue;
        if (v < 0 || v >= n) return TddViolation{K::kStructure, {v}, "label " + std::to_string(v) + " out of range"};
        if (node[v] != -1) return TddViolation{K::kStructure, {v}, "vertex " + std::to_string(v) + " labels two nodes"};
        node[v] = i;
    }
    for (Vertex v = 0; v < n; ++v)
        if (node[v] == -1) return TddViolation{K::kMissingVertex, {v}, "vertex " + std::to_string(v) + " missing"};
    auto depth = t.depths();
    for (auto [u, v] : g.edges()) {
        int a = node[u], b = node[v];
        if (depth[a] > depth[b]) std::swap(a, b);
        if (!t.is_ancestor(a, b))
            return TddViolation{K::kUncoveredEdge, {u, v},
                                "edge " + std::to_string(u) + "-" + std::to_string(v) + " joins incomparable nodes"};
    }
    return std::nullopt;
}

/// Removes every unlabeled node, reattaching each labeled node to its nearest
/// labeled ancestor. This is the fixed point of deleting unlabeled roots and
/// contracting unlabeled inner nodes into their parents.
inline TreedepthDecomposition strip_improvable(const Graph& g, const TreedepthDecomposition& t) {
    if (auto bad = validate_tdd(g, t)) throw InputError("strip_improvable: " + bad->message);
    std::vector<int> new_id(t.parent.size(), -1);
    TreedepthDecomposition out;
    for (int i = 0; i < t.num_nodes(); ++i)
        if (t.label[i] >= 0) {
            new_id[i] = out.num_nodes();
            out.label.push_back(t.label[i]);
            out.parent.push_back(-1);
        }
    for (int i = 0; i < t.num_nodes(); ++i) {
        if (new_id[i] < 0) continue;
        int p = t.parent[i];
        while (p >= 0 && new_id[p] < 0) p = t.parent[p];
        out.parent[new_id[i]] = p >= 0 ? new_id[p] : -1;
    }
    return out;
}

namespace detail {

/// Vertex sets of every subtree, as sorted lists indexed by node.
inline std::vector<std::vector<Vertex>> subtree_vertices(const TreedepthDecomposition& t) {
    std::vector<std::vector<Vertex>> sets(t.parent.size());
    auto depth = t.depths();
    std::vector<int> order(t.parent.size());
    for (int i = 0; i < t.num_nodes(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] > depth[b]; });
    for (int x : order) {
        if (t.label[x] >= 0) sets[x].push_back(t.label[x]);
        std::sort(sets[x].begin(), sets[x].end());
        if (t.parent[x] >= 0) {
            auto& p = sets[t.parent[x]];
            p.insert(p.end(), sets[x].begin(), sets[x].end());
        }
    }
    return sets;
}

inline bool induces_connected(const Graph& g, const std::vector<Vertex>& s) {
    return is_connected(induced_subgraph(g, s).graph);
}

/// Violating nodes sorted deepest-first, ties by smallest vertex.
inline std::vector<int> non_nice_nodes(const Graph& g, const TreedepthDecomposition& t) {
    auto sets = subtree_vertices(t);
    auto depth = t.depths();
    std::vector<int> bad;
    for (int x = 0; x < t.num_nodes(); ++x)
        if (t.label[x] < 0 || !induces_connected(g, sets[x])) bad.push_back(x);
    std::sort(bad.begin(), bad.end(), [&](int a, int b) {
        if (depth[a] != depth[b]) return depth[a] > depth[b];
        return t.label[a] < t.label[b];
    });
    return bad;
}

}  // namespace detail

/// nullopt when t has no unlabeled node and every subtree induces a connected
/// subgraph; otherwise the deepest violating node (ties by smallest vertex).
inline std::optional<int> is_nice(const Graph& g, const TreedepthDecomposition& t) {
    auto bad = detail::non_nice_nodes(g, t);
    if (bad.empty()) return std::nullopt;
    return bad.front();
}

/// Nice decomposition of a connected graph with height, ancestor sets and
/// descendant sets no larger than the input's. Repeatedly takes the deepest
/// violating node x, splits G[V(T_x)] into components and hangs each
/// component's part of T_x below the deepest ancestor of x adjacent to it.
/// Output nodes are indexed by vertex.
inline TreedepthDecomposition make_nice_tdd(const Graph& g, const TreedepthDecomposition& t) {
    if (!is_connected(g)) throw InputError("make_nice_tdd: graph is disconnected");
    auto stripped = strip_improvable(g, t);
    const Vertex n = g.num_vertices();
    // Re-index so that node v carries vertex v.
    std::vector<int> par(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < stripped.num_nodes(); ++i) {
        int p = stripped.parent[i];
        par[stripped.label[i]] = p >= 0 ? stripped.label[p] : -1;
    }
    auto cur = TreedepthDecomposition::from_parents(par);

    const long long cap = static_cast<long long>(n) * n + 1;
    for (long long iter = 0;; ++iter) {
        if (iter > cap) throw InternalError("make_nice_tdd: no fixed point reached");
        auto bad = detail::non_nice_nodes(g, cur);
        if (bad.empty()) break;
        const int x = bad.front();
        const auto members = detail::subtree_vertices(cur)[x];
        std::vector<char> in_sub(static_cast<std::size_t>(n), 0);
        for (Vertex v : members) in_sub[v] = 1;
        std::vector<int> path;  // strict ancestors of x, deepest first
        for (int a = cur.parent[x]; a >= 0; a = cur.parent[a]) path.push_back(a);

        auto sub = induced_subgraph(g, members);
        for (const auto& comp_local : connected_components(sub.graph)) {
            std::vector<char> in_comp(static_cast<std::size_t>(n), 0);
            for (Vertex lv : comp_local) in_comp[sub.to_original[lv]] = 1;
            int attach = -1;
            for (int a : path) {
                bool adjacent = false;
                for (Vertex w : g.neighbors(a))
                    if (in_comp[w]) {
                        adjacent = true;
                        break;
                    }
                if (adjacent) {
                    attach = a;
                    break;
                }
            }
            if (attach < 0) throw InternalError("make_nice_tdd: component with no adjacent ancestor");
            for (Vertex lv : comp_local) {
                Vertex v = sub.to_original[lv];
                int p = cur.parent[v];
                while (p >= 0 && in_sub[p] && !in_comp[p]) p = cur.parent[p];
                par[v] = (p >= 0 && in_comp[p]) ? p : attach;
            }
        }
        cur = TreedepthDecomposition::from_parents(par);
    }
    return cur;
}

}  // namespace treedepth
