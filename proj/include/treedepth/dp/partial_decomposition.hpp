#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treedepth/errors.hpp"
#include "treedepth/graph.hpp"
#include "treedepth/td_decomposition.hpp"

namespace treedepth::dp {

/// A DP table entry (F, X, h). Nodes are indices; label[i] is the vertex a
/// named node stands for (always a boundary vertex) or -1 for an anonymous node.
struct PartialDecomposition {
    std::vector<int> parent;  // -1 for roots
    std::vector<Vertex> label;
    std::vector<int> h;
    std::vector<Vertex> boundary;  // sorted

    int num_nodes() const { return static_cast<int>(parent.size()); }

    int height() const {
        int best = 0;
        for (int i = 0; i < num_nodes(); ++i)
            if (parent[i] < 0) best = std::max(best, h[i]);
        return best;
    }

    int node_of(Vertex v) const {
        for (int i = 0; i < num_nodes(); ++i)
            if (label[i] == v) return i;
        return -1;
    }

    std::vector<std::vector<int>> children() const {
        std::vector<std::vector<int>> out(parent.size());
        for (int i = 0; i < num_nodes(); ++i)
            if (parent[i] >= 0) out[parent[i]].push_back(i);
        return out;
    }

    bool is_path() const {
        int roots = 0;
        std::vector<int> kids(parent.size(), 0);
        for (int i = 0; i < num_nodes(); ++i) {
            if (parent[i] < 0)
                ++roots;
            else if (++kids[parent[i]] > 1)
                return false;
        }
        return roots <= 1;
    }
};

/// Checks the structural invariants every stored entry satisfies: forest,
/// boundary vertices named exactly once, only boundary vertices named, leaves
/// named, h strictly decreasing downwards and at least 1 + max child h.
inline std::optional<std::string> check_invariants(const PartialDecomposition& pd) {
    const int n = pd.num_nodes();
    if (pd.label.size() != pd.parent.size() || pd.h.size() != pd.parent.size()) return "field sizes differ";
    if (!std::is_sorted(pd.boundary.begin(), pd.boundary.end())) return "boundary not sorted";
    TreedepthDecomposition shape{pd.parent, pd.label};
    if (!has_acyclic_parents(shape)) return "parent links are not a forest";
    std::vector<Vertex> named;
    std::vector<int> kids(static_cast<std::size_t>(n), 0), max_child(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (pd.label[i] >= 0) named.push_back(pd.label[i]);
        if (pd.h[i] < 1) return "non-positive height";
        if (pd.parent[i] >= 0) {
            ++kids[pd.parent[i]];
            max_child[pd.parent[i]] = std::max(max_child[pd.parent[i]], pd.h[i]);
        }
    }
    std::sort(named.begin(), named.end());
    if (named != pd.boundary) return "named nodes differ from the boundary";
    for (int i = 0; i < n; ++i) {
        if (kids[i] == 0 && pd.label[i] < 0) return "anonymous leaf";
        if (kids[i] > 0 && pd.h[i] < max_child[i] + 1) return "height not above children";
    }
    return std::nullopt;
}

struct Restriction {
    PartialDecomposition pd;
    std::vector<int> to_old;  // new node -> node of the input
};

/// Deletes leaves outside x_new until none remain, i.e. keeps exactly the
/// nodes with a descendant-or-self in x_new. Surviving names outside x_new
/// become anonymous. Node order is preserved.
inline Restriction restrict_with_map(const PartialDecomposition& pd, const std::vector<Vertex>& x_new) {
    if (!std::is_sorted(x_new.begin(), x_new.end()) ||
        !std::includes(pd.boundary.begin(), pd.boundary.end(), x_new.begin(), x_new.end()))
        throw InputError("restrict: target set is not a subset of the boundary");
    const int n = pd.num_nodes();
    std::vector<char> keep(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (pd.label[i] < 0 || !std::binary_search(x_new.begin(), x_new.end(), pd.label[i])) continue;
        for (int x = i; x >= 0 && !keep[x]; x = pd.parent[x]) keep[x] = 1;
    }
    Restriction out;
    std::vector<int> new_id(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i)
        if (keep[i]) {
            new_id[i] = static_cast<int>(out.to_old.size());
            out.to_old.push_back(i);
        }
    auto& r = out.pd;
    r.boundary = x_new;
    for (int old : out.to_old) {
        int p = pd.parent[old];
        r.parent.push_back(p >= 0 ? new_id[p] : -1);
        Vertex v = pd.label[old];
        r.label.push_back(v >= 0 && std::binary_search(x_new.begin(), x_new.end(), v) ? v : -1);
        r.h.push_back(pd.h[old]);
    }
    return out;
}

inline PartialDecomposition restrict(const PartialDecomposition& pd, const std::vector<Vertex>& x_new) {
    return restrict_with_map(pd, x_new).pd;
}

/// Byte string that is equal for two entries iff they are equivalent: same
/// boundary and an isomorphism fixing named nodes and preserving h. Each
/// subtree is written as `(` label h children... `)` with children sorted;
/// label (+1, so anonymous is 0) and h take four bytes each, so the encoding
/// parses uniquely. Not meant to be human readable.
inline std::string canonical_key(const PartialDecomposition& pd) {
    const int n = pd.num_nodes();
    auto put = [](std::string& s, std::int64_t v) {
        const auto u = static_cast<std::uint32_t>(v);
        for (int shift = 24; shift >= 0; shift -= 8) s += static_cast<char>((u >> shift) & 0xffu);
    };
    auto kids = pd.children();
    // Encode deepest nodes first so children are ready before their parent.
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        if (pd.parent[i] < 0) order.push_back(i);
    for (std::size_t k = 0; k < order.size(); ++k)
        for (int c : kids[order[k]]) order.push_back(c);
    std::vector<std::string> code(static_cast<std::size_t>(n));
    std::vector<std::string> parts;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int x = *it;
        parts.clear();
        std::size_t len = 10;
        for (int c : kids[x]) {
            len += code[c].size();
            parts.push_back(std::move(code[c]));
        }
        std::sort(parts.begin(), parts.end());
        std::string s;
        s.reserve(len);
        s += '(';
        put(s, static_cast<std::int64_t>(pd.label[x]) + 1);
        put(s, pd.h[x]);
        for (auto& p : parts) s += p;
        s += ')';
        code[x] = std::move(s);
    }
    parts.clear();
    for (int i = 0; i < n; ++i)
        if (pd.parent[i] < 0) parts.push_back(std::move(code[i]));
    std::sort(parts.begin(), parts.end());
    std::string key;
    put(key, static_cast<std::int64_t>(pd.boundary.size()));
    for (Vertex v : pd.boundary) put(key, v);
    for (auto& p : parts) key += p;
    return key;
}

/// Full partial decomposition of a labeled treedepth decomposition: every
/// node keeps its vertex name, h is the height of its subtree, and the
/// boundary is the set of all labels.
inline PartialDecomposition from_treedepth_decomposition(const TreedepthDecomposition& t) {
    PartialDecomposition pd;
    pd.parent = t.parent;
    pd.label = t.label;
    pd.h.assign(t.parent.size(), 1);
    auto depth = t.depths();
    std::vector<int> order(t.parent.size());
    for (int i = 0; i < t.num_nodes(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return depth[a] > depth[b]; });
    for (int x : order)
        if (t.parent[x] >= 0) pd.h[t.parent[x]] = std::max(pd.h[t.parent[x]], pd.h[x] + 1);
    for (Vertex v : t.label)
        if (v >= 0) pd.boundary.push_back(v);
    std::sort(pd.boundary.begin(), pd.boundary.end());
    return pd;
}

}  // namespace treedepth::dp
