#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "treedepth/errors.hpp"

namespace treedepth {

using Vertex = std::int32_t;

/// Simple undirected graph on the dense vertex range [0, n).
///
/// Immutable after construction. Neighbor lists are sorted, so adjacency
/// queries are a binary search and iteration order is deterministic.
class Graph {
public:
    Graph() = default;

    explicit Graph(Vertex n) : adj_(static_cast<std::size_t>(check_count(n))) {}

    /// Builds the graph, rejecting self-loops, parallel edges and out-of-range
    /// endpoints with an InputError.
    Graph(Vertex n, std::span<const std::pair<Vertex, Vertex>> edges) : Graph(n) {
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw InputError("edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
            if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
        for (Vertex v = 0; v < n; ++v) {
            const auto& nb = adj_[v];
            auto dup = std::adjacent_find(nb.begin(), nb.end());
            if (dup != nb.end())
                throw InputError("duplicate edge " + std::to_string(v) + "-" + std::to_string(*dup));
        }
        edge_count_ = edges.size();
    }

    Graph(Vertex n, std::initializer_list<std::pair<Vertex, Vertex>> edges)
        : Graph(n, std::span<const std::pair<Vertex, Vertex>>(edges.begin(), edges.size())) {}

    Vertex num_vertices() const noexcept { return static_cast<Vertex>(adj_.size()); }
    std::size_t num_edges() const noexcept { return edge_count_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
    std::size_t degree(Vertex v) const { return neighbors(v).size(); }

    bool has_edge(Vertex u, Vertex v) const {
        if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices()) return false;
        const auto& nb = adj_[u];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    /// All edges as (u, v) with u < v, lexicographically sorted.
    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(edge_count_);
        for (Vertex u = 0; u < num_vertices(); ++u)
            for (Vertex v : adj_[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

private:
    static Vertex check_count(Vertex n) {
        if (n < 0) throw InputError("negative vertex count");
        return n;
    }

    std::vector<std::vector<Vertex>> adj_;
    std::size_t edge_count_ = 0;
};

/// Graph with a designated universal vertex.
struct RootedGraph {
    Graph graph;
    Vertex root = 0;
};

/// Rooted DFS tree of a connected graph. Root has parent -1 and depth 1.
struct DfsTree {
    std::vector<Vertex> parent;
    std::vector<int> depth;
    std::vector<Vertex> preorder;
    Vertex root = 0;

    int height() const { return depth.empty() ? 0 : *std::max_element(depth.begin(), depth.end()); }
};

/// Vertex ordering with its inverse. order[0] is eliminated first.
class EliminationOrder {
public:
    EliminationOrder() = default;

    explicit EliminationOrder(std::vector<Vertex> order) : order_(std::move(order)), position_(order_.size(), -1) {
        for (std::size_t i = 0; i < order_.size(); ++i) {
            Vertex v = order_[i];
            if (v < 0 || static_cast<std::size_t>(v) >= order_.size() || position_[v] != -1)
                throw InputError("elimination order is not a permutation");
            position_[v] = static_cast<int>(i);
        }
    }

    const std::vector<Vertex>& order() const noexcept { return order_; }
    const std::vector<int>& position() const noexcept { return position_; }
    std::size_t size() const noexcept { return order_.size(); }

private:
    std::vector<Vertex> order_;
    std::vector<int> position_;
};

struct InducedSubgraph {
    Graph graph;
    /// to_original[i] is the vertex of the source graph that became vertex i.
    std::vector<Vertex> to_original;
};

/// G[s], relabelled contiguously in increasing order of the original ids.
inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> s) {
    std::vector<Vertex> vs(s.begin(), s.end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::vector<Vertex> local(static_cast<std::size_t>(g.num_vertices()), -1);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] < 0 || vs[i] >= g.num_vertices())
            throw InputError("induced_subgraph: vertex " + std::to_string(vs[i]) + " out of range");
        local[vs[i]] = static_cast<Vertex>(i);
    }
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u : vs)
        for (Vertex w : g.neighbors(u))
            if (u < w && local[w] >= 0) edges.emplace_back(local[u], local[w]);
    return {Graph(static_cast<Vertex>(vs.size()), edges), std::move(vs)};
}

/// Connected components, each sorted, ordered by smallest member.
inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    const Vertex n = g.num_vertices();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<Vertex>> comps;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        comps.emplace_back();
        auto& comp = comps.back();
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (Vertex w : g.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
    }
    return comps;
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

/// Adds vertex n adjacent to every original vertex.
inline RootedGraph add_universal_root(const Graph& g) {
    const Vertex n = g.num_vertices();
    auto edges = g.edges();
    for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, n);
    return {Graph(n + 1, edges), n};
}

/// Iterative DFS from the smallest vertex, always descending into the smallest
/// unvisited neighbor. Returns nullopt as soon as some vertex would land at
/// depth depth_cap + 1.
inline std::optional<DfsTree> dfs_tree_capped(const Graph& g, int depth_cap) {
    if (depth_cap < 1) throw InputError("dfs_tree_capped: depth cap must be positive");
    if (!is_connected(g)) throw InputError("dfs_tree_capped: graph is disconnected");
    const Vertex n = g.num_vertices();
    DfsTree t;
    if (n == 0) return t;
    t.parent.assign(static_cast<std::size_t>(n), -1);
    t.depth.assign(static_cast<std::size_t>(n), 0);
    t.root = 0;
    t.depth[0] = 1;
    t.preorder.push_back(0);
    // (vertex, index of next neighbor to try)
    std::vector<std::pair<Vertex, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto& [v, next] = stack.back();
        auto nb = g.neighbors(v);
        while (next < nb.size() && t.depth[nb[next]] != 0) ++next;
        if (next == nb.size()) {
            stack.pop_back();
            continue;
        }
        Vertex w = nb[next++];
        int d = t.depth[v] + 1;
        if (d > depth_cap) return std::nullopt;
        t.parent[w] = v;
        t.depth[w] = d;
        t.preorder.push_back(w);
        stack.emplace_back(w, 0);
    }
    return t;
}

/// True iff every vertex's later neighbors (w.r.t. the order) form a clique.
inline bool is_perfect_elimination_order(const Graph& g, const EliminationOrder& peo) {
    if (peo.size() != static_cast<std::size_t>(g.num_vertices())) return false;
    const auto& pos = peo.position();
    for (Vertex v : peo.order()) {
        Vertex first = -1;
        for (Vertex w : g.neighbors(v))
            if (pos[w] > pos[v] && (first < 0 || pos[w] < pos[first])) first = w;
        if (first < 0) continue;
        for (Vertex w : g.neighbors(v))
            if (pos[w] > pos[v] && w != first && !g.has_edge(first, w)) return false;
    }
    return true;
}

/// Maximum cardinality search; the reverse visit order is returned when it is
/// a perfect elimination order, nullopt otherwise (the graph is not chordal).
inline std::optional<EliminationOrder> is_chordal(const Graph& g) {
    const Vertex n = g.num_vertices();
    std::vector<int> weight(static_cast<std::size_t>(n), 0);
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    // ordered by (-weight, vertex): picks max weight, smallest id
    std::set<std::pair<int, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v) queue.emplace(0, v);
    std::vector<Vertex> visit;
    visit.reserve(static_cast<std::size_t>(n));
    while (!queue.empty()) {
        Vertex v = queue.begin()->second;
        queue.erase(queue.begin());
        done[v] = 1;
        visit.push_back(v);
        for (Vertex w : g.neighbors(v)) {
            if (done[w]) continue;
            queue.erase({-weight[w], w});
            ++weight[w];
            queue.emplace(-weight[w], w);
        }
    }
    std::reverse(visit.begin(), visit.end());
    EliminationOrder peo(std::move(visit));
    if (!is_perfect_elimination_order(g, peo)) return std::nullopt;
    return peo;
}

/// Clique number of a chordal graph from a perfect elimination order.
inline int max_clique_size_chordal(const Graph& g, const EliminationOrder& peo) {
    if (!is_perfect_elimination_order(g, peo)) throw InputError("not a perfect elimination order");
    const auto& pos = peo.position();
    int best = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        int later = 0;
        for (Vertex w : g.neighbors(v))
            if (pos[w] > pos[v]) ++later;
        best = std::max(best, later + 1);
    }
    return best;
}

}  // namespace treedepth
