#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "treedepth/errors.hpp"
#include "treedepth/graph.hpp"
#include "treedepth/td_decomposition.hpp"

namespace treedepth {

struct OracleResult {
    int value = 0;
    TreedepthDecomposition decomposition;
};

namespace detail {

class SubsetOracle {
public:
    explicit SubsetOracle(const Graph& g) : n_(g.num_vertices()), memo_(std::size_t{1} << n_, -1) {
        adj_.assign(static_cast<std::size_t>(n_), 0);
        for (Vertex v = 0; v < n_; ++v)
            for (Vertex w : g.neighbors(v)) adj_[v] |= std::uint32_t{1} << w;
    }

    int td(std::uint32_t s) {
        if (s == 0) return 0;
        if (memo_[s] >= 0) return memo_[s];
        int best;
        auto comps = components(s);
        if (comps.size() > 1) {
            best = 0;
            for (auto c : comps) best = std::max(best, td(c));
        } else {
            best = n_ + 1;
            for (std::uint32_t rest = s; rest; rest &= rest - 1) {
                int v = __builtin_ctz(rest);
                best = std::min(best, 1 + td(s & ~(std::uint32_t{1} << v)));
            }
        }
        memo_[s] = static_cast<std::int8_t>(best);
        return best;
    }

    /// Writes a decomposition of G[s] of height td(s) into `parent`, hanging
    /// its roots below `above`.
    void build(std::uint32_t s, int above, std::vector<int>& parent) {
        if (s == 0) return;
        auto comps = components(s);
        if (comps.size() > 1) {
            for (auto c : comps) build(c, above, parent);
            return;
        }
        const int target = td(s);
        for (std::uint32_t rest = s; rest; rest &= rest - 1) {
            int v = __builtin_ctz(rest);
            std::uint32_t without = s & ~(std::uint32_t{1} << v);
            if (1 + td(without) == target) {
                parent[v] = above;
                build(without, v, parent);
                return;
            }
        }
        throw InternalError("oracle: no vertex attains the memoized value");
    }

    std::vector<std::uint32_t> components(std::uint32_t s) const {
        std::vector<std::uint32_t> out;
        while (s) {
            std::uint32_t comp = s & (~s + 1), frontier = comp;
            while (frontier) {
                std::uint32_t next = 0;
                for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj_[__builtin_ctz(f)];
                next &= s & ~comp;
                comp |= next;
                frontier = next;
            }
            out.push_back(comp);
            s &= ~comp;
        }
        return out;
    }

private:
    int n_;
    std::vector<std::uint32_t> adj_;
    std::vector<std::int8_t> memo_;
};

}  // namespace detail

inline constexpr Vertex kOracleMaxVertices = 20;

/// Exact treedepth by td(S) = max over components, and for connected S,
/// 1 + min over v of td(S - v); memoized on vertex bitmasks.
inline OracleResult oracle_treedepth(const Graph& g) {
    const Vertex n = g.num_vertices();
    if (n > kOracleMaxVertices) throw InputError("oracle: at most 20 vertices supported");
    detail::SubsetOracle o(g);
    const std::uint32_t all = n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
    OracleResult res;
    res.value = o.td(all);
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    o.build(all, -1, parent);
    res.decomposition = TreedepthDecomposition::from_parents(std::move(parent));
    return res;
}

/// Height of the elimination forest of `order` (order[0] eliminated first):
/// each vertex's parent is its earliest-eliminated later neighbor in the
/// filled graph.
inline int elimination_tree_height(const Graph& g, const std::vector<Vertex>& order) {
    const Vertex n = g.num_vertices();
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    for (Vertex v : order) {
        std::vector<Vertex> later;
        for (Vertex w = 0; w < n; ++w)
            if (adj[v][w] && pos[w] > pos[v]) later.push_back(w);
        for (Vertex a : later)
            for (Vertex b : later)
                if (a != b) adj[a][b] = 1;
        if (!later.empty())
            parent[v] = *std::min_element(later.begin(), later.end(), [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
    }
    return height(TreedepthDecomposition::from_parents(std::move(parent)));
}

/// Second oracle: minimum elimination-forest height over all orderings.
inline int oracle_treedepth_by_orderings(const Graph& g) {
    const Vertex n = g.num_vertices();
    if (n > 9) throw InputError("ordering oracle: at most 9 vertices supported");
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    int best = n;
    do {
        best = std::min(best, elimination_tree_height(g, order));
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

inline constexpr Vertex kEnumerateMaxVertices = 8;

/// Every nice treedepth decomposition of connected g whose root is `root` and
/// whose height is at most max_height. Below a node v, each child subtree is
/// exactly one component of the remaining vertices, rooted at any of its
/// vertices. Decompositions are indexed by vertex.
inline std::vector<TreedepthDecomposition> enumerate_nice_tdds(const Graph& g, Vertex root, int max_height) {
    const Vertex n = g.num_vertices();
    if (n > kEnumerateMaxVertices) throw InputError("enumerate_nice_tdds: at most 8 vertices supported");
    if (root < 0 || root >= n) throw InputError("enumerate_nice_tdds: root out of range");
    if (!is_connected(g)) throw InputError("enumerate_nice_tdds: graph is disconnected");
    detail::SubsetOracle helper(g);
    std::vector<TreedepthDecomposition> out;
    std::vector<int> parent(static_cast<std::size_t>(n), -1);

    // Pending work items: (vertex set, parent, remaining height) to be rooted.
    struct Item {
        std::uint32_t set;
        int above;
        int room;
    };
    std::vector<Item> pending;
    std::function<void()> step = [&]() {
        if (pending.empty()) {
            out.push_back(TreedepthDecomposition::from_parents(parent));
            return;
        }
        Item item = pending.back();
        pending.pop_back();
        if (item.room >= 1) {
            for (std::uint32_t rest = item.set; rest; rest &= rest - 1) {
                int v = __builtin_ctz(rest);
                if (item.above == -1 && v != root) continue;
                parent[v] = item.above;
                auto comps = helper.components(item.set & ~(std::uint32_t{1} << v));
                for (auto c : comps) pending.push_back({c, v, item.room - 1});
                step();
                pending.resize(pending.size() - comps.size());
                parent[v] = -1;
            }
        }
        pending.push_back(item);
    };
    const std::uint32_t all = static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);
    if (n > 0) {
        pending.push_back({all, -1, max_height});
        step();
    }
    return out;
}

}  // namespace treedepth
