#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "treedepth/errors.hpp"
#include "treedepth/graph.hpp"

namespace treedepth {

/// Tree of vertex bags. Bags are kept sorted; tree[i] lists the nodes adjacent
/// to node i.
struct TreeDecomposition {
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::vector<int>> tree;

    int num_nodes() const { return static_cast<int>(bags.size()); }

    int width() const {
        std::size_t m = 0;
        for (const auto& b : bags) m = std::max(m, b.size());
        return static_cast<int>(m) - 1;
    }

    std::vector<std::pair<int, int>> tree_edges() const {
        std::vector<std::pair<int, int>> out;
        for (int a = 0; a < num_nodes(); ++a)
            for (int b : tree[a])
                if (a < b) out.emplace_back(a, b);
        return out;
    }

    static TreeDecomposition from_edges(std::vector<std::vector<Vertex>> bags,
                                        const std::vector<std::pair<int, int>>& edges) {
        TreeDecomposition td;
        for (auto& b : bags) {
            std::sort(b.begin(), b.end());
            b.erase(std::unique(b.begin(), b.end()), b.end());
        }
        td.bags = std::move(bags);
        td.tree.assign(td.bags.size(), {});
        for (auto [a, b] : edges) {
            if (a < 0 || b < 0 || a >= td.num_nodes() || b >= td.num_nodes() || a == b)
                throw InputError("tree decomposition edge out of range");
            td.tree[a].push_back(b);
            td.tree[b].push_back(a);
        }
        for (auto& nb : td.tree) std::sort(nb.begin(), nb.end());
        return td;
    }

    friend bool operator==(const TreeDecomposition&, const TreeDecomposition&) = default;
};

/// Why a tree decomposition is rejected. Witness content depends on the
/// condition: the missing vertex, the uncovered edge's endpoints, or the vertex
/// whose bags are not connected in the tree.
struct TdViolation {
    enum class Condition { kStructure, kVertexCoverage, kEdgeCoverage, kConnectivity };
    Condition condition;
    std::vector<Vertex> witness;
    std::string message;
};

/// True when the bag graph is a tree (an empty node set counts as a tree).
inline bool is_tree_shaped(const TreeDecomposition& td) {
    const int n = td.num_nodes();
    if (td.tree.size() != static_cast<std::size_t>(n)) return false;
    if (n == 0) return true;
    std::size_t deg_sum = 0;
    for (const auto& nb : td.tree) deg_sum += nb.size();
    if (deg_sum != 2 * static_cast<std::size_t>(n - 1)) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 0;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        ++count;
        for (int y : td.tree[x])
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
    }
    return count == n;
}

/// Checks the three tree-decomposition conditions. Returns nullopt if valid.
inline std::optional<TdViolation> validate(const Graph& g, const TreeDecomposition& td) {
    using C = TdViolation::Condition;
    if (!is_tree_shaped(td)) return TdViolation{C::kStructure, {}, "bag graph is not a tree"};
    const Vertex n = g.num_vertices();
    std::vector<int> occurrences(static_cast<std::size_t>(n), 0);
    for (const auto& bag : td.bags)
        for (Vertex v : bag) {
            if (v < 0 || v >= n)
                return TdViolation{C::kStructure, {v}, "bag vertex " + std::to_string(v) + " out of range"};
            ++occurrences[v];
        }
    for (Vertex v = 0; v < n; ++v)
        if (occurrences[v] == 0)
            return TdViolation{C::kVertexCoverage, {v}, "vertex " + std::to_string(v) + " in no bag"};

    // For each vertex, its bags induce a forest; it is a subtree iff it has
    // exactly occurrences - 1 tree edges.
    std::vector<int> shared_edges(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> common;
    for (auto [a, b] : td.tree_edges()) {
        common.clear();
        std::set_intersection(td.bags[a].begin(), td.bags[a].end(), td.bags[b].begin(), td.bags[b].end(),
                              std::back_inserter(common));
        for (Vertex v : common) ++shared_edges[v];
    }
    for (Vertex v = 0; v < n; ++v)
        if (shared_edges[v] != occurrences[v] - 1)
            return TdViolation{C::kConnectivity, {v}, "bags containing vertex " + std::to_string(v) + " are disconnected"};

    // Edge coverage: mark, per vertex, the bags it lives in, then look for a
    // bag holding both endpoints.
    std::vector<std::vector<int>> bags_of(static_cast<std::size_t>(n));
    for (int x = 0; x < td.num_nodes(); ++x)
        for (Vertex v : td.bags[x]) bags_of[v].push_back(x);
    for (auto [u, v] : g.edges()) {
        const auto& bu = bags_of[u];
        const auto& bv = bags_of[v];
        bool covered = false;
        for (std::size_t i = 0, j = 0; i < bu.size() && j < bv.size();) {
            if (bu[i] == bv[j]) {
                covered = true;
                break;
            }
            bu[i] < bv[j] ? ++i : ++j;
        }
        if (!covered)
            return TdViolation{C::kEdgeCoverage, {u, v},
                               "edge " + std::to_string(u) + "-" + std::to_string(v) + " not covered by any bag"};
    }
    return std::nullopt;
}

enum class NiceKind { kLeaf, kIntroduce, kForget, kJoin };

inline const char* to_string(NiceKind k) {
    switch (k) {
        case NiceKind::kLeaf: return "leaf";
        case NiceKind::kIntroduce: return "introduce";
        case NiceKind::kForget: return "forget";
        case NiceKind::kJoin: return "join";
    }
    return "?";
}

struct NiceNode {
    NiceKind kind = NiceKind::kLeaf;
    std::vector<Vertex> bag;  // sorted
    Vertex vertex = -1;       // introduced / forgotten vertex
    std::vector<int> children;
};

/// Rooted nice tree decomposition. Children always precede their parent in
/// `nodes`, so a forward sweep is a valid post-order.
struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;

    int num_nodes() const { return static_cast<int>(nodes.size()); }

    int width() const {
        std::size_t m = 0;
        for (const auto& x : nodes) m = std::max(m, x.bag.size());
        return static_cast<int>(m) - 1;
    }

    TreeDecomposition as_tree_decomposition() const {
        std::vector<std::vector<Vertex>> bags;
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < num_nodes(); ++i) {
            bags.push_back(nodes[i].bag);
            for (int c : nodes[i].children) edges.emplace_back(c, i);
        }
        return TreeDecomposition::from_edges(std::move(bags), edges);
    }
};

/// Checks the per-kind shape rules and that children precede parents.
/// Returns a description of the first problem, nullopt if the audit passes.
inline std::optional<std::string> audit_nice(const NiceTreeDecomposition& nt) {
    if (nt.nodes.empty()) return nt.root == -1 ? std::nullopt : std::optional<std::string>("root set on empty tree");
    if (nt.root != nt.num_nodes() - 1) return "root is not the last node";
    std::vector<int> parents(nt.nodes.size(), 0);
    for (int i = 0; i < nt.num_nodes(); ++i) {
        const auto& x = nt.nodes[i];
        if (!std::is_sorted(x.bag.begin(), x.bag.end())) return "unsorted bag at node " + std::to_string(i);
        for (int c : x.children) {
            if (c < 0 || c >= i) return "child does not precede parent at node " + std::to_string(i);
            ++parents[c];
        }
        auto has = [&](const std::vector<Vertex>& b, Vertex v) { return std::binary_search(b.begin(), b.end(), v); };
        auto tag = " at node " + std::to_string(i);
        switch (x.kind) {
            case NiceKind::kLeaf:
                if (!x.children.empty() || x.bag.size() != 1) return "bad leaf" + tag;
                break;
            case NiceKind::kIntroduce: {
                if (x.children.size() != 1) return "introduce needs one child" + tag;
                const auto& cb = nt.nodes[x.children[0]].bag;
                if (!has(x.bag, x.vertex) || has(cb, x.vertex) || cb.size() + 1 != x.bag.size() ||
                    !std::includes(x.bag.begin(), x.bag.end(), cb.begin(), cb.end()))
                    return "bad introduce" + tag;
                break;
            }
            case NiceKind::kForget: {
                if (x.children.size() != 1) return "forget needs one child" + tag;
                const auto& cb = nt.nodes[x.children[0]].bag;
                if (has(x.bag, x.vertex) || !has(cb, x.vertex) || x.bag.size() + 1 != cb.size() ||
                    !std::includes(cb.begin(), cb.end(), x.bag.begin(), x.bag.end()))
                    return "bad forget" + tag;
                break;
            }
            case NiceKind::kJoin:
                if (x.children.size() != 2 || nt.nodes[x.children[0]].bag != x.bag ||
                    nt.nodes[x.children[1]].bag != x.bag)
                    return "bad join" + tag;
                break;
        }
    }
    for (int i = 0; i < nt.num_nodes(); ++i)
        if (parents[i] != (i == nt.root ? 0 : 1)) return "node " + std::to_string(i) + " has wrong parent count";
    return std::nullopt;
}

namespace detail {

/// Contracts every tree edge whose one bag is contained in the other. Returns
/// the surviving decomposition and the new id of original node `keep`.
inline std::pair<TreeDecomposition, int> compress_subset_bags(const TreeDecomposition& td, int keep) {
    const int n = td.num_nodes();
    std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) adj[a].insert(td.tree[a].begin(), td.tree[a].end());
    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    std::vector<int> rep(static_cast<std::size_t>(n));
    std::iota(rep.begin(), rep.end(), 0);
    auto subset = [&](int a, int b) {
        return std::includes(td.bags[b].begin(), td.bags[b].end(), td.bags[a].begin(), td.bags[a].end());
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n; ++a) {
            if (!alive[a]) continue;
            for (int b : adj[a]) {
                if (!subset(a, b)) continue;
                // merge a into b
                for (int c : adj[a])
                    if (c != b) {
                        adj[c].erase(a);
                        adj[c].insert(b);
                        adj[b].insert(c);
                    }
                adj[b].erase(a);
                adj[a].clear();
                alive[a] = 0;
                rep[a] = b;
                changed = true;
                break;
            }
        }
    }
    std::vector<int> new_id(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<Vertex>> bags;
    for (int a = 0; a < n; ++a)
        if (alive[a]) {
            new_id[a] = static_cast<int>(bags.size());
            bags.push_back(td.bags[a]);
        }
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
        if (alive[a])
            for (int b : adj[a])
                if (a < b) edges.emplace_back(new_id[a], new_id[b]);
    int k = keep;
    if (n > 0) {
        while (rep[k] != k) k = rep[k];
    }
    return {TreeDecomposition::from_edges(std::move(bags), edges), n > 0 ? new_id[k] : -1};
}

/// Decomposition induced by eliminating vertices in `order`: the bag of v is v
/// plus its neighbors at elimination time, attached to the earliest-eliminated
/// of those neighbors. Elimination-forest roots are chained together.
inline TreeDecomposition decomposition_from_elimination(const Graph& g, const std::vector<Vertex>& order) {
    const Vertex n = g.num_vertices();
    std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    std::vector<std::vector<Vertex>> bags(static_cast<std::size_t>(n));
    std::vector<std::pair<int, int>> edges;
    std::vector<int> roots;
    for (Vertex v : order) {
        std::vector<Vertex> later(adj[v].begin(), adj[v].end());
        bags[v] = later;
        bags[v].push_back(v);
        if (later.empty()) {
            roots.push_back(v);
        } else {
            Vertex p = *std::min_element(later.begin(), later.end(), [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
            edges.emplace_back(v, p);
        }
        for (std::size_t i = 0; i < later.size(); ++i) {
            adj[later[i]].erase(v);
            for (std::size_t j = i + 1; j < later.size(); ++j) {
                adj[later[i]].insert(later[j]);
                adj[later[j]].insert(later[i]);
            }
        }
    }
    for (std::size_t i = 1; i < roots.size(); ++i) edges.emplace_back(roots[i - 1], roots[i]);
    auto td = TreeDecomposition::from_edges(std::move(bags), edges);
    return compress_subset_bags(td, 0).first;
}

}  // namespace detail

/// Nice form of a structurally valid decomposition. Bags contained in a
/// neighbor are contracted first, so the node count stays within
/// 4 * n * (width + 1). Introduce/forget chains run in increasing vertex id
/// (forgets before introduces), high-degree nodes become chains of binary
/// joins, and the root is the node that absorbed input node 0.
inline NiceTreeDecomposition make_nice(const TreeDecomposition& td) {
    if (!is_tree_shaped(td)) throw InputError("make_nice: bag graph is not a tree");
    NiceTreeDecomposition nt;
    if (td.num_nodes() == 0) return nt;
    auto [small, root] = detail::compress_subset_bags(td, 0);
    if (small.num_nodes() == 1 && small.bags[0].empty()) return nt;

    auto push = [&](NiceNode node) {
        nt.nodes.push_back(std::move(node));
        return nt.num_nodes() - 1;
    };

    // Iterative post-order over the compressed tree.
    const int m = small.num_nodes();
    std::vector<int> parent(static_cast<std::size_t>(m), -1), order;
    std::vector<int> stack{root};
    std::vector<char> seen(static_cast<std::size_t>(m), 0);
    seen[root] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        order.push_back(x);
        for (int y : small.tree[x])
            if (!seen[y]) {
                seen[y] = 1;
                parent[y] = x;
                stack.push_back(y);
            }
    }
    std::reverse(order.begin(), order.end());

    std::vector<int> top(static_cast<std::size_t>(m), -1);  // nice node representing each bag
    for (int x : order) {
        const auto& bag = small.bags[x];
        std::vector<int> branches;
        std::vector<int> kids;
        for (int y : small.tree[x])
            if (y != parent[x]) kids.push_back(y);
        std::sort(kids.begin(), kids.end());
        for (int y : kids) {
            int cur = top[y];
            std::vector<Vertex> cur_bag = small.bags[y];
            std::vector<Vertex> drop, add;
            std::set_difference(cur_bag.begin(), cur_bag.end(), bag.begin(), bag.end(), std::back_inserter(drop));
            std::set_difference(bag.begin(), bag.end(), cur_bag.begin(), cur_bag.end(), std::back_inserter(add));
            for (Vertex v : drop) {
                cur_bag.erase(std::find(cur_bag.begin(), cur_bag.end(), v));
                cur = push({NiceKind::kForget, cur_bag, v, {cur}});
            }
            for (Vertex v : add) {
                cur_bag.insert(std::upper_bound(cur_bag.begin(), cur_bag.end(), v), v);
                cur = push({NiceKind::kIntroduce, cur_bag, v, {cur}});
            }
            branches.push_back(cur);
        }
        if (branches.empty()) {
            std::vector<Vertex> cur_bag{bag.front()};
            int cur = push({NiceKind::kLeaf, cur_bag, -1, {}});
            for (std::size_t i = 1; i < bag.size(); ++i) {
                cur_bag.push_back(bag[i]);
                cur = push({NiceKind::kIntroduce, cur_bag, bag[i], {cur}});
            }
            branches.push_back(cur);
        }
        int cur = branches[0];
        for (std::size_t i = 1; i < branches.size(); ++i) cur = push({NiceKind::kJoin, bag, -1, {cur, branches[i]}});
        top[x] = cur;
    }
    nt.root = top[root];
    return nt;
}

/// make_nice after checking the decomposition against its graph.
inline NiceTreeDecomposition make_nice(const Graph& g, const TreeDecomposition& td) {
    if (auto bad = validate(g, td)) throw InputError("make_nice: invalid tree decomposition: " + bad->message);
    return make_nice(td);
}

/// Path decomposition whose bags, in DFS preorder, are the root-to-vertex paths
/// of the DFS tree. Width is height(t) - 1.
inline TreeDecomposition path_decomposition_from_dfs(const DfsTree& t) {
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<int, int>> edges;
    for (Vertex v : t.preorder) {
        std::vector<Vertex> bag;
        for (Vertex x = v; x != -1; x = t.parent[x]) bag.push_back(x);
        bags.push_back(std::move(bag));
        if (bags.size() > 1) edges.emplace_back(static_cast<int>(bags.size()) - 2, static_cast<int>(bags.size()) - 1);
    }
    return TreeDecomposition::from_edges(std::move(bags), edges);
}

/// Clique tree of a chordal graph: each bag is a maximal clique.
inline TreeDecomposition clique_tree(const Graph& g, const EliminationOrder& peo) {
    if (!is_perfect_elimination_order(g, peo)) throw InputError("clique_tree: not a perfect elimination order");
    return detail::decomposition_from_elimination(g, peo.order());
}

/// Min-fill elimination ordering (ties: min degree, then smallest id) turned
/// into a tree decomposition. Always valid; no width guarantee.
inline TreeDecomposition heuristic_decomposition(const Graph& g) {
    const Vertex n = g.num_vertices();
    std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());
    auto fill_of = [&](Vertex v) {
        std::size_t missing = 0;
        for (auto i = adj[v].begin(); i != adj[v].end(); ++i)
            for (auto j = std::next(i); j != adj[v].end(); ++j)
                if (!adj[*i].count(*j)) ++missing;
        return missing;
    };
    std::vector<std::size_t> fill(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) fill[v] = fill_of(v);
    std::vector<char> gone(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> order;
    for (Vertex step = 0; step < n; ++step) {
        Vertex best = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (gone[v]) continue;
            if (best < 0 || fill[v] < fill[best] || (fill[v] == fill[best] && adj[v].size() < adj[best].size()))
                best = v;
        }
        order.push_back(best);
        gone[best] = 1;
        std::vector<Vertex> nb(adj[best].begin(), adj[best].end());
        for (Vertex a : nb) {
            adj[a].erase(best);
            for (Vertex b : nb)
                if (a != b) adj[a].insert(b);
        }
        adj[best].clear();
        std::set<Vertex> touched(nb.begin(), nb.end());
        for (Vertex a : nb) touched.insert(adj[a].begin(), adj[a].end());
        for (Vertex v : touched) fill[v] = fill_of(v);
    }
    return detail::decomposition_from_elimination(g, order);
}

/// Adds r to every bag and hangs a fresh leaf {r} under every former leaf,
/// which turns into an introduce node for its old vertex.
inline NiceTreeDecomposition root_and_augment(const NiceTreeDecomposition& nt, Vertex r) {
    NiceTreeDecomposition out;
    if (nt.nodes.empty()) {
        out.nodes.push_back({NiceKind::kLeaf, {r}, -1, {}});
        out.root = 0;
        return out;
    }
    std::vector<int> new_id(nt.nodes.size());
    for (int i = 0; i < nt.num_nodes(); ++i) {
        NiceNode x = nt.nodes[i];
        if (std::binary_search(x.bag.begin(), x.bag.end(), r))
            throw InputError("root_and_augment: vertex " + std::to_string(r) + " already in a bag");
        x.bag.insert(std::upper_bound(x.bag.begin(), x.bag.end(), r), r);
        for (int& c : x.children) c = new_id[c];
        if (x.kind == NiceKind::kLeaf) {
            out.nodes.push_back({NiceKind::kLeaf, {r}, -1, {}});
            x.kind = NiceKind::kIntroduce;
            x.vertex = nt.nodes[i].bag.front();
            x.children = {out.num_nodes() - 1};
        }
        out.nodes.push_back(std::move(x));
        new_id[i] = out.num_nodes() - 1;
    }
    out.root = new_id[nt.root];
    return out;
}

}  // namespace treedepth
