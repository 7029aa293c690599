#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "treedepth/dp/extensions.hpp"
#include "treedepth/dp/partial_decomposition.hpp"
#include "treedepth/dp/table.hpp"
#include "treedepth/dp/witness.hpp"
#include "treedepth/errors.hpp"
#include "treedepth/graph.hpp"

namespace treedepth::dp {

struct OperationOptions {
    int budget = 1;
    /// Keep only forests that are a single path.
    bool path_only = false;
    /// Generate candidate trees without reference to the child entries and
    /// search witnesses explicitly. Exponentially slower; for cross-checks.
    bool naive = false;
    std::size_t table_cap = 0;
};

inline DpTable leaf_table(Vertex r, std::size_t cap = 0) {
    DpTable t({r}, cap);
    t.insert({{-1}, {r}, {1}, {r}}, {NiceKind::kLeaf, -1, -1, {}, {}});
    return t;
}

inline DpTable forget(const DpTable& table, Vertex u, std::size_t cap = 0) {
    const auto& x = table.boundary();
    if (!std::binary_search(x.begin(), x.end(), u)) throw InputError("forget: vertex not in the boundary");
    std::vector<Vertex> x_new;
    for (Vertex v : x)
        if (v != u) x_new.push_back(v);
    DpTable out(x_new, cap);
    for (std::size_t i = 0; i < table.size(); ++i) {
        auto r = restrict_with_map(table[i].pd, x_new);
        out.insert(std::move(r.pd), {NiceKind::kForget, static_cast<int>(i), -1, std::move(r.to_old), {}});
    }
    return out;
}

namespace detail {

/// h from the bottom up: h(z) = max(1 + max over children, alpha(z)).
inline std::vector<int> heights_from(const std::vector<int>& parent, const std::vector<int>& alpha) {
    const int n = static_cast<int>(parent.size());
    // Depths by walking up until a node with a known depth.
    std::vector<int> depth(static_cast<std::size_t>(n), 0), by_depth(static_cast<std::size_t>(n));
    int max_depth = 0;
    for (int i = 0; i < n; ++i) {
        int len = 0, x = i;
        while (x >= 0 && depth[x] == 0) {
            ++len;
            x = parent[x];
        }
        int d = (x >= 0 ? depth[x] : 0) + len;
        for (int y = i; y >= 0 && depth[y] == 0; y = parent[y]) depth[y] = d--;
        max_depth = std::max(max_depth, depth[i]);
    }
    // Counting sort, deepest first.
    std::vector<int> start(static_cast<std::size_t>(max_depth) + 2, 0);
    for (int i = 0; i < n; ++i) ++start[max_depth - depth[i] + 1];
    for (std::size_t k = 1; k < start.size(); ++k) start[k] += start[k - 1];
    for (int i = 0; i < n; ++i) by_depth[start[max_depth - depth[i]]++] = i;
    std::vector<int> h(static_cast<std::size_t>(n), 1);
    for (int i = 0; i < n; ++i) h[i] = std::max(1, alpha[i]);
    for (int z : by_depth)
        if (parent[z] >= 0) h[parent[z]] = std::max(h[parent[z]], h[z] + 1);
    return h;
}

inline int root_of(const std::vector<int>& parent) {
    int root = -1;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i)
        if (parent[i] < 0) {
            if (root >= 0) throw InternalError("stored forest has more than one root");
            root = i;
        }
    return root;
}

/// Ancestor matrix of a forest: below(a, b) iff a is a strict ancestor of b.
inline void add_ancestors(const std::vector<int>& parent, const std::vector<int>& image, BitMatrix& below) {
    for (int b = 0; b < static_cast<int>(parent.size()); ++b)
        for (int a = parent[b]; a >= 0; a = parent[a]) below.set(image[a], image[b]);
}

/// Transitive closure in place; false if the relation has a cycle.
inline bool close_transitively(BitMatrix& below) {
    const int n = below.size();
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            if (below.test(a, k)) below.or_row(a, k);
    for (int a = 0; a < n; ++a)
        if (below.test(a, a)) return false;
    return true;
}

/// Every rooted tree with root named r, names exactly `names` (which holds
/// r), leaves named, and at most `budget` levels; one per isomorphism class
/// fixing names. Calls visit(parent, label).
inline void for_each_candidate_tree(const std::vector<Vertex>& names, Vertex r, int budget,
                                    const std::function<void(const std::vector<int>&, const std::vector<Vertex>&)>& visit) {
    std::vector<int> parent{-1};
    std::vector<Vertex> label{r};
    struct Task {
        bool forest;
        std::vector<Vertex> names;
        int parent;
        int depth;
    };
    std::vector<Task> pending;
    std::function<void()> step = [&]() {
        if (pending.empty()) {
            visit(parent, label);
            return;
        }
        Task task = pending.back();
        pending.pop_back();
        const auto& s = task.names;
        if (task.forest) {
            if (s.empty()) {
                step();
            } else if (task.depth <= budget) {
                const int k = static_cast<int>(s.size());
                std::vector<int> block_of(static_cast<std::size_t>(k), 0);
                std::function<void(int, int)> assign = [&](int i, int used) {
                    if (i == k) {
                        std::vector<std::vector<Vertex>> blocks(static_cast<std::size_t>(used));
                        for (int j = 0; j < k; ++j) blocks[block_of[j]].push_back(s[j]);
                        for (auto& b : blocks) pending.push_back({false, std::move(b), task.parent, task.depth});
                        step();
                        pending.resize(pending.size() - static_cast<std::size_t>(used));
                        return;
                    }
                    for (int b = 0; b <= used; ++b) {
                        block_of[i] = b;
                        assign(i + 1, std::max(used, b + 1));
                    }
                };
                assign(1, 1);
            }
        } else {
            auto place = [&](Vertex name, std::vector<Vertex> rest) {
                parent.push_back(task.parent);
                label.push_back(name);
                pending.push_back({true, std::move(rest), static_cast<int>(parent.size()) - 1, task.depth + 1});
                step();
                pending.pop_back();
                parent.pop_back();
                label.pop_back();
            };
            for (Vertex c : s) {
                std::vector<Vertex> rest;
                for (Vertex y : s)
                    if (y != c) rest.push_back(y);
                place(c, std::move(rest));
            }
            if (task.depth < budget) place(-1, s);
        }
        pending.push_back(std::move(task));
    };
    std::vector<Vertex> rest;
    for (Vertex v : names)
        if (v != r) rest.push_back(v);
    pending.push_back({true, std::move(rest), 0, 2});
    step();
}

/// For each boundary position i, the boundary positions of the named strict
/// ancestors (first) and descendants (second) of i's node. Needs |X| <= 64.
inline std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>> named_order(const PartialDecomposition& pd) {
    const auto& x = pd.boundary;
    std::vector<std::uint64_t> anc(x.size(), 0), desc(x.size(), 0);
    auto pos = [&](Vertex v) { return static_cast<int>(std::lower_bound(x.begin(), x.end(), v) - x.begin()); };
    for (int z = 0; z < pd.num_nodes(); ++z) {
        if (pd.label[z] < 0) continue;
        const int i = pos(pd.label[z]);
        for (int y = pd.parent[z]; y >= 0; y = pd.parent[y])
            if (pd.label[y] >= 0) {
                const int j = pos(pd.label[y]);
                anc[i] |= std::uint64_t{1} << j;
                desc[j] |= std::uint64_t{1} << i;
            }
    }
    return {std::move(anc), std::move(desc)};
}

inline PartialDecomposition shape_only(const std::vector<int>& parent, const std::vector<Vertex>& label,
                                       const std::vector<Vertex>& boundary) {
    return {parent, label, std::vector<int>(parent.size(), 0), boundary};
}

inline bool closure_covers(const std::vector<int>& parent, const std::vector<Vertex>& label,
                           const std::vector<std::pair<Vertex, Vertex>>& edges) {
    auto node = [&](Vertex v) {
        return static_cast<int>(std::find(label.begin(), label.end(), v) - label.begin());
    };
    for (auto [a, b] : edges) {
        int x = node(a), y = node(b);
        if (!strict_ancestor(parent, x, y) && !strict_ancestor(parent, y, x)) return false;
    }
    return true;
}

}  // namespace detail

/// Introduces u: every tree on the child forest's nodes plus a node for u
/// that preserves the child's ancestor relation and puts u's bag neighbors on
/// a common path with u, with h recomputed bottom-up.
inline DpTable introduce(const DpTable& table, Vertex u, const RootedGraph& g, const OperationOptions& opt) {
    const auto& x_old = table.boundary();
    if (std::binary_search(x_old.begin(), x_old.end(), u)) throw InputError("introduce: vertex already in the boundary");
    if (u < 0 || u >= g.graph.num_vertices()) throw InputError("introduce: vertex out of range");
    if (!std::binary_search(x_old.begin(), x_old.end(), g.root)) throw InputError("introduce: root missing from the bag");
    std::vector<Vertex> x = x_old;
    x.insert(std::upper_bound(x.begin(), x.end(), u), u);
    DpTable out(x, opt.table_cap);
    std::vector<Vertex> nbrs;
    for (Vertex w : g.graph.neighbors(u))
        if (std::binary_search(x_old.begin(), x_old.end(), w)) nbrs.push_back(w);

    if (opt.naive) {
        std::vector<std::pair<Vertex, Vertex>> bag_edges;
        for (Vertex a : x)
            for (Vertex b : g.graph.neighbors(a))
                if (a < b && std::binary_search(x.begin(), x.end(), b)) bag_edges.emplace_back(a, b);
        detail::for_each_candidate_tree(x, g.root, opt.budget, [&](const std::vector<int>& parent,
                                                                   const std::vector<Vertex>& label) {
            if (opt.path_only && !detail::shape_only(parent, label, x).is_path()) return;
            if (!detail::closure_covers(parent, label, bag_edges)) return;
            const auto big = detail::shape_only(parent, label, x);
            const int u_node = big.node_of(u);
            for (std::size_t i = 0; i < table.size(); ++i) {
                const auto& child = table[i].pd;
                if (child.num_nodes() + 1 != big.num_nodes()) continue;
                for_each_witness(big, child, x_old, [&](const WitnessMap& f) {
                    if (std::find(f.begin(), f.end(), u_node) != f.end()) return true;
                    std::vector<int> alpha(parent.size(), 0);
                    for (int z = 0; z < child.num_nodes(); ++z) alpha[f[z]] = child.h[z];
                    auto h = detail::heights_from(parent, alpha);
                    if (h[detail::root_of(parent)] <= opt.budget)
                        out.insert({parent, label, std::move(h), x}, {NiceKind::kIntroduce, static_cast<int>(i), -1, f, {}});
                    return true;
                });
            }
        });
        return out;
    }

    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& child = table[i].pd;
        const int n = child.num_nodes() + 1, u_node = n - 1;
        ExtensionProblem p;
        p.n = n;
        p.root = detail::root_of(child.parent);
        p.below = BitMatrix(n);
        std::vector<int> identity(static_cast<std::size_t>(child.num_nodes()));
        std::iota(identity.begin(), identity.end(), 0);
        detail::add_ancestors(child.parent, identity, p.below);
        for (Vertex w : nbrs) p.comparable.emplace_back(u_node, child.node_of(w));
        p.alpha = child.h;
        p.alpha.push_back(0);
        p.budget = opt.budget;
        p.path_only = opt.path_only;
        std::vector<Vertex> label = child.label;
        label.push_back(u);
        for_each_extension(p, [&](const std::vector<int>& parent) {
            auto h = detail::heights_from(parent, p.alpha);
            if (h[p.root] <= opt.budget)
                out.insert({parent, label, std::move(h), x}, {NiceKind::kIntroduce, static_cast<int>(i), -1, identity, {}});
        });
    }
    return out;
}

/// Joins two tables on the same bag: every tree on the union of both child
/// forests (glued along the named nodes) that preserves both ancestor
/// relations, with h(z) = max(1 + max over children, alpha1(z), alpha2(z)).
inline DpTable join(const DpTable& t1, const DpTable& t2, const RootedGraph& g, const OperationOptions& opt) {
    const auto& x = t1.boundary();
    if (x != t2.boundary()) throw InputError("join: boundaries differ");
    if (!std::binary_search(x.begin(), x.end(), g.root)) throw InputError("join: root missing from the bag");
    DpTable out(x, opt.table_cap);

    if (opt.naive) {
        detail::for_each_candidate_tree(x, g.root, opt.budget, [&](const std::vector<int>& parent,
                                                                   const std::vector<Vertex>& label) {
            if (opt.path_only && !detail::shape_only(parent, label, x).is_path()) return;
            const auto big = detail::shape_only(parent, label, x);
            const int n = big.num_nodes();
            for (std::size_t i = 0; i < t1.size(); ++i) {
                const auto& a = t1[i].pd;
                for (std::size_t j = 0; j < t2.size(); ++j) {
                    const auto& b = t2[j].pd;
                    if (a.num_nodes() + b.num_nodes() - static_cast<int>(x.size()) != n) continue;
                    for_each_witness(big, a, x, [&](const WitnessMap& f1) {
                        std::vector<char> hit(static_cast<std::size_t>(n), 0);
                        for (int z : f1) hit[z] = 1;
                        for_each_witness(big, b, x, [&](const WitnessMap& f2) {
                            for (int z = 0; z < b.num_nodes(); ++z)
                                if (b.label[z] < 0 && hit[f2[z]]) return true;
                            std::vector<int> alpha(static_cast<std::size_t>(n), 1), a1(alpha), a2(alpha);
                            for (int z = 0; z < a.num_nodes(); ++z) a1[f1[z]] = a.h[z];
                            for (int z = 0; z < b.num_nodes(); ++z) a2[f2[z]] = b.h[z];
                            for (int z = 0; z < n; ++z) alpha[z] = std::max(a1[z], a2[z]);
                            auto h = detail::heights_from(parent, alpha);
                            if (h[detail::root_of(parent)] <= opt.budget)
                                out.insert({parent, label, std::move(h), x},
                                           {NiceKind::kJoin, static_cast<int>(i), static_cast<int>(j), f1, f2});
                            return true;
                        });
                        return true;
                    });
                }
            }
        });
        return out;
    }

    // Two entries that order some pair of named nodes oppositely can never be
    // glued; rule those pairs out before building the closure.
    const bool precheck = x.size() <= 64;
    std::vector<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> order1, order2;
    if (precheck) {
        for (std::size_t i = 0; i < t1.size(); ++i) order1.push_back(detail::named_order(t1[i].pd));
        for (std::size_t j = 0; j < t2.size(); ++j) order2.push_back(detail::named_order(t2[j].pd));
    }
    for (std::size_t i = 0; i < t1.size(); ++i) {
        const auto& a = t1[i].pd;
        for (std::size_t j = 0; j < t2.size(); ++j) {
            const auto& b = t2[j].pd;
            if (precheck) {
                bool clash = false;
                for (std::size_t k = 0; k < x.size() && !clash; ++k)
                    clash = (order1[i].first[k] & order2[j].second[k]) != 0;
                if (clash) continue;
            }
            // Nodes: all of a, then the anonymous nodes of b.
            std::vector<int> map1(static_cast<std::size_t>(a.num_nodes())), map2(static_cast<std::size_t>(b.num_nodes()));
            std::iota(map1.begin(), map1.end(), 0);
            std::vector<Vertex> label = a.label;
            for (int z = 0; z < b.num_nodes(); ++z) {
                if (b.label[z] >= 0) {
                    map2[z] = a.node_of(b.label[z]);
                } else {
                    map2[z] = static_cast<int>(label.size());
                    label.push_back(-1);
                }
            }
            const int n = static_cast<int>(label.size());
            ExtensionProblem p;
            p.n = n;
            p.root = a.node_of(g.root);
            p.below = BitMatrix(n);
            detail::add_ancestors(a.parent, map1, p.below);
            detail::add_ancestors(b.parent, map2, p.below);
            if (!detail::close_transitively(p.below)) continue;
            p.alpha.assign(static_cast<std::size_t>(n), 1);
            for (int z = 0; z < a.num_nodes(); ++z) p.alpha[z] = std::max(p.alpha[z], a.h[z]);
            std::vector<int> a2(static_cast<std::size_t>(n), 1);
            for (int z = 0; z < b.num_nodes(); ++z) a2[map2[z]] = b.h[z];
            for (int z = 0; z < n; ++z) p.alpha[z] = std::max(p.alpha[z], a2[z]);
            p.budget = opt.budget;
            p.path_only = opt.path_only;
            for_each_extension(p, [&](const std::vector<int>& parent) {
                auto h = detail::heights_from(parent, p.alpha);
                if (h[p.root] <= opt.budget)
                    out.insert({parent, label, std::move(h), x},
                               {NiceKind::kJoin, static_cast<int>(i), static_cast<int>(j), map1, map2});
            });
        }
    }
    return out;
}

}  // namespace treedepth::dp
