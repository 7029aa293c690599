#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <vector>

#include "treedepth/dp/operations.hpp"
#include "treedepth/dp/table.hpp"
#include "treedepth/errors.hpp"
#include "treedepth/graph.hpp"
#include "treedepth/td_decomposition.hpp"
#include "treedepth/tree_decomposition.hpp"

namespace treedepth::dp {

struct DpConfig {
    bool path_only = false;
    bool naive = false;
    /// Drop child tables once their parent table exists. Reconstruction is
    /// then impossible.
    bool decide_only = false;
    std::size_t table_cap = 2'000'000;
};

struct DpResult {
    std::vector<DpTable> tables;  // indexed by nice node
    int root = -1;
    int budget = 0;
    std::vector<std::uint64_t> table_sizes;  // per nice node
    std::uint64_t bound_violations = 0;
    std::uint64_t non_path_entries = 0;  // over all tables
    bool decide_only = false;

    const DpTable& root_table() const { return tables.at(static_cast<std::size_t>(root)); }
    std::uint64_t peak_table_size() const {
        return table_sizes.empty() ? 0 : *std::max_element(table_sizes.begin(), table_sizes.end());
    }
};

/// Bottom-up sweep over a nice decomposition of a rooted graph whose bags all
/// contain the root. Nodes are already stored children-first, so a forward
/// pass visits them in post-order without recursion.
inline DpResult run_dp(const RootedGraph& g, int budget, const NiceTreeDecomposition& nt, const DpConfig& cfg = {}) {
    if (budget < 1) throw InputError("run_dp: budget must be positive");
    if (nt.nodes.empty()) throw InputError("run_dp: empty decomposition");
    if (auto bad = audit_nice(nt)) throw InputError("run_dp: not a nice decomposition: " + *bad);
    if (auto bad = validate(g.graph, nt.as_tree_decomposition()))
        throw InputError("run_dp: invalid decomposition: " + bad->message);
    for (const auto& node : nt.nodes)
        if (!std::binary_search(node.bag.begin(), node.bag.end(), g.root))
            throw InputError("run_dp: root vertex missing from a bag");

    OperationOptions opt{budget, cfg.path_only, cfg.naive, cfg.table_cap};
    DpResult res;
    res.budget = budget;
    res.root = nt.root;
    res.decide_only = cfg.decide_only;
    res.tables.resize(nt.nodes.size());
    res.table_sizes.resize(nt.nodes.size(), 0);
    for (int i = 0; i < nt.num_nodes(); ++i) {
        const auto& node = nt.nodes[i];
        switch (node.kind) {
            case NiceKind::kLeaf:
                if (node.bag != std::vector<Vertex>{g.root}) throw InputError("run_dp: leaf bag is not the root vertex");
                res.tables[i] = leaf_table(g.root, cfg.table_cap);
                break;
            case NiceKind::kForget:
                if (node.vertex == g.root) throw InputError("run_dp: the root vertex cannot be forgotten");
                res.tables[i] = forget(res.tables[node.children[0]], node.vertex, cfg.table_cap);
                break;
            case NiceKind::kIntroduce:
                res.tables[i] = introduce(res.tables[node.children[0]], node.vertex, g, opt);
                break;
            case NiceKind::kJoin:
                res.tables[i] = join(res.tables[node.children[0]], res.tables[node.children[1]], g, opt);
                break;
        }
        res.table_sizes[i] = res.tables[i].size();
        for (const auto& e : res.tables[i].entries())
            if (!e.pd.is_path()) ++res.non_path_entries;
        if (!within_table_size_bound(res.tables[i].size(), node.bag.size(), budget)) ++res.bound_violations;
        assert(within_table_size_bound(res.tables[i].size(), node.bag.size(), budget));
        if (cfg.decide_only)
            for (int c : node.children) res.tables[c].release();
    }
    return res;
}

struct DecideResult {
    bool yes = false;
    RootedGraph rooted;
    NiceTreeDecomposition nice;  // augmented with the root vertex
    DpResult dp;
    int input_width = -1;
};

/// Decides td(g) <= t by adding a universal root, augmenting the nice form of
/// `td` and running the DP with budget t + 1.
inline DecideResult decide(const Graph& g, int t, const TreeDecomposition& td, const DpConfig& cfg = {}) {
    if (t < 0) throw InputError("decide: t must be non-negative");
    if (auto bad = validate(g, td)) throw InputError("decide: invalid tree decomposition: " + bad->message);
    DecideResult out;
    out.input_width = td.width();
    out.rooted = add_universal_root(g);
    out.nice = root_and_augment(make_nice(td), out.rooted.root);
    out.dp = run_dp(out.rooted, t + 1, out.nice, cfg);
    out.yes = !out.dp.root_table().empty();
    return out;
}

/// Replays provenance from a minimum-height root entry down to the leaves and
/// returns the decomposition of the original graph (universal root removed).
inline TreedepthDecomposition reconstruct(const DecideResult& d) {
    const auto& dp = d.dp;
    const auto& nt = d.nice;
    if (dp.decide_only) throw InternalError("reconstruct: tables were released");
    const auto& root_table = dp.root_table();
    if (root_table.empty()) throw InputError("reconstruct: root table is empty");

    // Pick entries top-down.
    std::vector<int> chosen(nt.nodes.size(), -1);
    {
        int best = 0;
        for (std::size_t i = 1; i < root_table.size(); ++i)
            if (root_table[i].pd.height() < root_table[best].pd.height()) best = static_cast<int>(i);
        chosen[nt.root] = best;
    }
    for (int x = nt.num_nodes() - 1; x >= 0; --x) {
        if (chosen[x] < 0) continue;
        const auto& table = dp.tables[x];
        if (table.released() || static_cast<std::size_t>(chosen[x]) >= table.size())
            throw InternalError("reconstruct: missing table entry");
        const auto& prov = table[chosen[x]].provenance;
        if (prov.kind != nt.nodes[x].kind) throw InternalError("reconstruct: provenance kind mismatch");
        const auto& kids = nt.nodes[x].children;
        if (!kids.empty()) chosen[kids[0]] = prov.child1;
        if (kids.size() > 1) chosen[kids[1]] = prov.child2;
    }

    // Post-order replay. psi[x][node] is the rooted-graph vertex for a node of
    // the chosen entry at nice node x.
    const Vertex nv = d.rooted.graph.num_vertices();
    std::vector<int> gparent(static_cast<std::size_t>(nv), -1);
    std::vector<std::vector<Vertex>> psi(nt.nodes.size());
    for (int x = 0; x < nt.num_nodes(); ++x) {
        if (chosen[x] < 0) throw InternalError("reconstruct: node without a chosen entry");
        const auto& entry = dp.tables[x][chosen[x]];
        const auto& pd = entry.pd;
        const auto& prov = entry.provenance;
        const auto& node = nt.nodes[x];
        auto& m = psi[x];
        m.assign(static_cast<std::size_t>(pd.num_nodes()), -1);
        switch (node.kind) {
            case NiceKind::kLeaf:
                m[0] = d.rooted.root;
                break;
            case NiceKind::kForget: {
                const auto& c = psi[node.children[0]];
                for (int z = 0; z < pd.num_nodes(); ++z) m[z] = c[prov.map1.at(z)];
                break;
            }
            case NiceKind::kIntroduce: {
                const auto& c = psi[node.children[0]];
                for (std::size_t z = 0; z < prov.map1.size(); ++z) m[prov.map1[z]] = c[z];
                m[pd.node_of(node.vertex)] = node.vertex;
                break;
            }
            case NiceKind::kJoin: {
                const auto& c1 = psi[node.children[0]];
                const auto& c2 = psi[node.children[1]];
                for (std::size_t z = 0; z < prov.map1.size(); ++z) m[prov.map1[z]] = c1[z];
                for (std::size_t z = 0; z < prov.map2.size(); ++z) {
                    Vertex v = c2[z];
                    if (m[prov.map2[z]] >= 0 && m[prov.map2[z]] != v)
                        throw InternalError("reconstruct: join witnesses disagree");
                    m[prov.map2[z]] = v;
                }
                break;
            }
        }
        for (int z = 0; z < pd.num_nodes(); ++z) {
            if (m[z] < 0) throw InternalError("reconstruct: unmapped node");
            if (pd.parent[z] >= 0) gparent[m[z]] = m[pd.parent[z]];
        }
    }

    // Strip the universal root.
    const Vertex r = d.rooted.root;
    std::vector<int> parent(static_cast<std::size_t>(r), -1);
    for (Vertex v = 0; v < r; ++v) parent[v] = gparent[v] == r ? -1 : gparent[v];
    return TreedepthDecomposition::from_parents(std::move(parent));
}

}  // namespace treedepth::dp
