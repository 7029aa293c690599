#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treedepth/dp/engine.hpp"
#include "treedepth/errors.hpp"
#include "treedepth/graph.hpp"
#include "treedepth/io.hpp"
#include "treedepth/td_decomposition.hpp"
#include "treedepth/tree_decomposition.hpp"

namespace treedepth {

enum class Variant { kSimple, kFast, kChordal, kGiven };

inline const char* to_string(Variant v) {
    switch (v) {
        case Variant::kSimple: return "simple";
        case Variant::kFast: return "fast";
        case Variant::kChordal: return "chordal";
        case Variant::kGiven: return "given";
    }
    return "?";
}

inline Variant parse_variant(const std::string& s) {
    if (s == "simple") return Variant::kSimple;
    if (s == "fast") return Variant::kFast;
    if (s == "chordal") return Variant::kChordal;
    if (s == "given") return Variant::kGiven;
    throw InputError("unknown variant '" + s + "'");
}

struct SolverConfig {
    Variant variant = Variant::kFast;
    bool decide_only = false;
    std::size_t table_cap = 2'000'000;
    bool naive = false;
    /// Decomposition of the whole input graph; required by `given`, optional
    /// for `fast` (which falls back to min-fill).
    std::optional<TreeDecomposition> provided_td;
};

struct SolveOutcome {
    bool yes = false;
    std::optional<int> value;  // set by exact_treedepth
    std::optional<TreedepthDecomposition> decomposition;
    RunReport report;
    std::uint64_t non_path_entries = 0;
};

namespace detail {

struct ComponentRun {
    bool yes = false;
    std::optional<TreedepthDecomposition> decomposition;  // local vertex ids
    std::vector<std::uint64_t> table_sizes;
    std::uint64_t bound_violations = 0;
    std::uint64_t non_path_entries = 0;
    bool dfs_cap_triggered = false;
    bool clique_certificate = false;
    int width = -1;
};

inline TreeDecomposition restrict_to(const TreeDecomposition& td, const std::vector<Vertex>& to_original, Vertex n) {
    std::vector<Vertex> local(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < to_original.size(); ++i) local[to_original[i]] = static_cast<Vertex>(i);
    std::vector<std::vector<Vertex>> bags;
    for (const auto& b : td.bags) {
        std::vector<Vertex> nb;
        for (Vertex v : b)
            if (v >= 0 && v < n && local[v] >= 0) nb.push_back(local[v]);
        bags.push_back(std::move(nb));
    }
    return TreeDecomposition::from_edges(std::move(bags), td.tree_edges());
}

inline bool bag_is_clique(const Graph& g, const std::vector<Vertex>& bag) {
    for (std::size_t i = 0; i < bag.size(); ++i)
        for (std::size_t j = i + 1; j < bag.size(); ++j)
            if (!g.has_edge(bag[i], bag[j])) return false;
    return true;
}

inline ComponentRun run_on_decomposition(const Graph& g, int t, const TreeDecomposition& td, const SolverConfig& cfg,
                                         bool path_only) {
    ComponentRun run;
    run.width = td.width();
    dp::DpConfig dc{path_only, cfg.naive, cfg.decide_only, cfg.table_cap};
    auto d = dp::decide(g, t, td, dc);
    run.yes = d.yes;
    run.table_sizes = d.dp.table_sizes;
    run.bound_violations = d.dp.bound_violations;
    run.non_path_entries = d.dp.non_path_entries;
    if (d.yes && !cfg.decide_only) run.decomposition = dp::reconstruct(d);
    return run;
}

/// One connected component (local ids) with the chosen variant.
inline ComponentRun solve_component(const Graph& g, int t, const SolverConfig& cfg,
                                    const std::optional<TreeDecomposition>& local_td) {
    switch (cfg.variant) {
        case Variant::kSimple: {
            ComponentRun run;
            if (t <= 0) return run;
            const int cap = t >= 30 ? (1 << 30) : (1 << t);
            auto dfs = dfs_tree_capped(g, cap);
            if (!dfs) {
                run.dfs_cap_triggered = true;
                return run;
            }
            return run_on_decomposition(g, t, path_decomposition_from_dfs(*dfs), cfg, false);
        }
        case Variant::kFast:
        case Variant::kGiven: {
            TreeDecomposition td = local_td ? *local_td : heuristic_decomposition(g);
            for (const auto& bag : td.bags)
                if (static_cast<int>(bag.size()) > t && bag_is_clique(g, bag)) {
                    ComponentRun run;
                    run.width = td.width();
                    run.clique_certificate = true;
                    return run;
                }
            return run_on_decomposition(g, t, td, cfg, false);
        }
        case Variant::kChordal: {
            auto peo = is_chordal(g);
            if (!peo) throw InputError("chordal solver: graph is not chordal");
            if (max_clique_size_chordal(g, *peo) > t) {
                ComponentRun run;
                run.clique_certificate = true;
                return run;
            }
            return run_on_decomposition(g, t, clique_tree(g, *peo), cfg, true);
        }
    }
    throw InternalError("unknown variant");
}

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace detail

/// Decision td(g) <= t with the configured variant, component by component.
/// A YES carries a decomposition of height at most t unless decide_only is set.
inline SolveOutcome solve(const Graph& g, int t, const SolverConfig& cfg) {
    if (t < 0) throw InputError("t must be non-negative");
    const auto start = std::chrono::steady_clock::now();
    if (cfg.variant == Variant::kGiven && !cfg.provided_td) throw InputError("variant 'given' needs a decomposition");
    if (cfg.provided_td)
        if (auto bad = validate(g, *cfg.provided_td))
            throw InputError("provided tree decomposition is invalid: " + bad->message);
    if (cfg.variant == Variant::kChordal && !is_chordal(g)) throw InputError("chordal solver: graph is not chordal");

    SolveOutcome out;
    out.yes = true;
    out.report.solver = to_string(cfg.variant);
    out.report.t = t;
    std::vector<int> parent(static_cast<std::size_t>(g.num_vertices()), -1);
    std::vector<std::uint64_t> sizes;
    int width = -1;
    for (const auto& comp : connected_components(g)) {
        auto sub = induced_subgraph(g, comp);
        std::optional<TreeDecomposition> local;
        if (cfg.provided_td) local = detail::restrict_to(*cfg.provided_td, sub.to_original, g.num_vertices());
        auto run = detail::solve_component(sub.graph, t, cfg, local);
        sizes.insert(sizes.end(), run.table_sizes.begin(), run.table_sizes.end());
        out.report.table_bound_violations += run.bound_violations;
        out.non_path_entries += run.non_path_entries;
        out.report.dfs_cap_triggered = out.report.dfs_cap_triggered || run.dfs_cap_triggered;
        out.report.clique_certificate = out.report.clique_certificate || run.clique_certificate;
        width = std::max(width, run.width);
        if (!run.yes) {
            out.yes = false;
            break;
        }
        if (run.decomposition)
            for (std::size_t i = 0; i < comp.size(); ++i) {
                int p = run.decomposition->parent[i];
                parent[sub.to_original[i]] = p < 0 ? -1 : sub.to_original[p];
            }
    }
    if (out.yes && !cfg.decide_only) out.decomposition = TreedepthDecomposition::from_parents(std::move(parent));
    out.report.set_table_sizes(std::move(sizes));
    if (width >= 0) out.report.width = width;
    out.report.answer = out.yes ? "YES" : "NO";
    if (cfg.variant == Variant::kFast && !cfg.provided_td)
        out.report.notes.push_back("min-fill decomposition; early NO only from a bag that is a clique larger than t");
    out.report.wall_time_ms = detail::elapsed_ms(start);
    return out;
}

inline SolveOutcome solve_simple(const Graph& g, int t, SolverConfig cfg = {}) {
    cfg.variant = Variant::kSimple;
    return solve(g, t, cfg);
}

inline SolveOutcome solve_fast(const Graph& g, int t, std::optional<TreeDecomposition> provided = std::nullopt,
                               SolverConfig cfg = {}) {
    cfg.variant = Variant::kFast;
    cfg.provided_td = std::move(provided);
    return solve(g, t, cfg);
}

inline SolveOutcome solve_chordal(const Graph& g, int t, SolverConfig cfg = {}) {
    cfg.variant = Variant::kChordal;
    return solve(g, t, cfg);
}

/// Smallest t with a YES, searched upwards per component starting from the
/// largest value found so far. The decomposition has height exactly td(g).
inline SolveOutcome exact_treedepth(const Graph& g, SolverConfig cfg = {}) {
    const auto start = std::chrono::steady_clock::now();
    if (cfg.variant == Variant::kGiven && !cfg.provided_td) throw InputError("variant 'given' needs a decomposition");
    if (cfg.variant == Variant::kChordal && !is_chordal(g)) throw InputError("chordal solver: graph is not chordal");
    if (cfg.provided_td)
        if (auto bad = validate(g, *cfg.provided_td))
            throw InputError("provided tree decomposition is invalid: " + bad->message);
    SolveOutcome out;
    out.yes = true;
    out.report.solver = to_string(cfg.variant);
    std::vector<int> parent(static_cast<std::size_t>(g.num_vertices()), -1);
    std::vector<std::uint64_t> sizes;
    int best = 0, width = -1;
    for (const auto& comp : connected_components(g)) {
        auto sub = induced_subgraph(g, comp);
        std::optional<TreeDecomposition> local;
        if (cfg.provided_td) local = detail::restrict_to(*cfg.provided_td, sub.to_original, g.num_vertices());
        for (int t = std::max(best, 1);; ++t) {
            auto run = detail::solve_component(sub.graph, t, cfg, local);
            out.report.dfs_cap_triggered = out.report.dfs_cap_triggered || run.dfs_cap_triggered;
            out.report.table_bound_violations += run.bound_violations;
            out.non_path_entries += run.non_path_entries;
            width = std::max(width, run.width);
            if (!run.yes) continue;
            best = t;
            sizes.insert(sizes.end(), run.table_sizes.begin(), run.table_sizes.end());
            if (run.decomposition)
                for (std::size_t i = 0; i < comp.size(); ++i) {
                    int p = run.decomposition->parent[i];
                    parent[sub.to_original[i]] = p < 0 ? -1 : sub.to_original[p];
                }
            break;
        }
    }
    out.value = best;
    if (!cfg.decide_only) out.decomposition = TreedepthDecomposition::from_parents(std::move(parent));
    out.report.t = best;
    out.report.answer = std::to_string(best);
    out.report.set_table_sizes(std::move(sizes));
    if (width >= 0) out.report.width = width;
    out.report.wall_time_ms = detail::elapsed_ms(start);
    return out;
}

}  // namespace treedepth
