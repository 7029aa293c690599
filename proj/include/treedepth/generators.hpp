#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "treedepth/errors.hpp"
#include "treedepth/graph.hpp"

namespace treedepth::gen {

/// Seeded source whose outputs depend only on the seed: raw 64-bit draws
/// reduced modulo the range, never a library distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform-ish integer in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        if (hi < lo) throw InputError("Rng::between: empty range");
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(span == 0 ? engine_() : engine_() % span);
    }

    bool coin(std::uint64_t num, std::uint64_t den) { return engine_() % den < num; }

private:
    std::mt19937_64 engine_;
};

inline Graph path(Vertex n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, e);
}

inline Graph cycle(Vertex n) {
    if (n < 3) throw InputError("cycle needs at least 3 vertices");
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, e);
}

inline Graph clique(Vertex n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, e);
}

/// Vertex 0 is the center; n - 1 leaves.
inline Graph star(Vertex n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 1; i < n; ++i) e.emplace_back(0, i);
    return Graph(n, e);
}

/// Uniform choice of m distinct edges (by rejection).
inline Graph random_gnm(Vertex n, std::size_t m, std::uint64_t seed) {
    const auto max_m = static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max<Vertex>(n - 1, 0)) / 2;
    if (m > max_m) throw InputError("random_gnm: too many edges");
    Rng rng(seed);
    std::set<std::pair<Vertex, Vertex>> chosen;
    while (chosen.size() < m) {
        auto u = static_cast<Vertex>(rng.between(0, n - 1));
        auto v = static_cast<Vertex>(rng.between(0, n - 1));
        if (u == v) continue;
        chosen.emplace(std::min(u, v), std::max(u, v));
    }
    std::vector<std::pair<Vertex, Vertex>> e(chosen.begin(), chosen.end());
    return Graph(n, e);
}

/// Uniform labeled tree from a random Pruefer sequence.
inline Graph random_tree(Vertex n, std::uint64_t seed) {
    if (n <= 1) return Graph(std::max<Vertex>(n, 0));
    if (n == 2) return Graph(2, {{0, 1}});
    Rng rng(seed);
    std::vector<Vertex> code(static_cast<std::size_t>(n - 2));
    for (auto& c : code) c = static_cast<Vertex>(rng.between(0, n - 1));
    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (Vertex c : code) ++degree[c];
    std::set<Vertex> leaves;
    for (Vertex v = 0; v < n; ++v)
        if (degree[v] == 1) leaves.insert(v);
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex c : code) {
        Vertex leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        e.emplace_back(leaf, c);
        if (--degree[c] == 1) leaves.insert(c);
    }
    Vertex a = *leaves.begin(), b = *std::next(leaves.begin());
    e.emplace_back(a, b);
    return Graph(n, e);
}

/// Random k-tree: a (k+1)-clique, then each new vertex joins a random
/// existing k-clique. For n <= k + 1 the result is K_n.
inline Graph k_tree(int k, Vertex n, std::uint64_t seed) {
    if (k < 1) throw InputError("k_tree: k must be positive");
    if (n <= k + 1) return clique(n);
    Rng rng(seed);
    std::vector<std::pair<Vertex, Vertex>> e;
    std::vector<std::vector<Vertex>> cliques;  // all k-cliques created so far
    std::vector<Vertex> base(static_cast<std::size_t>(k + 1));
    for (Vertex i = 0; i <= k; ++i) base[i] = i;
    for (Vertex i = 0; i <= k; ++i)
        for (Vertex j = i + 1; j <= k; ++j) e.emplace_back(i, j);
    for (Vertex skip = 0; skip <= k; ++skip) {
        std::vector<Vertex> c;
        for (Vertex v : base)
            if (v != skip) c.push_back(v);
        cliques.push_back(c);
    }
    for (Vertex v = k + 1; v < n; ++v) {
        auto c = cliques[static_cast<std::size_t>(rng.between(0, static_cast<std::int64_t>(cliques.size()) - 1))];
        for (Vertex w : c) e.emplace_back(w, v);
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            std::vector<Vertex> nc;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != drop) nc.push_back(c[i]);
            nc.push_back(v);
            cliques.push_back(nc);
        }
    }
    return Graph(n, e);
}

/// Interval graph of n random intervals with integer endpoints in [0, 2n].
inline Graph interval(Vertex n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<std::int64_t, std::int64_t>> iv;
    for (Vertex i = 0; i < n; ++i) {
        auto a = rng.between(0, 2 * static_cast<std::int64_t>(n));
        auto b = rng.between(0, 2 * static_cast<std::int64_t>(n));
        iv.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            if (iv[i].first <= iv[j].second && iv[j].first <= iv[i].second) e.emplace_back(i, j);
    return Graph(n, e);
}

inline const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names{"path",        "cycle",  "clique", "star", "random-gnm",
                                                "random-tree", "k-tree", "interval"};
    return names;
}

struct FamilyParams {
    std::size_t edges = 0;  // random-gnm; 0 means 2n capped at the maximum
    int k = 2;              // k-tree
};

inline Graph by_family(const std::string& family, Vertex n, std::uint64_t seed, const FamilyParams& params = {}) {
    if (n < 0) throw InputError("size must be non-negative");
    if (family == "path") return path(n);
    if (family == "cycle") return cycle(n);
    if (family == "clique") return clique(n);
    if (family == "star") return star(n);
    if (family == "random-gnm") {
        const auto max_m = static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max<Vertex>(n - 1, 0)) / 2;
        std::size_t m = params.edges ? params.edges : std::min<std::size_t>(2 * static_cast<std::size_t>(n), max_m);
        return random_gnm(n, m, seed);
    }
    if (family == "random-tree") return random_tree(n, seed);
    if (family == "k-tree") return k_tree(params.k, n, seed);
    if (family == "interval") return interval(n, seed);
    throw InputError("unknown family '" + family + "'");
}

}  // namespace treedepth::gen
