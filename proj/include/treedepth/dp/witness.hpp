#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "treedepth/dp/partial_decomposition.hpp"

namespace treedepth::dp {

using WitnessMap = std::vector<int>;  // small node -> big node

namespace detail {

inline bool strict_ancestor(const std::vector<int>& parent, int a, int b) {
    for (int x = parent[b]; x >= 0; x = parent[x])
        if (x == a) return true;
    return false;
}

}  // namespace detail

/// Calls `visit` with every injective map f from the nodes of `small` to the
/// nodes of `big` that fixes the named nodes with a label in `shared` and
/// sends ancestors to ancestors. Small nodes are assigned parents first, each
/// trying big nodes in increasing index, so maps arrive in lexicographic order.
/// `visit` returns false to stop early.
inline void for_each_witness(const PartialDecomposition& big, const PartialDecomposition& small,
                             const std::vector<Vertex>& shared,
                             const std::function<bool(const WitnessMap&)>& visit) {
    const int ns = small.num_nodes(), nb = big.num_nodes();
    auto is_shared = [&](Vertex v) { return v >= 0 && std::binary_search(shared.begin(), shared.end(), v); };

    // Forced images and processing order (parents before children).
    std::vector<int> forced(static_cast<std::size_t>(ns), -1);
    for (int s = 0; s < ns; ++s)
        if (is_shared(small.label[s])) {
            forced[s] = big.node_of(small.label[s]);
            if (forced[s] < 0) return;
        }
    auto kids = small.children();
    std::vector<int> order;
    for (int s = 0; s < ns; ++s)
        if (small.parent[s] < 0) order.push_back(s);
    for (std::size_t k = 0; k < order.size(); ++k)
        for (int c : kids[order[k]]) order.push_back(c);

    // Every image must be an ancestor-or-self of the images of the forced
    // descendants; collect them once.
    std::vector<std::vector<int>> forced_below(static_cast<std::size_t>(ns));
    for (int s = 0; s < ns; ++s)
        if (forced[s] >= 0)
            for (int x = small.parent[s]; x >= 0; x = small.parent[x]) forced_below[x].push_back(forced[s]);

    WitnessMap f(static_cast<std::size_t>(ns), -1);
    std::vector<char> used(static_cast<std::size_t>(nb), 0);
    bool stop = false;
    std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (stop) return;
        if (k == order.size()) {
            if (!visit(f)) stop = true;
            return;
        }
        const int s = order[k];
        auto try_image = [&](int b) {
            if (used[b]) return;
            int p = small.parent[s];
            if (p >= 0 && !detail::strict_ancestor(big.parent, f[p], b)) return;
            for (int d : forced_below[s])
                if (!detail::strict_ancestor(big.parent, b, d)) return;
            used[b] = 1;
            f[s] = b;
            go(k + 1);
            used[b] = 0;
            f[s] = -1;
        };
        if (forced[s] >= 0) {
            try_image(forced[s]);
        } else {
            for (int b = 0; b < nb && !stop; ++b)
                if (!is_shared(big.label[b])) try_image(b);
        }
    };
    go(0);
}

inline std::vector<WitnessMap> enumerate_witnesses(const PartialDecomposition& big, const PartialDecomposition& small,
                                                   const std::vector<Vertex>& shared) {
    std::vector<WitnessMap> out;
    for_each_witness(big, small, shared, [&](const WitnessMap& f) {
        out.push_back(f);
        return true;
    });
    return out;
}

}  // namespace treedepth::dp
