#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

namespace treedepth::dp {

/// Square 0/1 matrix stored as rows of 64-bit words.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(int n)
        : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * static_cast<std::size_t>(words_), 0) {}

    int size() const { return n_; }
    bool test(int a, int b) const { return (row(a)[b >> 6] >> (b & 63)) & 1u; }
    void set(int a, int b) { row(a)[b >> 6] |= std::uint64_t{1} << (b & 63); }
    int row_count(int a) const {
        int c = 0;
        for (int w = 0; w < words_; ++w) c += std::popcount(row(a)[w]);
        return c;
    }
    void or_row(int a, int from) {
        for (int w = 0; w < words_; ++w) row(a)[w] |= row(from)[w];
    }

    /// Calls f(b) for every set column of row a, in increasing order.
    template <class F>
    void for_each_in_row(int a, F&& f) const {
        for (int w = 0; w < words_; ++w)
            for (std::uint64_t x = row(a)[w]; x; x &= x - 1) f(w * 64 + std::countr_zero(x));
    }

private:
    const std::uint64_t* row(int a) const { return bits_.data() + static_cast<std::size_t>(a) * words_; }
    std::uint64_t* row(int a) { return bits_.data() + static_cast<std::size_t>(a) * words_; }

    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Input of the tree-order extension search behind introduce and join.
///
/// The search lists every rooted tree on nodes 0..n-1 whose ancestor relation
/// contains `below` (below(a, b): a must be a strict ancestor of b; must be
/// transitively closed), keeps every pair in `comparable` on one root-to-leaf
/// path, and has `root` as its root. Each tree is produced exactly once.
struct ExtensionProblem {
    int n = 0;
    int root = 0;
    BitMatrix below;
    std::vector<std::pair<int, int>> comparable;
    /// Lower bound on each node's own h; used with `budget` to prune.
    std::vector<int> alpha;
    int budget = 0;
    /// Only trees that are a single path.
    bool path_only = false;
};

namespace detail {

class ExtensionSearch {
public:
    ExtensionSearch(const ExtensionProblem& p, const std::function<void(const std::vector<int>&)>& emit)
        : p_(p), emit_(emit), parent_(static_cast<std::size_t>(p.n), -1), min_h_(static_cast<std::size_t>(p.n), 1),
          partner_(static_cast<std::size_t>(p.n)) {
        // min_h: alpha and 1 + min_h of every forced descendant; process nodes
        // with fewer forced descendants first.
        std::vector<int> count(static_cast<std::size_t>(p.n), 0), order(static_cast<std::size_t>(p.n));
        for (int a = 0; a < p.n; ++a) count[a] = p.below.row_count(a);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return count[a] < count[b]; });
        for (int a : order) {
            int m = p.alpha.empty() ? 1 : std::max(1, p.alpha[a]);
            p.below.for_each_in_row(a, [&](int b) { m = std::max(m, min_h_[b] + 1); });
            min_h_[a] = m;
        }
        for (auto [a, b] : p.comparable) {
            partner_[a].push_back(b);
            partner_[b].push_back(a);
        }
    }

    void run() {
        if (p_.n == 0) return;
        if (fits(p_.root, 1)) {
            std::vector<int> rest;
            for (int x = 0; x < p_.n; ++x) {
                if (x == p_.root) continue;
                if (p_.below.test(x, p_.root)) return;  // root must be minimal
                rest.push_back(x);
            }
            pending_.push_back({Task::kForest, std::move(rest), p_.root, 2});
            step();
        }
    }

private:
    struct Task {
        enum Kind { kForest, kTree } kind;
        std::vector<int> nodes;
        int parent;
        int depth;  // depth of the node(s) placed by this task; root depth is 1
    };

    bool comparable(int a, int b) const { return p_.below.test(a, b) || p_.below.test(b, a); }

    bool fits(int x, int depth) const { return depth - 1 + min_h_[x] <= p_.budget; }

    void step() {
        if (pending_.empty()) {
            emit_(parent_);
            return;
        }
        Task task = std::move(pending_.back());
        pending_.pop_back();
        if (task.kind == Task::kForest)
            forest(task);
        else
            tree(task);
        pending_.push_back(std::move(task));
    }

    void forest(const Task& task) {
        const auto& s = task.nodes;
        if (s.empty()) {
            step();
            return;
        }
        for (int x : s)
            if (!fits(x, task.depth)) return;
        // Groups: components of the comparability relation (plus required
        // pairs) on s. Each group lies inside one tree.
        const int k = static_cast<int>(s.size());
        std::vector<int> comp(static_cast<std::size_t>(k));
        std::iota(comp.begin(), comp.end(), 0);
        auto find = [&](int i) {
            while (comp[i] != i) i = comp[i] = comp[comp[i]];
            return i;
        };
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (comparable(s[i], s[j]) || is_partner(s[i], s[j])) comp[find(i)] = find(j);
        std::vector<std::vector<int>> groups;
        std::vector<int> group_of(static_cast<std::size_t>(k), -1);
        for (int i = 0; i < k; ++i) {
            int r = find(i);
            if (group_of[r] < 0) {
                group_of[r] = static_cast<int>(groups.size());
                groups.emplace_back();
            }
            groups[group_of[r]].push_back(s[i]);
        }
        if (p_.path_only) {
            push_blocks({std::vector<int>(s)}, task);
            return;
        }
        // Set partitions of the groups via restricted growth strings.
        std::vector<int> block_of(groups.size(), 0);
        assign(groups, block_of, 1, 1, task);
    }

    void assign(const std::vector<std::vector<int>>& groups, std::vector<int>& block_of, int i, int used,
                const Task& task) {
        const int g = static_cast<int>(groups.size());
        if (i == g) {
            std::vector<std::vector<int>> blocks(static_cast<std::size_t>(used));
            for (int j = 0; j < g; ++j)
                blocks[block_of[j]].insert(blocks[block_of[j]].end(), groups[j].begin(), groups[j].end());
            push_blocks(blocks, task);
            return;
        }
        for (int b = 0; b <= used; ++b) {
            block_of[i] = b;
            assign(groups, block_of, i + 1, std::max(used, b + 1), task);
        }
    }

    void push_blocks(const std::vector<std::vector<int>>& blocks, const Task& task) {
        for (const auto& b : blocks) pending_.push_back({Task::kTree, b, task.parent, task.depth});
        step();
        pending_.resize(pending_.size() - blocks.size());
    }

    void tree(const Task& task) {
        const auto& b = task.nodes;
        for (int c : b) {
            bool minimal = true;
            for (int y : b)
                if (p_.below.test(y, c)) {
                    minimal = false;
                    break;
                }
            if (!minimal || !fits(c, task.depth)) continue;
            std::vector<int> rest;
            rest.reserve(b.size() - 1);
            for (int y : b)
                if (y != c) rest.push_back(y);
            parent_[c] = task.parent;
            pending_.push_back({Task::kForest, std::move(rest), c, task.depth + 1});
            step();
            pending_.pop_back();
            parent_[c] = -1;
        }
    }

    bool is_partner(int a, int b) const {
        for (int x : partner_[a])
            if (x == b) return true;
        return false;
    }

    const ExtensionProblem& p_;
    const std::function<void(const std::vector<int>&)>& emit_;
    std::vector<int> parent_;
    std::vector<int> min_h_;
    std::vector<std::vector<int>> partner_;
    std::vector<Task> pending_;
};

}  // namespace detail

/// Calls `emit` with the parent array (root: -1) of every tree described by
/// `p` whose nodes can still meet their own lower bounds within the budget.
inline void for_each_extension(const ExtensionProblem& p, const std::function<void(const std::vector<int>&)>& emit) {
    detail::ExtensionSearch(p, emit).run();
}

}  // namespace treedepth::dp
