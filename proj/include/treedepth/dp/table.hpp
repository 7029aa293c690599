#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "treedepth/dp/partial_decomposition.hpp"
#include "treedepth/errors.hpp"
#include "treedepth/tree_decomposition.hpp"

namespace treedepth::dp {

/// How an entry was produced, enough to replay it during reconstruction.
///   forget:    map1[new node] = node of the child entry
///   introduce: map1[child node] = node of this entry (u is the extra node)
///   join:      map1 / map2 send nodes of the two child entries here
struct Provenance {
    NiceKind kind = NiceKind::kLeaf;
    int child1 = -1;
    int child2 = -1;
    std::vector<int> map1;
    std::vector<int> map2;
};

struct TableEntry {
    PartialDecomposition pd;
    std::string key;
    Provenance provenance;
};

/// Pairwise inequivalent partial decompositions on one bag. The first entry
/// inserted for an equivalence class is kept along with its provenance.
class DpTable {
public:
    DpTable() = default;
    explicit DpTable(std::vector<Vertex> boundary, std::size_t cap = 0) : boundary_(std::move(boundary)), cap_(cap) {}

    const std::vector<Vertex>& boundary() const { return boundary_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<TableEntry>& entries() const { return entries_; }
    const TableEntry& operator[](std::size_t i) const { return entries_.at(i); }

    bool contains(const std::string& key) const { return index_.count(key) != 0; }

    /// Adds pd unless an equivalent entry exists; returns whether it was added.
    bool insert(PartialDecomposition pd, Provenance prov) {
        std::string key = canonical_key(pd);
        if (index_.count(key)) return false;
        if (cap_ && entries_.size() >= cap_)
            throw InternalError("DP table exceeded the size cap of " + std::to_string(cap_) + " entries");
        index_.emplace(key, static_cast<int>(entries_.size()));
        entries_.push_back({std::move(pd), std::move(key), std::move(prov)});
        return true;
    }

    std::set<std::string> keys() const {
        std::set<std::string> out;
        for (const auto& e : entries_) out.insert(e.key);
        return out;
    }

    /// Frees the entries but keeps the boundary and the recorded size.
    void release() {
        released_size_ = entries_.size();
        std::vector<TableEntry>().swap(entries_);
        std::unordered_map<std::string, int>().swap(index_);
        released_ = true;
    }

    bool released() const { return released_; }
    std::size_t recorded_size() const { return released_ ? released_size_ : entries_.size(); }

private:
    std::vector<Vertex> boundary_;
    std::size_t cap_ = 0;
    std::vector<TableEntry> entries_;
    std::unordered_map<std::string, int> index_;
    bool released_ = false;
    std::size_t released_size_ = 0;
};

/// log2 of the bound |X|*T + |X|*log2(T) + |X|*log2(|X|) on the number of
/// inequivalent entries over a bag of size x with budget T.
inline double table_size_bound_log2(std::size_t x, int budget) {
    if (x == 0 || budget <= 0) return 0.0;
    const double X = static_cast<double>(x), T = static_cast<double>(budget);
    return X * T + X * std::log2(T) + X * std::log2(X);
}

inline bool within_table_size_bound(std::size_t size, std::size_t x, int budget) {
    if (size <= 1) return true;
    return std::log2(static_cast<double>(size)) <= table_size_bound_log2(x, budget) + 1e-9;
}

}  // namespace treedepth::dp
