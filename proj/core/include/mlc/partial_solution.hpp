#pragma once

#include <array>
#include <unordered_set>
#include <vector>

#include "mlc/instance.hpp"

namespace mlc {

// A vertex-disjoint set of simple paths under construction. Every node has
// degree at most 2 and no cycle can form; edges inserted with fixed=true are
// remembered so later phases can refuse to touch them.
class PartialSolution {
public:
    explicit PartialSolution(int n);

    int size() const { return static_cast<int>(degree_.size()); }
    int edge_count() const { return edge_count_; }
    int degree(int u) const { return degree_[u]; }

    // The two adjacency slots of u; -1 marks an empty slot.
    int neighbor(int u, int slot) const { return adj_[u][slot]; }

    bool has_edge(int u, int v) const;
    bool contains(const Edge& e) const { return has_edge(e.u, e.v); }

    // True iff inserting e keeps all paths simple: both endpoints have a free
    // slot and they live in different fragments.
    bool feasible(const Edge& e) const;

    // Throws std::logic_error when the edge is not feasible.
    void insert(const Edge& e, bool fixed = false);

    // Root of the path fragment containing u (union-find representative).
    int fragment(int u) const;

    const std::unordered_set<Edge, EdgeHash>& fixed_edges() const { return fixed_; }

    // All current edges, canonical and sorted.
    std::vector<Edge> edges() const;

    // Walks the Hamiltonian path when edge_count == n-1 and returns the node
    // order; throws std::logic_error otherwise.
    std::vector<int> path_order() const;

private:
    std::vector<int> degree_;
    std::vector<std::array<int, 2>> adj_;
    mutable std::vector<int> parent_; // union-find with path compression
    std::unordered_set<Edge, EdgeHash> fixed_;
    int edge_count_ = 0;
};

} // namespace mlc
