#pragma once

#include <vector>

#include "mlc/instance.hpp"

namespace mlc {

/// Per-node candidate lists CL_i: nearby nodes ordered by non-decreasing
/// instance cost, ties broken by lower node id. `k` is the configured list
/// size bound and drives the downstream feature layout.
struct CandidateLists {
    std::vector<std::vector<int>> lists;
    int k = 0;

    int size() const { return static_cast<int>(lists.size()); }
    const std::vector<int>& at(int i) const { return lists[i]; }
};

/// One edge of the promising list: `edge` connects `owner` to its rank-th
/// closest candidate (rank is 1 or 2).
struct PromisingEntry {
    Edge edge;
    int rank;
    int owner;
    double cost;
};

/// Ordered list L_P: every node's two closest candidate edges, deduplicated
/// (best rank wins), rank-1 block before rank-2 block, each block sorted by
/// (cost, canonical edge).
struct PromisingList {
    std::vector<PromisingEntry> entries;
};

/// k nearest neighbors of every node under the instance metric. Uses a full
/// sort per node below kKdTreeThreshold nodes and a k-d tree above it.
CandidateLists knn_candidate_lists(const Instance& inst, int k);

constexpr int kKdTreeThreshold = 1000;

PromisingList build_promising_list(const Instance& inst, const CandidateLists& cl);

} // namespace mlc
