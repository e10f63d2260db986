#include "mlc/candidate_lists.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "mlc/kdtree.hpp"

namespace mlc {

namespace {

// Largest Euclidean distance a node can have while its metric cost does not
// exceed the metric cost at Euclidean distance r. Used to widen k-d tree
// results so that selection by (metric cost, id) stays exact under rounding.
double metric_radius_bound(Metric m, double r) {
    switch (m) {
    case Metric::euc2d: return r + 1.0;                    // nint moves by <= 0.5 each way
    case Metric::ceil2d: return r + 1.0;
    case Metric::att: return r + 2.0 * std::sqrt(10.0);    // cost step is sqrt(10) wide
    case Metric::euclidean: return r * (1.0 + 1e-12);      // sqrt/square rounding slack
    }
    return r;
}

std::vector<int> knn_by_scan(const Instance& inst, int i, int k) {
    const int n = inst.size();
    std::vector<std::pair<double, int>> cand;
    cand.reserve(n - 1);
    for (int j = 0; j < n; ++j)
        if (j != i) cand.emplace_back(inst.distance(i, j), j);
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    std::vector<int> out(k);
    for (int t = 0; t < k; ++t) out[t] = cand[t].second;
    return out;
}

std::vector<int> knn_by_tree(const Instance& inst, const KdTree2D& tree, int i, int k) {
    // Euclidean k-nearest first, then widen the radius enough that every node
    // that could beat the k-th entry under (metric cost, id) is present.
    std::vector<int> near = tree.nearest(inst.coord(i), k, i);
    double worst_euclid = 0.0;
    for (int j : near) {
        double dx = inst.coord(i).x - inst.coord(j).x;
        double dy = inst.coord(i).y - inst.coord(j).y;
        worst_euclid = std::max(worst_euclid, std::sqrt(dx * dx + dy * dy));
    }
    double radius = metric_radius_bound(inst.metric(), worst_euclid);
    std::vector<int> pool = tree.within_radius(inst.coord(i), radius, i);
    if (pool.size() < static_cast<std::size_t>(k))
        return knn_by_scan(inst, i, k);  // rounding starved the pool; stay exact

    std::vector<std::pair<double, int>> cand;
    cand.reserve(pool.size());
    for (int j : pool) cand.emplace_back(inst.distance(i, j), j);
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    std::vector<int> out(k);
    for (int t = 0; t < k; ++t) out[t] = cand[t].second;
    return out;
}

} // namespace

CandidateLists knn_candidate_lists(const Instance& inst, int k) {
    const int n = inst.size();
    if (k < 1 || k > n - 1)
        throw std::invalid_argument("k must be in [1, n-1]");

    CandidateLists cl;
    cl.k = k;
    cl.lists.resize(n);

    if (n <= kKdTreeThreshold) {
        for (int i = 0; i < n; ++i) cl.lists[i] = knn_by_scan(inst, i, k);
    } else {
        KdTree2D tree(inst.coords());
        for (int i = 0; i < n; ++i) cl.lists[i] = knn_by_tree(inst, tree, i, k);
    }
    return cl;
}

PromisingList build_promising_list(const Instance& inst, const CandidateLists& cl) {
    const int n = cl.size();
    for (int i = 0; i < n; ++i)
        if (cl.at(i).size() < 2)
            throw std::invalid_argument("promising list requires |CL_i| >= 2 for all i");

    // Collect both candidate edges of every node, keeping one entry per
    // canonical edge: lowest rank first, then lowest cost, then first owner.
    std::unordered_map<Edge, std::size_t, EdgeHash> best;
    std::vector<PromisingEntry> entries;
    entries.reserve(2 * static_cast<std::size_t>(n));
    for (int rank = 1; rank <= 2; ++rank) {
        for (int i = 0; i < n; ++i) {
            int j = cl.at(i)[rank - 1];
            Edge e(i, j);
            double cost = inst.distance(i, j);
            auto it = best.find(e);
            if (it == best.end()) {
                best.emplace(e, entries.size());
                entries.push_back(PromisingEntry{e, rank, i, cost});
            }
            // Rank-1 pass runs first, so an existing entry already has the
            // better (or equal) rank and an identical cost.
        }
    }

    std::sort(entries.begin(), entries.end(),
              [](const PromisingEntry& a, const PromisingEntry& b) {
                  if (a.rank != b.rank) return a.rank < b.rank;
                  if (a.cost != b.cost) return a.cost < b.cost;
                  return a.edge < b.edge;
              });
    return PromisingList{std::move(entries)};
}

} // namespace mlc
