#include "mlc/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mlc/constructive.hpp"
#include "mlc/rng.hpp"

namespace mlc {

namespace {

OptimalResult finish(const Instance& inst, Tour tour, bool certified) {
    OptimalResult r;
    r.length = tour_length(inst, tour);
    auto edges = tour_edges(tour);
    r.edge_set = {edges.begin(), edges.end()};
    r.tour = std::move(tour);
    r.certified = certified;
    return r;
}

Tour nearest_neighbor_tour(const Instance& inst, int start) {
    const int n = inst.size();
    std::vector<char> visited(n, 0);
    std::vector<int> order;
    order.reserve(n);
    order.push_back(start);
    visited[start] = 1;
    int cur = start;
    for (int step = 1; step < n; ++step) {
        int best = -1;
        double best_d = 0;
        for (int j = 0; j < n; ++j) {
            if (visited[j]) continue;
            double d = inst.distance(cur, j);
            if (best < 0 || d < best_d) {
                best = j;
                best_d = d;
            }
        }
        order.push_back(best);
        visited[best] = 1;
        cur = best;
    }
    return Tour{std::move(order)};
}

} // namespace

OptimalResult held_karp(const Instance& inst) {
    const int n = inst.size();
    if (n > 20) throw std::invalid_argument("held_karp is limited to 20 nodes");

    // Paths start at node 0; masks range over the other m = n-1 nodes, and
    // dp[mask][j] is the cheapest 0 -> ... -> (j+1) path visiting exactly the
    // nodes set in mask (bit j stands for node j+1).
    const int m = n - 1;
    const std::size_t masks = std::size_t{1} << m;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dp(masks * m, inf);
    std::vector<std::int8_t> parent(masks * m, -1);

    for (int j = 0; j < m; ++j)
        dp[(std::size_t{1} << j) * m + j] = inst.distance(0, j + 1);

    // Forward DP: extend every reachable state by one unvisited node.
    for (std::size_t mask = 1; mask < masks; ++mask) {
        for (int j = 0; j < m; ++j) {
            if (!(mask >> j & 1)) continue;
            double cur = dp[mask * m + j];
            if (cur == inf) continue;
            for (int t = 0; t < m; ++t) {
                if (mask >> t & 1) continue;
                std::size_t next = mask | (std::size_t{1} << t);
                double cand = cur + inst.distance(j + 1, t + 1);
                if (cand < dp[next * m + t]) {
                    dp[next * m + t] = cand;
                    parent[next * m + t] = static_cast<std::int8_t>(j);
                }
            }
        }
    }

    const std::size_t full = masks - 1;
    int best_j = -1;
    double best = inf;
    for (int j = 0; j < m; ++j) {
        double cand = dp[full * m + j] + inst.distance(j + 1, 0);
        if (cand < best) {
            best = cand;
            best_j = j;
        }
    }

    std::vector<int> order;
    order.reserve(n);
    std::size_t mask = full;
    int j = best_j;
    while (j >= 0) {
        order.push_back(j + 1);
        int p = parent[mask * m + j];
        mask ^= std::size_t{1} << j;
        j = p;
    }
    order.push_back(0);
    std::reverse(order.begin(), order.end());
    return finish(inst, Tour{std::move(order)}, true);
}

OptimalResult pseudo_optimal(const Instance& inst, std::uint64_t seed) {
    const int n = inst.size();
    const std::unordered_set<Edge, EdgeHash> no_fixed;
    Rng rng(seed);

    Tour best_tour;
    double best_len = std::numeric_limits<double>::infinity();
    for (int s = 0; s < 10; ++s) {
        int start = rng.uniform_int(0, n - 1);
        Tour t = nearest_neighbor_tour(inst, start);
        t = restricted_two_opt(inst, t, no_fixed, 1000000);
        double len = tour_length(inst, t);
        if (len < best_len) {
            best_len = len;
            best_tour = std::move(t);
        }
    }
    return finish(inst, std::move(best_tour), false);
}

} // namespace mlc
