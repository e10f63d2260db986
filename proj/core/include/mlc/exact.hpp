#pragma once

#include <cstdint>
#include <unordered_set>

#include "mlc/instance.hpp"

namespace mlc {

struct OptimalResult {
    Tour tour;
    double length = 0;
    std::unordered_set<Edge, EdgeHash> edge_set;
    bool certified = false; // true only for the exact dynamic program
};

// Held-Karp bitmask dynamic program; memory grows as 2^n * n, so n <= 20.
OptimalResult held_karp(const Instance& inst);

// Surrogate optimum: best of 10 nearest-neighbor starts, each polished by
// unrestricted 2-opt to local optimality. Deterministic given the seed and
// flagged certified = false.
OptimalResult pseudo_optimal(const Instance& inst, std::uint64_t seed);

} // namespace mlc
