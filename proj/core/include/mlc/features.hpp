#pragma once

#include <vector>

#include "mlc/candidate_lists.hpp"
#include "mlc/instance.hpp"
#include "mlc/partial_solution.hpp"

namespace mlc {

using FeatureVector = std::vector<double>;

// 2 * (k+1) * k: one distance entry and one in-solution indicator per ordered
// pair of distinct patch slots, patch = {i, CL_i[0..k-1]}.
constexpr int feature_dim(int k) { return 2 * (k + 1) * k; }

// Distances are divided by the largest distance inside the patch so entries
// land in [0, 1]; padding slots (|CL_i| < k) read as distance 1, indicator 0.
// Throws DegenerateFeatureError when every patch distance is zero.
FeatureVector build_features(const Instance& inst, const CandidateLists& cl,
                             const PartialSolution& partial, int i);

} // namespace mlc
