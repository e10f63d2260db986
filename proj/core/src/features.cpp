#include "mlc/features.hpp"

#include <algorithm>
#include <stdexcept>

#include "mlc/errors.hpp"

namespace mlc {

FeatureVector build_features(const Instance& inst, const CandidateLists& cl,
                             const PartialSolution& partial, int i) {
    if (i < 0 || i >= inst.size()) throw std::invalid_argument("node id out of range");
    const auto& list = cl.at(i);
    if (list.size() < 2)
        throw std::invalid_argument("candidate list must hold at least two nodes");

    const int k = cl.k;
    const int slots = k + 1;
    std::vector<int> patch(slots, -1); // -1 marks a padding slot
    patch[0] = i;
    for (int s = 0; s < k && s < static_cast<int>(list.size()); ++s)
        patch[s + 1] = list[s];

    double patch_max = 0.0;
    for (int a = 0; a < slots; ++a)
        for (int b = a + 1; b < slots; ++b)
            if (patch[a] >= 0 && patch[b] >= 0)
                patch_max = std::max(patch_max, inst.distance(patch[a], patch[b]));
    if (patch_max <= 0.0)
        throw DegenerateFeatureError("all patch distances are zero");

    FeatureVector f;
    f.reserve(feature_dim(k));
    for (int a = 0; a < slots; ++a)
        for (int b = 0; b < slots; ++b) {
            if (a == b) continue;
            if (patch[a] < 0 || patch[b] < 0)
                f.push_back(1.0);
            else
                f.push_back(inst.distance(patch[a], patch[b]) / patch_max);
        }
    for (int a = 0; a < slots; ++a)
        for (int b = 0; b < slots; ++b) {
            if (a == b) continue;
            if (patch[a] < 0 || patch[b] < 0)
                f.push_back(0.0);
            else
                f.push_back(partial.has_edge(patch[a], patch[b]) ? 1.0 : 0.0);
        }
    return f;
}

} // namespace mlc
