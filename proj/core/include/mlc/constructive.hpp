#pragma once

#include <array>
#include <cstdint>
#include <unordered_set>

#include "mlc/candidate_lists.hpp"
#include "mlc/instance.hpp"
#include "mlc/models.hpp"
#include "mlc/partial_solution.hpp"

namespace mlc {

enum class PolicyKind { baseline, nn_rule, model, opt };

// Decision rule applied to each promising-list entry during phase 1.
struct Policy {
    PolicyKind kind = PolicyKind::nn_rule;
    std::array<double, 2> baseline_rates{0.84, 0.71};  // Bernoulli rates by rank
    const Classifier* model1 = nullptr;              // rank-1 / rank-2 classifiers
    const Classifier* model2 = nullptr;
    // Acceptance thresholds by rank. Defaults tuned on held-out instances:
    // lenient on the first edge (completion rewards recall), strict on the
    // second.
    std::array<double, 2> thresholds{0.30, 0.65};
    std::unordered_set<Edge, EdgeHash> optimal_edges;
};

Policy baseline_policy(double rate1, double rate2);
Policy nn_policy();
Policy model_policy(const Classifier* rank1, const Classifier* rank2,
                    double threshold1 = 0.30, double threshold2 = 0.65);
Policy opt_policy(std::unordered_set<Edge, EdgeHash> optimal_edges);

// Walks the promising list in order and fixes each feasible edge the policy
// accepts. Features for model policies are built against the partial solution
// as it stands at that entry.
PartialSolution phase1(const Instance& inst, const CandidateLists& cl,
                       const PromisingList& lp, const Policy& policy,
                       std::uint64_t seed);

// Completes the paths into a Hamiltonian tour with Clarke-Wright savings
// merges around the farthest-from-others hub; fixed edges are untouched.
Tour clarke_wright_complete(const Instance& inst, const PartialSolution& partial);

// First-improvement 2-opt sweeps that refuse to remove fixed edges. A pass is
// one full sweep over edge pairs; stops on a clean sweep or after max_passes.
Tour restricted_two_opt(const Instance& inst, const Tour& tour,
                        const std::unordered_set<Edge, EdgeHash>& fixed,
                        int max_passes = 50);

enum class CandidateKind { knn, delaunay };
std::string candidate_kind_name(CandidateKind kind);
CandidateKind candidate_kind_from_name(const std::string& name);

struct SolveConfig {
    CandidateKind cl_kind = CandidateKind::knn;
    int k = 5;
    Policy policy;
    bool phase3 = true;
    int max_passes = 50;
    std::uint64_t seed = 1;
};

struct SolveResult {
    Tour tour;
    double length = 0;
    int fixed_edge_count = 0;
    double candidates_ms = 0, phase1_ms = 0, phase2_ms = 0, phase3_ms = 0;
};

SolveResult solve(const Instance& inst, const SolveConfig& config);

} // namespace mlc
