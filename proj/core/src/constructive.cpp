#include "mlc/constructive.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "mlc/delaunay.hpp"
#include "mlc/errors.hpp"
#include "mlc/features.hpp"
#include "mlc/rng.hpp"

namespace mlc {

Policy baseline_policy(double rate1, double rate2) {
    Policy p;
    p.kind = PolicyKind::baseline;
    p.baseline_rates = {rate1, rate2};
    return p;
}

Policy nn_policy() {
    Policy p;
    p.kind = PolicyKind::nn_rule;
    return p;
}

Policy model_policy(const Classifier* rank1, const Classifier* rank2,
                    double threshold1, double threshold2) {
    Policy p;
    p.kind = PolicyKind::model;
    p.model1 = rank1;
    p.model2 = rank2;
    p.thresholds = {threshold1, threshold2};
    return p;
}

Policy opt_policy(std::unordered_set<Edge, EdgeHash> optimal_edges) {
    Policy p;
    p.kind = PolicyKind::opt;
    p.optimal_edges = std::move(optimal_edges);
    return p;
}

PartialSolution phase1(const Instance& inst, const CandidateLists& cl,
                       const PromisingList& lp, const Policy& policy,
                       std::uint64_t seed) {
    if (policy.kind == PolicyKind::model) {
        if (!policy.model1 || !policy.model2)
            throw std::invalid_argument("model policy needs both rank classifiers");
        const int dim = feature_dim(cl.k);
        for (const Classifier* m : {policy.model1, policy.model2})
            if (m->dim() != 0 && m->dim() != dim)
                throw std::invalid_argument("classifier dimension does not match k");
    }

    PartialSolution partial(inst.size());
    Rng rng(seed);
    for (const auto& entry : lp.entries) {
        if (!partial.feasible(entry.edge)) continue;
        bool accept = false;
        switch (policy.kind) {
            case PolicyKind::baseline:
                accept = rng.bernoulli(policy.baseline_rates[entry.rank - 1]);
                break;
            case PolicyKind::nn_rule:
                accept = entry.rank == 1;
                break;
            case PolicyKind::model: {
                const Classifier* m = entry.rank == 1 ? policy.model1 : policy.model2;
                try {
                    FeatureVector f = build_features(inst, cl, partial, entry.owner);
                    accept = m->predict(f) > policy.thresholds[entry.rank - 1];
                } catch (const DegenerateFeatureError&) {
                    // Zero-size patch (duplicate points): no geometry to judge,
                    // treat like the nearest-neighbor rule.
                    accept = entry.rank == 1;
                }
                break;
            }
            case PolicyKind::opt:
                accept = policy.optimal_edges.count(entry.edge) > 0;
                break;
        }
        if (accept) partial.insert(entry.edge, true);
    }
    return partial;
}

Tour clarke_wright_complete(const Instance& inst, const PartialSolution& partial) {
    const int n = inst.size();
    if (partial.size() != n)
        throw std::invalid_argument("partial solution does not match instance");

    PartialSolution work = partial;
    if (work.edge_count() < n - 1) {
        // Hub: the node farthest from everyone else, lowest id on ties.
        int hub = 0;
        double worst = -1.0;
        for (int i = 0; i < n; ++i) {
            double total = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) total += inst.distance(i, j);
            if (total > worst) {
                worst = total;
                hub = i;
            }
        }

        std::vector<int> ends;
        for (int i = 0; i < n; ++i)
            if (work.degree(i) < 2) ends.push_back(i);

        struct Saving {
            double value;
            int u, v;
        };
        std::vector<Saving> savings;
        savings.reserve(ends.size() * (ends.size() - 1) / 2);
        for (std::size_t a = 0; a < ends.size(); ++a)
            for (std::size_t b = a + 1; b < ends.size(); ++b) {
                int i = ends[a], j = ends[b];
                double s = (i == hub || j == hub)
                               ? 0.0
                               : inst.distance(i, hub) + inst.distance(j, hub) -
                                     inst.distance(i, j);
                savings.push_back({s, i, j});
            }
        std::sort(savings.begin(), savings.end(), [](const Saving& a, const Saving& b) {
            if (a.value != b.value) return a.value > b.value;
            return std::pair(a.u, a.v) < std::pair(b.u, b.v);
        });

        for (const auto& s : savings) {
            if (work.edge_count() == n - 1) break;
            Edge e(s.u, s.v);
            if (work.feasible(e)) work.insert(e);
        }

        // The all-pairs pass normally finishes the path; this mop-up guards
        // the unexpected.
        while (work.edge_count() < n - 1) {
            double best = 0.0;
            Edge best_edge(0, 1);
            bool found = false;
            for (int i = 0; i < n; ++i) {
                if (work.degree(i) >= 2) continue;
                for (int j = i + 1; j < n; ++j) {
                    if (work.degree(j) >= 2) continue;
                    Edge e(i, j);
                    if (!work.feasible(e)) continue;
                    double c = inst.distance(i, j);
                    if (!found || c < best) {
                        best = c;
                        best_edge = e;
                        found = true;
                    }
                }
            }
            if (!found) throw std::logic_error("cannot complete partial solution");
            work.insert(best_edge);
        }
    }

    return Tour{work.path_order()};
}

Tour restricted_two_opt(const Instance& inst, const Tour& tour,
                        const std::unordered_set<Edge, EdgeHash>& fixed,
                        int max_passes) {
    const int n = inst.size();
    if (!is_valid_tour(inst, tour))
        throw std::invalid_argument("input tour is not a valid permutation");
    {
        auto edges = tour_edges(tour);
        std::unordered_set<Edge, EdgeHash> edge_set(edges.begin(), edges.end());
        for (const auto& e : fixed)
            if (!edge_set.count(e))
                throw std::invalid_argument("fixed edge missing from tour");
    }

    // Exact strict improvement on integral metrics; epsilon guard on real ones.
    const double min_gain = inst.metric() == Metric::euclidean ? 1e-10 : 0.0;

    std::vector<int> t = tour.order;
    for (int pass = 0; pass < max_passes; ++pass) {
        bool improved = false;
        for (int i = 0; i < n - 1; ++i) {
            int a = t[i], b = t[i + 1];
            if (fixed.count(Edge(a, b))) continue;
            int j_end = i == 0 ? n - 1 : n;
            for (int j = i + 2; j < j_end; ++j) {
                int c = t[j], d = t[(j + 1) % n];
                if (fixed.count(Edge(c, d))) continue;
                double delta = inst.distance(a, c) + inst.distance(b, d) -
                               inst.distance(a, b) - inst.distance(c, d);
                if (delta < -min_gain) {
                    std::reverse(t.begin() + i + 1, t.begin() + j + 1);
                    improved = true;
                    break; // move applied; the sweep resumes at the next i
                }
            }
        }
        if (!improved) break;
    }
    return Tour{std::move(t)};
}

std::string candidate_kind_name(CandidateKind kind) {
    return kind == CandidateKind::knn ? "knn" : "delaunay";
}

CandidateKind candidate_kind_from_name(const std::string& name) {
    if (name == "knn") return CandidateKind::knn;
    if (name == "delaunay") return CandidateKind::delaunay;
    throw std::invalid_argument("unknown candidate list kind: " + name);
}

SolveResult solve(const Instance& inst, const SolveConfig& config) {
    using clock = std::chrono::steady_clock;
    auto ms_since = [](clock::time_point start) {
        return std::chrono::duration<double, std::milli>(clock::now() - start).count();
    };

    SolveResult result;

    if (config.k < 1) throw std::invalid_argument("k must be positive");
    // Tiny instances cannot honor a large k; promising lists need two ranks.
    const int k = std::clamp(config.k, 2, inst.size() - 1);

    auto t0 = clock::now();
    CandidateLists cl;
    if (config.cl_kind == CandidateKind::knn) {
        cl = knn_candidate_lists(inst, k);
    } else {
        auto tri = delaunay_triangulate(inst);
        cl = delaunay_candidate_lists(inst, tri, k);
    }
    PromisingList lp = build_promising_list(inst, cl);
    result.candidates_ms = ms_since(t0);

    auto t1 = clock::now();
    PartialSolution partial = phase1(inst, cl, lp, config.policy, config.seed);
    result.fixed_edge_count = static_cast<int>(partial.fixed_edges().size());
    result.phase1_ms = ms_since(t1);

    auto t2 = clock::now();
    Tour tour = clarke_wright_complete(inst, partial);
    result.phase2_ms = ms_since(t2);

    if (config.phase3) {
        auto t3 = clock::now();
        tour = restricted_two_opt(inst, tour, partial.fixed_edges(), config.max_passes);
        result.phase3_ms = ms_since(t3);
    }

    result.length = tour_length(inst, tour);
    result.tour = std::move(tour);
    return result;
}

} // namespace mlc
