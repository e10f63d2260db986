#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mlc/constructive.hpp"
#include "mlc/exact.hpp"
#include "mlc/instance.hpp"
#include "mlc/rng.hpp"

using namespace mlc;

namespace {

struct Prepared {
    Instance inst;
    CandidateLists cl;
    PromisingList lp;
};

Prepared prepare(int n, std::uint64_t seed, int k = 5) {
    Instance inst = random_instance(n, seed);
    CandidateLists cl = knn_candidate_lists(inst, std::min(k, n - 1));
    PromisingList lp = build_promising_list(inst, cl);
    return {std::move(inst), std::move(cl), std::move(lp)};
}

// checks the partial solution is a union of simple paths over fixed edges
void check_path_system(const PartialSolution& ps) {
    for (int i = 0; i < ps.size(); ++i) REQUIRE(ps.degree(i) <= 2);
    auto fixed = ps.fixed_edges();
    CHECK(fixed.size() == static_cast<std::size_t>(ps.edge_count()));
}

bool tour_has_edge(const Tour& t, const Edge& e) {
    auto edges = tour_edges(t);
    return std::find(edges.begin(), edges.end(), e) != edges.end();
}

} // namespace

TEST_CASE("nn policy fixes exactly the feasible rank-1 prefix") {
    Prepared p = prepare(40, 61);
    PartialSolution ps = phase1(p.inst, p.cl, p.lp, nn_policy(), 1);
    check_path_system(ps);

    // replay the walk: a rank-1 entry is fixed iff feasible at its turn
    PartialSolution replay(p.inst.size());
    for (const auto& ent : p.lp.entries) {
        if (!replay.feasible(ent.edge)) continue;
        if (ent.rank == 1) replay.insert(ent.edge, true);
    }
    CHECK(replay.edges() == ps.edges());
    CHECK(ps.edge_count() > 0);
}

TEST_CASE("baseline policy rates 1/0 reduce to deterministic rules") {
    Prepared p = prepare(30, 62);
    // rate 0 for both ranks fixes nothing
    PartialSolution none = phase1(p.inst, p.cl, p.lp, baseline_policy(0.0, 0.0), 3);
    CHECK(none.edge_count() == 0);
    // rate 1 for rank 1 only equals the nn rule
    PartialSolution nn1 = phase1(p.inst, p.cl, p.lp, baseline_policy(1.0, 0.0), 3);
    PartialSolution nn2 = phase1(p.inst, p.cl, p.lp, nn_policy(), 3);
    CHECK(nn1.edges() == nn2.edges());
    // baseline draws are seed-deterministic
    PartialSolution a = phase1(p.inst, p.cl, p.lp, baseline_policy(0.9, 0.5), 7);
    PartialSolution b = phase1(p.inst, p.cl, p.lp, baseline_policy(0.9, 0.5), 7);
    CHECK(a.edges() == b.edges());
    check_path_system(a);
}

TEST_CASE("opt policy fixes exactly the feasible promising optimal edges") {
    Prepared p = prepare(12, 63);
    OptimalResult opt = held_karp(p.inst);
    PartialSolution ps = phase1(p.inst, p.cl, p.lp, opt_policy(opt.edge_set), 1);
    check_path_system(ps);
    for (const Edge& e : ps.edges()) CHECK(opt.edge_set.count(e) == 1);
    // optimal edges never conflict (degree <= 2, no subtour), so every
    // promising entry that is optimal must have been fixed, except that the
    // last edge of the optimal cycle can never join a path system of n nodes
    std::size_t expected = 0;
    for (const auto& ent : p.lp.entries)
        if (opt.edge_set.count(ent.edge)) ++expected;
    expected = std::min(expected, static_cast<std::size_t>(p.inst.size() - 1));
    CHECK(ps.edges().size() == expected);
}

TEST_CASE("model policy follows the classifier threshold") {
    Prepared p = prepare(25, 64);
    auto hi = make_baseline(1, 0.9);
    auto lo = make_baseline(2, 0.1);
    // rank-1 model accepts everything, rank-2 rejects everything: same as nn
    PartialSolution ps = phase1(p.inst, p.cl, p.lp, model_policy(hi.get(), lo.get()), 1);
    PartialSolution nn = phase1(p.inst, p.cl, p.lp, nn_policy(), 1);
    CHECK(ps.edges() == nn.edges());
    // raising the rank-1 threshold above the rate shuts phase 1 off
    PartialSolution off =
        phase1(p.inst, p.cl, p.lp, model_policy(hi.get(), lo.get(), 0.95, 0.95), 1);
    CHECK(off.edge_count() == 0);
}

TEST_CASE("model policy validates models") {
    Prepared p = prepare(20, 65);
    CHECK_THROWS_AS(phase1(p.inst, p.cl, p.lp, model_policy(nullptr, nullptr), 1),
                    std::invalid_argument);
    auto one = make_baseline(1, 0.5);
    CHECK_THROWS_AS(phase1(p.inst, p.cl, p.lp, model_policy(one.get(), nullptr), 1),
                    std::invalid_argument);
}

TEST_CASE("clarke-wright completes a partial path system into a valid tour") {
    for (int trial = 0; trial < 30; ++trial) {
        Prepared p = prepare(8 + trial * 5, 9000 + trial);
        PartialSolution ps = phase1(p.inst, p.cl, p.lp, nn_policy(), 1);
        auto fixed_before = ps.fixed_edges();
        Tour t = clarke_wright_complete(p.inst, ps);
        REQUIRE(is_valid_tour(p.inst, t));
        for (const Edge& e : fixed_before) CHECK(tour_has_edge(t, e));
    }
}

TEST_CASE("clarke-wright from an empty partial equals plain savings") {
    // hand-checkable diamond: hub is the farthest-from-others node
    Instance inst("d", Metric::euclidean, {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {5, 0.5}});
    PartialSolution empty(5);
    Tour t = clarke_wright_complete(inst, empty);
    REQUIRE(is_valid_tour(inst, t));
    // node 4 is the hub; the tour must visit the square's perimeter without
    // crossing, entering and leaving node 4 from its two nearest nodes 1, 2
    CHECK(tour_has_edge(t, Edge(1, 4)));
    CHECK(tour_has_edge(t, Edge(2, 4)));
}

TEST_CASE("clarke-wright handles an already-spanning path") {
    Instance inst = random_instance(12, 77);
    OptimalResult opt = held_karp(inst);
    PartialSolution ps(12);
    // drop one edge of the optimal cycle to get a spanning path
    auto edges = tour_edges(opt.tour);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) ps.insert(edges[i], true);
    Tour t = clarke_wright_complete(inst, ps);
    REQUIRE(is_valid_tour(inst, t));
    CHECK(tour_length(inst, t) == doctest::Approx(opt.length));
}

TEST_CASE("restricted 2-opt never worsens and respects fixed edges") {
    for (int trial = 0; trial < 20; ++trial) {
        Prepared p = prepare(15 + trial * 7, 9900 + trial);
        PartialSolution ps = phase1(p.inst, p.cl, p.lp, nn_policy(), 1);
        auto fixed = ps.fixed_edges();
        Tour before = clarke_wright_complete(p.inst, ps);
        Tour after = restricted_two_opt(p.inst, before, fixed);
        REQUIRE(is_valid_tour(p.inst, after));
        CHECK(tour_length(p.inst, after) <= tour_length(p.inst, before) + 1e-9);
        for (const Edge& e : fixed) CHECK(tour_has_edge(after, e));
    }
}

TEST_CASE("unrestricted 2-opt reaches a local optimum") {
    for (int trial = 0; trial < 10; ++trial) {
        Instance inst = random_instance(30 + 11 * trial, 5600 + trial);
        // intentionally bad starting tour: identity order
        std::vector<int> order(inst.size());
        for (int i = 0; i < inst.size(); ++i) order[i] = i;
        Tour t = restricted_two_opt(inst, Tour{order}, {}, 1000000);
        REQUIRE(is_valid_tour(inst, t));
        const auto& v = t.order;
        const int n = inst.size();
        for (int i = 0; i < n - 1; ++i)
            for (int j = i + 1; j < n; ++j) {
                int a = v[i], b = v[(i + 1) % n];
                int c = v[j], d = v[(j + 1) % n];
                if (a == c || a == d || b == c) continue;
                CHECK(inst.distance(a, c) + inst.distance(b, d) -
                          inst.distance(a, b) - inst.distance(c, d) >=
                      -1e-9);
            }
    }
}

TEST_CASE("2-opt uncrosses a crossing unless the crossing is fixed") {
    Instance inst("sq", Metric::euclidean, {{0, 0}, {10, 0}, {10, 10}, {0, 10}});
    Tour crossed{{0, 2, 1, 3}};
    Tour fixed_free = restricted_two_opt(inst, crossed, {});
    CHECK(tour_length(inst, fixed_free) == doctest::Approx(40.0));
    // freezing one diagonal blocks both uncrossing moves on this 4-cycle
    std::unordered_set<Edge, EdgeHash> diag = {Edge(0, 2)};
    Tour still = restricted_two_opt(inst, crossed, diag);
    CHECK(tour_has_edge(still, Edge(0, 2)));
}

TEST_CASE("2-opt validates its inputs") {
    Instance inst = random_instance(10, 3);
    CHECK_THROWS_AS(restricted_two_opt(inst, Tour{{0, 1, 2}}, {}),
                    std::invalid_argument);
    // fixed edge not on the tour
    Tour t{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}};
    std::unordered_set<Edge, EdgeHash> phantom = {Edge(0, 5)};
    CHECK_THROWS_AS(restricted_two_opt(inst, t, phantom), std::invalid_argument);
}

TEST_CASE("solve produces valid tours under every policy and list kind") {
    Instance inst = random_instance(60, 404);
    OptimalResult pseudo = pseudo_optimal(inst, 9);

    std::vector<SolveConfig> configs;
    {
        SolveConfig c;
        c.policy = nn_policy();
        configs.push_back(c);
        c.cl_kind = CandidateKind::delaunay;
        configs.push_back(c);
        c = SolveConfig{};
        c.policy = baseline_policy(0.9, 0.5);
        configs.push_back(c);
        c = SolveConfig{};
        c.policy = opt_policy(pseudo.edge_set);
        c.phase3 = false;
        configs.push_back(c);
    }
    for (const auto& cfg : configs) {
        SolveResult r = solve(inst, cfg);
        REQUIRE(is_valid_tour(inst, r.tour));
        CHECK(r.length == doctest::Approx(tour_length(inst, r.tour)));
        CHECK(r.fixed_edge_count >= 0);
        CHECK(r.fixed_edge_count <= 60);
    }
}

TEST_CASE("phase 3 can only help") {
    for (int trial = 0; trial < 10; ++trial) {
        Instance inst = random_instance(40 + 13 * trial, 7070 + trial);
        SolveConfig off;
        off.policy = nn_policy();
        off.phase3 = false;
        SolveConfig on = off;
        on.phase3 = true;
        CHECK(solve(inst, on).length <= solve(inst, off).length + 1e-9);
    }
}

TEST_CASE("solve clamps k on tiny instances") {
    Instance inst("sq", Metric::euclidean, {{0, 0}, {10, 0}, {10, 10}, {0, 10}});
    SolveConfig cfg; // default k = 5 exceeds n - 1
    cfg.policy = nn_policy();
    SolveResult r = solve(inst, cfg);
    REQUIRE(is_valid_tour(inst, r.tour));
    CHECK(r.length == doctest::Approx(40.0));
    cfg.k = 0;
    CHECK_THROWS_AS(solve(inst, cfg), std::invalid_argument);
}

TEST_CASE("solve is deterministic for a fixed seed") {
    Instance inst = random_instance(50, 505);
    SolveConfig cfg;
    cfg.policy = baseline_policy(0.8, 0.4);
    cfg.seed = 11;
    SolveResult a = solve(inst, cfg);
    SolveResult b = solve(inst, cfg);
    CHECK(a.tour.order == b.tour.order);
    CHECK(a.fixed_edge_count == b.fixed_edge_count);
}

TEST_CASE("candidate kind names round trip") {
    CHECK(candidate_kind_from_name(candidate_kind_name(CandidateKind::knn)) ==
          CandidateKind::knn);
    CHECK(candidate_kind_from_name(candidate_kind_name(CandidateKind::delaunay)) ==
          CandidateKind::delaunay);
    CHECK_THROWS_AS(candidate_kind_from_name("grid"), std::invalid_argument);
}
