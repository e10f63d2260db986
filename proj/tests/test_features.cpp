#include <stdexcept>

#include "doctest.h"
#include "mlc/candidate_lists.hpp"
#include "mlc/errors.hpp"
#include "mlc/features.hpp"
#include "mlc/instance.hpp"
#include "mlc/partial_solution.hpp"

using namespace mlc;

TEST_CASE("feature dimension formula") {
    CHECK(feature_dim(2) == 12);
    CHECK(feature_dim(5) == 60);
    CHECK(feature_dim(10) == 220);
}

TEST_CASE("hand-computed features on a 3-4-5 triangle") {
    Instance inst("tri", Metric::euclidean, {{0, 0}, {3, 0}, {0, 4}});
    CandidateLists cl = knn_candidate_lists(inst, 2);
    REQUIRE(cl.at(0) == std::vector<int>{1, 2});

    PartialSolution ps(3);
    ps.insert(Edge(0, 1));
    FeatureVector f = build_features(inst, cl, ps, 0);
    REQUIRE(f.size() == 12);
    // patch slots: [0, 1, 2]; max pairwise distance = d(1,2) = 5
    // distance block, ordered pairs row-major
    CHECK(f[0] == doctest::Approx(0.6)); // (0,1): 3/5
    CHECK(f[1] == doctest::Approx(0.8)); // (0,2): 4/5
    CHECK(f[2] == doctest::Approx(0.6)); // (1,0)
    CHECK(f[3] == doctest::Approx(1.0)); // (1,2): 5/5
    CHECK(f[4] == doctest::Approx(0.8)); // (2,0)
    CHECK(f[5] == doctest::Approx(1.0)); // (2,1)
    // indicator block mirrors the same pair order
    CHECK(f[6] == 1.0);  // (0,1) inserted
    CHECK(f[7] == 0.0);
    CHECK(f[8] == 1.0);  // (1,0)
    CHECK(f[9] == 0.0);
    CHECK(f[10] == 0.0);
    CHECK(f[11] == 0.0);
}

TEST_CASE("padding slots read as distance 1 and indicator 0") {
    Instance inst("tri", Metric::euclidean, {{0, 0}, {3, 0}, {0, 4}});
    CandidateLists cl;
    cl.k = 4; // wider than the 2 candidates actually available
    cl.lists = {{1, 2}, {0, 2}, {0, 1}};
    PartialSolution ps(3);
    FeatureVector f = build_features(inst, cl, ps, 0);
    REQUIRE(f.size() == 40); // 2 * 5 * 4
    // slots: [0, 1, 2, pad, pad]; ordered pair (0,3) is index 2
    CHECK(f[2] == 1.0);
    CHECK(f[3] == 1.0);  // (0,4)
    CHECK(f[15] == 1.0); // (3,4): both padded
    CHECK(f[20 + 2] == 0.0);
    CHECK(f[20 + 15] == 0.0);
}

TEST_CASE("features stay in the unit interval") {
    Instance inst = random_instance(40, 123);
    CandidateLists cl = knn_candidate_lists(inst, 5);
    PartialSolution ps(40);
    ps.insert(Edge(0, 1));
    ps.insert(Edge(1, 2));
    for (int i = 0; i < 40; ++i) {
        FeatureVector f = build_features(inst, cl, ps, i);
        REQUIRE(f.size() == 60);
        for (double v : f) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("features depend only on the patch") {
    // two instances identical except for a node far outside node 0's patch
    std::vector<Point> a = {{0, 0}, {1, 0}, {0, 1}, {50, 50}};
    std::vector<Point> b = a;
    b[3] = {80, 80};
    Instance ia("a", Metric::euclidean, a), ib("b", Metric::euclidean, b);
    CandidateLists cl;
    cl.k = 2;
    cl.lists = {{1, 2}, {0, 2}, {0, 1}, {1, 2}};
    PartialSolution ps(4);
    CHECK(build_features(ia, cl, ps, 0) == build_features(ib, cl, ps, 0));
}

TEST_CASE("an all-zero patch is degenerate") {
    Instance inst("dup", Metric::euclidean, {{1, 1}, {1, 1}, {1, 1}, {9, 9}});
    CandidateLists cl;
    cl.k = 2;
    cl.lists = {{1, 2}, {0, 2}, {0, 1}, {0, 1}};
    PartialSolution ps(4);
    CHECK_THROWS_AS(build_features(inst, cl, ps, 0), DegenerateFeatureError);
    // node 3's patch spans distinct points, so it is fine
    cl.lists[3] = {0, 1};
    CHECK_NOTHROW(build_features(inst, cl, ps, 3));
}

TEST_CASE("argument validation") {
    Instance inst = random_instance(10, 5);
    CandidateLists cl = knn_candidate_lists(inst, 3);
    PartialSolution ps(10);
    CHECK_THROWS_AS(build_features(inst, cl, ps, -1), std::invalid_argument);
    CHECK_THROWS_AS(build_features(inst, cl, ps, 10), std::invalid_argument);
    CandidateLists thin;
    thin.k = 3;
    thin.lists.assign(10, {1});
    thin.lists[1] = {0};
    CHECK_THROWS_AS(build_features(inst, thin, ps, 2), std::invalid_argument);
}
