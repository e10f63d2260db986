#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mlc {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Distance rule applied to node coordinates. The first three follow the
/// TSPLIB conventions and produce integral costs; `euclidean` is the
/// unrounded metric used for generated unit-square instances.
enum class Metric { euc2d, ceil2d, att, euclidean };

const char* metric_name(Metric m);
Metric metric_from_name(const std::string& name); // throws UnsupportedFormatError

/// Undirected edge with canonical endpoint order (u < v).
struct Edge {
    int u;
    int v;

    Edge(int a, int b);
    auto operator<=>(const Edge&) const = default;
};

struct EdgeHash {
    std::size_t operator()(const Edge& e) const {
        return std::hash<std::uint64_t>()(
            (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint64_t>(e.v));
    }
};

/// A TSP instance: named 2-D point set plus the metric that derives edge
/// costs. Immutable once constructed; below kMatrixCacheLimit nodes all
/// pairwise costs are precomputed, above it they are evaluated on demand.
class Instance {
public:
    static constexpr int kMatrixCacheLimit = 5000;

    Instance(std::string name, Metric metric, std::vector<Point> coords);

    int size() const { return n_; }
    const std::string& name() const { return name_; }
    Metric metric() const { return metric_; }
    const std::vector<Point>& coords() const { return coords_; }
    const Point& coord(int i) const { return coords_[i]; }

    /// Edge cost c(i,j). Symmetric; integral for TSPLIB metrics.
    double distance(int i, int j) const {
        check_pair(i, j);
        if (!matrix_.empty())
            return matrix_[static_cast<std::size_t>(i) * n_ + j];
        return compute_distance(i, j);
    }

private:
    void check_pair(int i, int j) const;
    double compute_distance(int i, int j) const;

    std::string name_;
    Metric metric_;
    std::vector<Point> coords_;
    int n_;
    std::vector<double> matrix_; // empty when n_ > kMatrixCacheLimit
};

/// Visit order of all n nodes; the closing edge back to order[0] is implicit.
struct Tour {
    std::vector<int> order;
};

bool is_valid_tour(const Instance& inst, const Tour& t);

/// Sum of consecutive costs plus the closing edge. Throws on an invalid
/// permutation.
double tour_length(const Instance& inst, const Tour& t);

/// Canonical edge set of a tour (n edges).
std::vector<Edge> tour_edges(const Tour& t);

/// n points i.i.d. uniform in the unit square, metric `euclidean`.
/// Deterministic in `seed`.
Instance random_instance(int n, std::uint64_t seed, const std::string& name = "");

} // namespace mlc
