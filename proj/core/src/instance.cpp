#include "mlc/instance.hpp"

#include <cmath>
#include <stdexcept>

#include "mlc/errors.hpp"
#include "mlc/rng.hpp"

namespace mlc {

const char* metric_name(Metric m) {
    switch (m) {
    case Metric::euc2d: return "EUC_2D";
    case Metric::ceil2d: return "CEIL_2D";
    case Metric::att: return "ATT";
    case Metric::euclidean: return "EUC_2D_REAL";
    }
    return "?";
}

Metric metric_from_name(const std::string& name) {
    if (name == "EUC_2D") return Metric::euc2d;
    if (name == "CEIL_2D") return Metric::ceil2d;
    if (name == "ATT") return Metric::att;
    if (name == "EUC_2D_REAL") return Metric::euclidean;
    throw UnsupportedFormatError("unsupported EDGE_WEIGHT_TYPE: " + name);
}

Edge::Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {
    if (a == b) throw std::invalid_argument("edge endpoints must differ");
}

Instance::Instance(std::string name, Metric metric, std::vector<Point> coords)
    : name_(std::move(name)), metric_(metric), coords_(std::move(coords)),
      n_(static_cast<int>(coords_.size())) {
    if (n_ < 3) throw std::invalid_argument("instance needs at least 3 nodes");
    if (n_ <= kMatrixCacheLimit) {
        matrix_.resize(static_cast<std::size_t>(n_) * n_, 0.0);
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
                double d = compute_distance(i, j);
                matrix_[static_cast<std::size_t>(i) * n_ + j] = d;
                matrix_[static_cast<std::size_t>(j) * n_ + i] = d;
            }
    }
}

void Instance::check_pair(int i, int j) const {
    if (i == j) throw std::invalid_argument("distance requires i != j");
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw std::invalid_argument("node id out of range");
}

namespace {
// TSPLIB nint: nearest integer, halves up.
inline double nint(double x) { return std::floor(x + 0.5); }
} // namespace

double Instance::compute_distance(int i, int j) const {
    double dx = coords_[i].x - coords_[j].x;
    double dy = coords_[i].y - coords_[j].y;
    double d = std::sqrt(dx * dx + dy * dy);
    switch (metric_) {
    case Metric::euc2d: return nint(d);
    case Metric::ceil2d: return std::ceil(d);
    case Metric::att: {
        double r = std::sqrt((dx * dx + dy * dy) / 10.0);
        double t = nint(r);
        return t < r ? t + 1.0 : t;
    }
    case Metric::euclidean: return d;
    }
    return d;
}

bool is_valid_tour(const Instance& inst, const Tour& t) {
    const int n = inst.size();
    if (static_cast<int>(t.order.size()) != n) return false;
    std::vector<char> seen(n, 0);
    for (int v : t.order) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

double tour_length(const Instance& inst, const Tour& t) {
    if (!is_valid_tour(inst, t))
        throw std::invalid_argument("tour is not a permutation of 0..n-1");
    const int n = inst.size();
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        total += inst.distance(t.order[i], t.order[(i + 1) % n]);
    return total;
}

std::vector<Edge> tour_edges(const Tour& t) {
    const int n = static_cast<int>(t.order.size());
    std::vector<Edge> edges;
    edges.reserve(n);
    for (int i = 0; i < n; ++i)
        edges.emplace_back(t.order[i], t.order[(i + 1) % n]);
    return edges;
}

Instance random_instance(int n, std::uint64_t seed, const std::string& name) {
    if (n < 3) throw std::invalid_argument("random_instance requires n >= 3");
    Rng rng(seed);
    std::vector<Point> pts(n);
    for (auto& p : pts) {
        p.x = rng.uniform();
        p.y = rng.uniform();
    }
    std::string nm = name.empty()
                         ? "u" + std::to_string(n) + "_s" + std::to_string(seed)
                         : name;
    return Instance(std::move(nm), Metric::euclidean, std::move(pts));
}

} // namespace mlc
