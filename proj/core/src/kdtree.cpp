#include "mlc/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace mlc {

namespace {
inline double sqdist(const Point& a, const Point& b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}
inline double coord(const Point& p, int axis) { return axis == 0 ? p.x : p.y; }
} // namespace

KdTree2D::KdTree2D(const std::vector<Point>& points) : points_(points) {
    std::vector<int> ids(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) ids[i] = static_cast<int>(i);
    nodes_.reserve(points.size());
    root_ = build(ids, 0, static_cast<int>(ids.size()), 0);
}

int KdTree2D::build(std::vector<int>& ids, int lo, int hi, int depth) {
    if (lo >= hi) return -1;
    int axis = depth % 2;
    int mid = (lo + hi) / 2;
    std::nth_element(ids.begin() + lo, ids.begin() + mid, ids.begin() + hi,
                     [&](int a, int b) {
                         double ca = coord(points_[a], axis), cb = coord(points_[b], axis);
                         return ca < cb || (ca == cb && a < b);
                     });
    int node_idx = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{ids[mid], -1, -1, axis});
    int left = build(ids, lo, mid, depth + 1);
    int right = build(ids, mid + 1, hi, depth + 1);
    nodes_[node_idx].left = left;
    nodes_[node_idx].right = right;
    return node_idx;
}

std::vector<int> KdTree2D::nearest(const Point& query, int k, int exclude) const {
    if (k <= 0 || root_ < 0) return {};
    using Entry = std::pair<double, int>; // (sqdist, id); max-heap on this pair
    std::priority_queue<Entry> heap;

    // Recursive search with pruning against the current k-th best.
    auto visit = [&](auto&& self, int ni) -> void {
        if (ni < 0) return;
        const Node& nd = nodes_[ni];
        if (nd.point != exclude) {
            Entry cand{sqdist(points_[nd.point], query), nd.point};
            if (static_cast<int>(heap.size()) < k) {
                heap.push(cand);
            } else if (cand < heap.top()) {
                heap.pop();
                heap.push(cand);
            }
        }
        double diff = coord(query, nd.axis) - coord(points_[nd.point], nd.axis);
        int first = diff <= 0 ? nd.left : nd.right;
        int second = diff <= 0 ? nd.right : nd.left;
        self(self, first);
        // The far side can still hold an equal-distance point with a smaller
        // id, so descend on ties as well.
        if (static_cast<int>(heap.size()) < k || diff * diff <= heap.top().first)
            self(self, second);
    };
    visit(visit, root_);

    std::vector<Entry> out;
    out.reserve(heap.size());
    while (!heap.empty()) {
        out.push_back(heap.top());
        heap.pop();
    }
    std::sort(out.begin(), out.end());
    std::vector<int> ids;
    ids.reserve(out.size());
    for (const auto& e : out) ids.push_back(e.second);
    return ids;
}

std::vector<int> KdTree2D::within_radius(const Point& query, double radius,
                                         int exclude) const {
    std::vector<int> out;
    if (root_ < 0 || radius < 0) return out;
    double r2 = radius * radius;
    auto visit = [&](auto&& self, int ni) -> void {
        if (ni < 0) return;
        const Node& nd = nodes_[ni];
        if (nd.point != exclude && sqdist(points_[nd.point], query) <= r2)
            out.push_back(nd.point);
        double diff = coord(query, nd.axis) - coord(points_[nd.point], nd.axis);
        int first = diff <= 0 ? nd.left : nd.right;
        int second = diff <= 0 ? nd.right : nd.left;
        self(self, first);
        if (diff * diff <= r2) self(self, second);
    };
    visit(visit, root_);
    return out;
}

} // namespace mlc
