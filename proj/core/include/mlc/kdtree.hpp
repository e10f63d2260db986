#pragma once

#include <vector>

#include "mlc/instance.hpp"

namespace mlc {

/// Static 2-D k-d tree over a point set. Node ids refer to indices in the
/// input vector.
class KdTree2D {
public:
    explicit KdTree2D(const std::vector<Point>& points);

    /// Indices of the k points nearest to `query` (Euclidean), excluding
    /// `exclude`, ordered by (squared distance, index).
    std::vector<int> nearest(const Point& query, int k, int exclude = -1) const;

    /// All indices with Euclidean distance <= radius from `query`, excluding
    /// `exclude`. Unordered.
    std::vector<int> within_radius(const Point& query, double radius,
                                   int exclude = -1) const;

private:
    struct Node {
        int point = -1;  // index into points_
        int left = -1;
        int right = -1;
        int axis = 0;
    };

    int build(std::vector<int>& ids, int lo, int hi, int depth);

    const std::vector<Point>& points_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

} // namespace mlc
