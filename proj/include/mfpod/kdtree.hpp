#pragma once

#include <Eigen/Core>
#include <vector>

namespace mfpod {

/// Exact 2-d nearest-neighbor index over a fixed point set. Ties on distance
/// resolve to the lowest point index, so results do not depend on build
/// order. Queries are O(log n) on non-degenerate inputs.
class KdTree2 {
public:
  explicit KdTree2(const Eigen::MatrixX2d& points);

  /// Index of the nearest point to (x, y).
  int nearest(double x, double y) const;

  Eigen::Index size() const { return points_.rows(); }

private:
  struct Node {
    int left = -1, right = -1;
    int begin = 0, end = 0;  // leaf range into order_
    double split = 0.0;
    int axis = -1;  // -1 marks a leaf
  };

  int build(int begin, int end, int depth);

  Eigen::MatrixX2d points_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace mfpod
