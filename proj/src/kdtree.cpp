#include "mfpod/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mfpod {

namespace {
constexpr int kLeafSize = 16;
}

KdTree2::KdTree2(const Eigen::MatrixX2d& points) : points_(points) {
  const int n = static_cast<int>(points_.rows());
  order_.resize(n);
  for (int i = 0; i < n; ++i) order_[i] = i;
  if (n > 0) {
    nodes_.reserve(2 * n / kLeafSize + 4);
    root_ = build(0, n, 0);
  }
}

int KdTree2::build(int begin, int end, int depth) {
  Node node;
  node.begin = begin;
  node.end = end;
  if (end - begin <= kLeafSize) {
    // Leaf order is ascending index so the scan below meets ties low-first.
    std::sort(order_.begin() + begin, order_.begin() + end);
    nodes_.push_back(node);
    return static_cast<int>(nodes_.size()) - 1;
  }
  const int axis = depth % 2;
  const int mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) {
                     const double pa = points_(a, axis), pb = points_(b, axis);
                     return pa < pb || (pa == pb && a < b);
                   });
  node.axis = axis;
  node.split = points_(order_[mid], axis);
  const int self = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  const int left = build(begin, mid, depth + 1);
  const int right = build(mid, end, depth + 1);
  nodes_[self].left = left;
  nodes_[self].right = right;
  return self;
}

int KdTree2::nearest(double x, double y) const {
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();

  // Explicit stack; prune only on strictly-greater plane distance so that
  // equidistant candidates in the far branch are still examined.
  std::vector<int> stack;
  stack.reserve(64);
  stack.push_back(root_);
  while (!stack.empty()) {
    const int ni = stack.back();
    stack.pop_back();
    const Node& node = nodes_[ni];
    if (node.axis < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        const int idx = order_[i];
        const double dx = points_(idx, 0) - x;
        const double dy = points_(idx, 1) - y;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
          best_d2 = d2;
          best = idx;
        }
      }
      continue;
    }
    const double q = (node.axis == 0) ? x : y;
    const double plane = q - node.split;
    const int near_child = plane < 0.0 ? node.left : node.right;
    const int far_child = plane < 0.0 ? node.right : node.left;
    if (plane * plane <= best_d2) {
      stack.push_back(far_child);
    }
    stack.push_back(near_child);  // visited first (LIFO)
  }
  return best;
}

}  // namespace mfpod
