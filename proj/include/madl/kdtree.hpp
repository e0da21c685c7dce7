#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace madl {

// Static 3D kd-tree over a point array. Build once, then query; points are
// referenced by their index in the input array.
class KdTree3 {
 public:
  KdTree3() = default;
  explicit KdTree3(std::vector<Eigen::Vector3d> points) { build(std::move(points)); }

  void build(std::vector<Eigen::Vector3d> points) {
    points_ = std::move(points);
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), 0);
    nodes_.clear();
    nodes_.reserve(points_.size());
    root_ = points_.empty() ? -1 : build_range(0, static_cast<int>(points_.size()));
  }

  std::size_t size() const { return points_.size(); }
  const Eigen::Vector3d& point(int index) const { return points_[index]; }

  // Index of the closest point within max_dist, or -1. Squared distance out
  // through best_sq when found.
  int nearest(const Eigen::Vector3d& q,
              double max_dist = std::numeric_limits<double>::infinity(),
              double* best_sq = nullptr) const {
    int best = -1;
    double best_d2 = max_dist * max_dist;
    if (root_ >= 0) nearest_rec(root_, q, best, best_d2);
    if (best >= 0 && best_sq) *best_sq = best_d2;
    return best;
  }

  std::vector<int> radius_search(const Eigen::Vector3d& q, double radius) const {
    std::vector<int> out;
    if (root_ >= 0) radius_rec(root_, q, radius * radius, out);
    return out;
  }

 private:
  struct Node {
    int index;
    int left;
    int right;
    int axis;
  };

  int build_range(int begin, int end) {
    if (begin >= end) return -1;
    // Split on the widest axis of the range's bounding box.
    Eigen::Vector3d lo = points_[order_[begin]], hi = lo;
    for (int i = begin + 1; i < end; ++i) {
      lo = lo.cwiseMin(points_[order_[i]]);
      hi = hi.cwiseMax(points_[order_[i]]);
    }
    int axis = 0;
    (hi - lo).maxCoeff(&axis);
    const int mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int a, int b) { return points_[a][axis] < points_[b][axis]; });
    const int node_id = static_cast<int>(nodes_.size());
    nodes_.push_back({order_[mid], -1, -1, axis});
    const int left = build_range(begin, mid);
    const int right = build_range(mid + 1, end);
    nodes_[node_id].left = left;
    nodes_[node_id].right = right;
    return node_id;
  }

  void nearest_rec(int node_id, const Eigen::Vector3d& q, int& best, double& best_d2) const {
    const Node& node = nodes_[node_id];
    const Eigen::Vector3d& p = points_[node.index];
    const double d2 = (p - q).squaredNorm();
    if (d2 <= best_d2) {
      best_d2 = d2;
      best = node.index;
    }
    const double delta = q[node.axis] - p[node.axis];
    const int near = delta < 0.0 ? node.left : node.right;
    const int far = delta < 0.0 ? node.right : node.left;
    if (near >= 0) nearest_rec(near, q, best, best_d2);
    if (far >= 0 && delta * delta <= best_d2) nearest_rec(far, q, best, best_d2);
  }

  void radius_rec(int node_id, const Eigen::Vector3d& q, double r2, std::vector<int>& out) const {
    const Node& node = nodes_[node_id];
    const Eigen::Vector3d& p = points_[node.index];
    if ((p - q).squaredNorm() <= r2) out.push_back(node.index);
    const double delta = q[node.axis] - p[node.axis];
    const int near = delta < 0.0 ? node.left : node.right;
    const int far = delta < 0.0 ? node.right : node.left;
    if (near >= 0) radius_rec(near, q, r2, out);
    if (far >= 0 && delta * delta <= r2) radius_rec(far, q, r2, out);
  }

  std::vector<Eigen::Vector3d> points_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace madl
