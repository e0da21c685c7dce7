#pragma once

#include <Eigen/Core>
#include <vector>

#include "madl/geometry.hpp"

namespace madl {

struct GroundParams {
  int num_segments = 3;
  int seed_count = 20;
  double dist_threshold = 0.15;  // meters, point-to-plane inlier gate
  int iterations = 3;
  double seed_discard_fraction = 0.005;  // lowest-z fraction dropped as under-ground noise

  void validate() const;
};

// Plane {p : normal.p + offset = 0}, unit normal with positive z.
struct PlaneModel {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  double offset = 0.0;

  double distance(const Eigen::Vector3d& p) const { return std::abs(normal.dot(p) + offset); }
  double signed_distance(const Eigen::Vector3d& p) const { return normal.dot(p) + offset; }
};

struct GroundDiag {
  std::vector<std::string> warnings;
  std::vector<PlaneModel> segment_planes;  // fitted plane per segment that produced one
};

// Partition the cloud into n equal-width x intervals over [min_x, max_x].
// Intervals are right-open; the last is closed, and a point exactly on an
// interior boundary lands in the segment to its right.
std::vector<LabeledCloud> split_segments_x(const LabeledCloud& cloud, int n);

// Total least squares via covariance eigen-decomposition; the smallest
// eigenvalue's eigenvector is the normal, flipped upward.
PlaneModel fit_plane(const std::vector<Eigen::Vector3d>& points);

// Piecewise plane fitting along x: per segment, seed from the lowest points
// and alternate fit/re-gate `iterations` times. Output labels are
// kGround / kOther.
LabeledCloud segment_ground(const LabeledCloud& cloud, const GroundParams& params,
                            GroundDiag* diag = nullptr);

}  // namespace madl
