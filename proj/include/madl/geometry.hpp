#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "madl/errors.hpp"

namespace madl {

enum class PointLabel : std::uint8_t {
  kOther = 0,
  kGround = 1,
  kDrivable = 2,
  kCurbLeft = 3,
  kCurbRight = 4,
};

const char* to_string(PointLabel label);

// One LiDAR return. Sensor frame: x forward, y left, z up.
struct LidarPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  float intensity = 0.0f;
  int ring = 0;

  Eigen::Vector3d position() const { return {x, y, z}; }
  double range_xy() const { return std::sqrt(x * x + y * y); }
  double azimuth() const { return std::atan2(y, x); }
};

// Point set plus a per-point semantic label. Labels and points stay index
// aligned through every operation.
struct LabeledCloud {
  std::vector<LidarPoint> points;
  std::vector<PointLabel> labels;
  int frame_id = 0;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  void push_back(const LidarPoint& p, PointLabel label = PointLabel::kOther) {
    points.push_back(p);
    labels.push_back(label);
  }

  // Indices of points carrying `label`.
  std::vector<int> indices_with_label(PointLabel label) const;
  // New cloud with only the points carrying `label` (order preserved).
  LabeledCloud filter_label(PointLabel label) const;
  std::size_t count_label(PointLabel label) const;

  void validate() const;  // throws PreconditionError on size mismatch
};

// Rigid transform in SE(3). Construction validates orthonormality and the
// determinant so downstream code never re-checks.
class PoseSE3 {
 public:
  PoseSE3() : rotation_(Eigen::Matrix3d::Identity()), translation_(Eigen::Vector3d::Zero()) {}
  PoseSE3(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation);

  static PoseSE3 identity() { return PoseSE3(); }
  static PoseSE3 from_yaw(double yaw_rad, const Eigen::Vector3d& t = Eigen::Vector3d::Zero());
  static PoseSE3 from_axis_angle(const Eigen::Vector3d& axis, double angle_rad,
                                 const Eigen::Vector3d& t = Eigen::Vector3d::Zero());
  // Nearest rotation (Frobenius) to an arbitrary 3x3 matrix via SVD.
  static Eigen::Matrix3d nearest_rotation(const Eigen::Matrix3d& m);

  const Eigen::Matrix3d& rotation() const { return rotation_; }
  const Eigen::Vector3d& translation() const { return translation_; }

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation_ * p + translation_; }
  PoseSE3 inverse() const;
  // Composition: (a * b) applies b first, then a.
  friend PoseSE3 operator*(const PoseSE3& a, const PoseSE3& b);

  Eigen::Matrix4d matrix() const;
  double rotation_angle_to(const PoseSE3& other) const;
  double translation_distance_to(const PoseSE3& other) const;

 private:
  Eigen::Matrix3d rotation_;
  Eigen::Vector3d translation_;
};

PoseSE3 compose(const PoseSE3& a, const PoseSE3& b);

// Pinhole parameters of the rectified camera, Eq.-(8)-style layout.
struct CameraIntrinsics {
  double fu = 0.0;
  double fv = 0.0;
  double cu = 0.0;
  double cv = 0.0;
  double bx = 0.0;  // baseline offset, meters
  int width = 0;
  int height = 0;

  void validate() const;
};

struct Extrinsics {
  PoseSE3 lidar_to_camera;
};

// Static description of the spinning sensor.
struct LidarGeometry {
  double sensor_height = 1.73;                // Hs, meters above ground
  double horizontal_resolution = 0.00349066;  // theta_a, rad per azimuth step (0.2 deg)
  std::vector<double> ring_elevations;        // theta_r per ring, rad; negative = downward

  int ring_count() const { return static_cast<int>(ring_elevations.size()); }
  void validate() const;

  // KITTI-like default: 32 rings spanning -25 deg .. +3 deg.
  static LidarGeometry default_sensor();
};

struct RingAssignDiag {
  int origin_points = 0;  // points with no direction, forced to ring 0
};

// ---- operations ----

LabeledCloud transform_cloud(const LabeledCloud& cloud, const PoseSE3& pose);

// Ring = index of the nearest ring elevation to atan2(z, sqrt(x^2+y^2)).
// Ties break to the lower index. Zero-extent points go to ring 0 and are
// counted in the diagnostics.
LabeledCloud assign_rings(const LabeledCloud& cloud, const LidarGeometry& geom,
                          RingAssignDiag* diag = nullptr);

// Keep points with 0 < x <= limit.
LabeledCloud crop_forward(const LabeledCloud& cloud, double limit_m);

}  // namespace madl
