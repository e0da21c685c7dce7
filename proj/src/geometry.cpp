#include "madl/geometry.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace madl {

namespace {
constexpr double kOrthonormalTol = 1e-9;
}

const char* to_string(PointLabel label) {
  switch (label) {
    case PointLabel::kOther: return "other";
    case PointLabel::kGround: return "ground";
    case PointLabel::kDrivable: return "drivable";
    case PointLabel::kCurbLeft: return "curb_left";
    case PointLabel::kCurbRight: return "curb_right";
  }
  return "other";
}

std::vector<int> LabeledCloud::indices_with_label(PointLabel label) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) out.push_back(static_cast<int>(i));
  }
  return out;
}

LabeledCloud LabeledCloud::filter_label(PointLabel label) const {
  LabeledCloud out;
  out.frame_id = frame_id;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (labels[i] == label) out.push_back(points[i], labels[i]);
  }
  return out;
}

std::size_t LabeledCloud::count_label(PointLabel label) const {
  std::size_t n = 0;
  for (PointLabel l : labels) {
    if (l == label) ++n;
  }
  return n;
}

void LabeledCloud::validate() const {
  if (points.size() != labels.size()) {
    throw PreconditionError("LabeledCloud: " + std::to_string(points.size()) + " points vs " +
                            std::to_string(labels.size()) + " labels");
  }
}

PoseSE3::PoseSE3(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation)
    : rotation_(rotation), translation_(translation) {
  if (!rotation.allFinite() || !translation.allFinite()) {
    throw InvalidPoseError("PoseSE3: non-finite entries");
  }
  const double ortho = (rotation.transpose() * rotation - Eigen::Matrix3d::Identity())
                           .cwiseAbs()
                           .maxCoeff();
  if (ortho > kOrthonormalTol) {
    throw InvalidPoseError("PoseSE3: rotation not orthonormal (|R'R - I| = " +
                           std::to_string(ortho) + ")");
  }
  if (std::abs(rotation.determinant() - 1.0) > kOrthonormalTol) {
    throw InvalidPoseError("PoseSE3: det(R) != +1");
  }
}

PoseSE3 PoseSE3::from_yaw(double yaw_rad, const Eigen::Vector3d& t) {
  return from_axis_angle(Eigen::Vector3d::UnitZ(), yaw_rad, t);
}

PoseSE3 PoseSE3::from_axis_angle(const Eigen::Vector3d& axis, double angle_rad,
                                 const Eigen::Vector3d& t) {
  const Eigen::Matrix3d r = Eigen::AngleAxisd(angle_rad, axis.normalized()).toRotationMatrix();
  return PoseSE3(nearest_rotation(r), t);
}

Eigen::Matrix3d PoseSE3::nearest_rotation(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) {
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(2, 2) = -1.0;
    r = svd.matrixU() * flip * svd.matrixV().transpose();
  }
  return r;
}

PoseSE3 PoseSE3::inverse() const {
  const Eigen::Matrix3d rt = rotation_.transpose();
  return PoseSE3(rt, -(rt * translation_));
}

PoseSE3 operator*(const PoseSE3& a, const PoseSE3& b) {
  // Re-project the product so long composition chains cannot drift past the
  // constructor's orthonormality gate.
  return PoseSE3(PoseSE3::nearest_rotation(a.rotation_ * b.rotation_),
                 a.rotation_ * b.translation_ + a.translation_);
}

PoseSE3 compose(const PoseSE3& a, const PoseSE3& b) { return a * b; }

Eigen::Matrix4d PoseSE3::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation_;
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

double PoseSE3::rotation_angle_to(const PoseSE3& other) const {
  const Eigen::Matrix3d rel = rotation_.transpose() * other.rotation();
  const double c = std::clamp((rel.trace() - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(c);
}

double PoseSE3::translation_distance_to(const PoseSE3& other) const {
  return (translation_ - other.translation()).norm();
}

void CameraIntrinsics::validate() const {
  if (!(fu > 0.0) || !(fv > 0.0)) throw InvalidCalibError("intrinsics: focal lengths must be > 0");
  if (width <= 0 || height <= 0) throw InvalidCalibError("intrinsics: image size must be > 0");
  if (cu < 0.0 || cu >= width || cv < 0.0 || cv >= height) {
    throw InvalidCalibError("intrinsics: principal point outside image");
  }
}

void LidarGeometry::validate() const {
  if (!(horizontal_resolution > 0.0)) {
    throw PreconditionError("LidarGeometry: horizontal_resolution must be > 0");
  }
  if (ring_elevations.empty()) throw PreconditionError("LidarGeometry: no rings");
  for (std::size_t i = 1; i < ring_elevations.size(); ++i) {
    const double d = ring_elevations[i] - ring_elevations[i - 1];
    const double d0 = ring_elevations[1] - ring_elevations[0];
    if (d == 0.0 || (d > 0.0) != (d0 > 0.0)) {
      throw PreconditionError("LidarGeometry: ring elevations must be strictly monotone");
    }
  }
}

LidarGeometry LidarGeometry::default_sensor() {
  LidarGeometry g;
  g.sensor_height = 1.73;
  g.horizontal_resolution = 0.2 * M_PI / 180.0;
  const int rings = 32;
  const double lo = -25.0 * M_PI / 180.0;
  const double hi = 3.0 * M_PI / 180.0;
  g.ring_elevations.resize(rings);
  for (int r = 0; r < rings; ++r) {
    g.ring_elevations[r] = lo + (hi - lo) * r / (rings - 1);
  }
  return g;
}

LabeledCloud transform_cloud(const LabeledCloud& cloud, const PoseSE3& pose) {
  cloud.validate();
  LabeledCloud out = cloud;
  for (auto& p : out.points) {
    const Eigen::Vector3d q = pose.apply({p.x, p.y, p.z});
    p.x = q.x();
    p.y = q.y();
    p.z = q.z();
  }
  return out;
}

LabeledCloud assign_rings(const LabeledCloud& cloud, const LidarGeometry& geom,
                          RingAssignDiag* diag) {
  cloud.validate();
  geom.validate();
  LabeledCloud out = cloud;
  int origin_points = 0;
  for (auto& p : out.points) {
    const double horiz = p.range_xy();
    if (horiz == 0.0 && p.z == 0.0) {
      p.ring = 0;
      ++origin_points;
      continue;
    }
    const double elev = std::atan2(p.z, horiz);
    int best = 0;
    double best_err = std::abs(elev - geom.ring_elevations[0]);
    for (int r = 1; r < geom.ring_count(); ++r) {
      const double err = std::abs(elev - geom.ring_elevations[r]);
      if (err < best_err) {  // strict: ties keep the lower index
        best_err = err;
        best = r;
      }
    }
    p.ring = best;
  }
  if (diag) diag->origin_points = origin_points;
  return out;
}

LabeledCloud crop_forward(const LabeledCloud& cloud, double limit_m) {
  if (!(limit_m > 0.0)) throw PreconditionError("crop_forward: limit must be > 0");
  cloud.validate();
  LabeledCloud out;
  out.frame_id = cloud.frame_id;
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const auto& p = cloud.points[i];
    if (p.x > 0.0 && p.x <= limit_m) out.push_back(p, cloud.labels[i]);
  }
  return out;
}

}  // namespace madl
