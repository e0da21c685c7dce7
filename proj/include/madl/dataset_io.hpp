#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "madl/geometry.hpp"

namespace madl {

// KITTI velodyne format: consecutive little-endian float32 quadruples
// (x, y, z, intensity). Labels come back as `other`; rings as 0 (call
// assign_rings afterwards when geometry is known).
LabeledCloud load_scan_bin(const std::filesystem::path& path);
void save_scan_bin(const LabeledCloud& cloud, const std::filesystem::path& path);

// KITTI odometry pose text format: one line of 12 space-separated decimals
// per frame, row-major 3x4 [R|t]. Rotations off orthonormal by <= 1e-3 are
// repaired by nearest-rotation projection; worse ones are rejected.
std::vector<PoseSE3> load_poses(const std::filesystem::path& path);
void save_poses(const std::vector<PoseSE3>& poses, const std::filesystem::path& path);

// Calibration text file. Required keys:
//   P_rect: 12 values, row-major 3x4 projection matrix
//   Tr_lidar_to_cam: 12 values, row-major 3x4 [R|t]
//   S: 2 values, image width and height in pixels
std::pair<CameraIntrinsics, Extrinsics> load_calib(const std::filesystem::path& path);
void save_calib(const CameraIntrinsics& intr, const Extrinsics& extr,
                const std::filesystem::path& path);

// Per-scan-point semantic classes, one little-endian uint32 per point in scan
// order; low 16 bits carry the class id.
std::vector<std::uint32_t> load_point_labels(const std::filesystem::path& path);
void save_point_labels(const std::vector<std::uint32_t>& labels,
                       const std::filesystem::path& path);

// Sidecar byte stream of PointLabel values, used between pipeline stages.
std::vector<PointLabel> load_label_sidecar(const std::filesystem::path& path,
                                           std::size_t expected_count);
void save_label_sidecar(const std::vector<PointLabel>& labels,
                        const std::filesystem::path& path);

}  // namespace madl
