#include "madl/dataset_io.hpp"

#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace madl {

namespace {

std::vector<char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on " + path.string());
  return bytes;
}

void write_all(const std::filesystem::path& path, const char* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(data, static_cast<std::streamsize>(size));
  if (!out) throw IoError("write failure on " + path.string());
}

// Parses a row-major 3x4 [R|t] with the pose-file repair policy.
PoseSE3 pose_from_rt(const double v[12], const std::string& where) {
  Eigen::Matrix3d r;
  Eigen::Vector3d t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r(i, j) = v[i * 4 + j];
    t(i) = v[i * 4 + 3];
  }
  if (r.determinant() <= 0.0) throw InvalidPoseError(where + ": det(R) <= 0");
  const double drift =
      (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (drift > 1e-3) throw InvalidPoseError(where + ": rotation drift " + std::to_string(drift));
  if (drift > 1e-6) r = PoseSE3::nearest_rotation(r);
  // Text poses carry rounding at the last digit; snap to the nearest rotation
  // whenever the constructor's 1e-9 gate would reject.
  try {
    return PoseSE3(r, t);
  } catch (const InvalidPoseError&) {
    return PoseSE3(PoseSE3::nearest_rotation(r), t);
  }
}

}  // namespace

LabeledCloud load_scan_bin(const std::filesystem::path& path) {
  const std::vector<char> bytes = read_all(path);
  if (bytes.size() % 16 != 0) {
    throw MalformedFileError(path.string() + ": size " + std::to_string(bytes.size()) +
                             " is not a multiple of 16");
  }
  LabeledCloud cloud;
  const std::size_t n = bytes.size() / 16;
  cloud.points.reserve(n);
  cloud.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    float v[4];
    std::memcpy(v, bytes.data() + i * 16, 16);
    LidarPoint p;
    p.x = v[0];
    p.y = v[1];
    p.z = v[2];
    p.intensity = v[3];
    cloud.push_back(p);
  }
  return cloud;
}

void save_scan_bin(const LabeledCloud& cloud, const std::filesystem::path& path) {
  cloud.validate();
  std::vector<char> bytes(cloud.size() * 16);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto& p = cloud.points[i];
    const float v[4] = {static_cast<float>(p.x), static_cast<float>(p.y),
                        static_cast<float>(p.z), p.intensity};
    std::memcpy(bytes.data() + i * 16, v, 16);
  }
  write_all(path, bytes.data(), bytes.size());
}

std::vector<PoseSE3> load_poses(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<PoseSE3> poses;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    double v[12];
    int count = 0;
    double x;
    while (ss >> x) {
      if (count < 12) v[count] = x;
      ++count;
    }
    if (count != 12) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected 12 values, got " +
                       std::to_string(count));
    }
    poses.push_back(pose_from_rt(v, path.string() + ":" + std::to_string(line_no)));
  }
  return poses;
}

void save_poses(const std::vector<PoseSE3>& poses, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << std::setprecision(17);
  for (const auto& pose : poses) {
    const Eigen::Matrix3d& r = pose.rotation();
    const Eigen::Vector3d& t = pose.translation();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        out << r(i, j) << ' ';
      }
      out << t(i) << (i == 2 ? '\n' : ' ');
    }
  }
  if (!out) throw IoError("write failure on " + path.string());
}

std::pair<CameraIntrinsics, Extrinsics> load_calib(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  bool have_p = false, have_tr = false, have_s = false;
  double p[12], tr[12], s[2];
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    const std::string key = line.substr(0, colon);
    std::istringstream ss(line.substr(colon + 1));
    if (key == "P_rect") {
      for (int i = 0; i < 12; ++i) {
        if (!(ss >> p[i])) throw CalibFormatError(path.string() + ": P_rect needs 12 values");
      }
      have_p = true;
    } else if (key == "Tr_lidar_to_cam") {
      for (int i = 0; i < 12; ++i) {
        if (!(ss >> tr[i])) {
          throw CalibFormatError(path.string() + ": Tr_lidar_to_cam needs 12 values");
        }
      }
      have_tr = true;
    } else if (key == "S") {
      for (int i = 0; i < 2; ++i) {
        if (!(ss >> s[i])) throw CalibFormatError(path.string() + ": S needs 2 values");
      }
      have_s = true;
    }
  }
  if (!have_p) throw CalibFormatError(path.string() + ": missing key P_rect");
  if (!have_tr) throw CalibFormatError(path.string() + ": missing key Tr_lidar_to_cam");
  if (!have_s) throw CalibFormatError(path.string() + ": missing key S");

  CameraIntrinsics intr;
  intr.fu = p[0];
  intr.cu = p[2];
  intr.fv = p[5];
  intr.cv = p[6];
  if (!(intr.fu > 0.0) || !(intr.fv > 0.0)) {
    throw InvalidCalibError(path.string() + ": non-positive focal length in P_rect");
  }
  intr.bx = -p[3] / intr.fu;
  intr.width = static_cast<int>(std::lround(s[0]));
  intr.height = static_cast<int>(std::lround(s[1]));
  intr.validate();

  Eigen::Matrix3d r;
  Eigen::Vector3d t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r(i, j) = tr[i * 4 + j];
    t(i) = tr[i * 4 + 3];
  }
  const double drift = (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (drift > 1e-3 || r.determinant() <= 0.0) {
    throw InvalidCalibError(path.string() + ": Tr rotation not orthonormal (drift " +
                            std::to_string(drift) + ")");
  }
  Extrinsics extr;
  extr.lidar_to_camera = PoseSE3(PoseSE3::nearest_rotation(r), t);
  return {intr, extr};
}

void save_calib(const CameraIntrinsics& intr, const Extrinsics& extr,
                const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << std::setprecision(17);
  out << "P_rect: " << intr.fu << " 0 " << intr.cu << ' ' << -intr.fu * intr.bx << " 0 " << intr.fv
      << ' ' << intr.cv << " 0 0 0 1 0\n";
  out << "Tr_lidar_to_cam:";
  const Eigen::Matrix3d& r = extr.lidar_to_camera.rotation();
  const Eigen::Vector3d& t = extr.lidar_to_camera.translation();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out << ' ' << r(i, j);
    out << ' ' << t(i);
  }
  out << "\nS: " << intr.width << ' ' << intr.height << '\n';
  if (!out) throw IoError("write failure on " + path.string());
}

std::vector<std::uint32_t> load_point_labels(const std::filesystem::path& path) {
  const std::vector<char> bytes = read_all(path);
  if (bytes.size() % 4 != 0) {
    throw MalformedFileError(path.string() + ": size not a multiple of 4");
  }
  std::vector<std::uint32_t> labels(bytes.size() / 4);
  std::memcpy(labels.data(), bytes.data(), bytes.size());
  return labels;
}

void save_point_labels(const std::vector<std::uint32_t>& labels,
                       const std::filesystem::path& path) {
  write_all(path, reinterpret_cast<const char*>(labels.data()), labels.size() * 4);
}

std::vector<PointLabel> load_label_sidecar(const std::filesystem::path& path,
                                           std::size_t expected_count) {
  const std::vector<char> bytes = read_all(path);
  if (bytes.size() != expected_count) {
    throw MalformedFileError(path.string() + ": expected " + std::to_string(expected_count) +
                             " labels, file holds " + std::to_string(bytes.size()));
  }
  std::vector<PointLabel> labels(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    const auto v = static_cast<std::uint8_t>(bytes[i]);
    if (v > static_cast<std::uint8_t>(PointLabel::kCurbRight)) {
      throw MalformedFileError(path.string() + ": label value " + std::to_string(v) +
                               " out of range");
    }
    labels[i] = static_cast<PointLabel>(v);
  }
  return labels;
}

void save_label_sidecar(const std::vector<PointLabel>& labels,
                        const std::filesystem::path& path) {
  static_assert(sizeof(PointLabel) == 1);
  write_all(path, reinterpret_cast<const char*>(labels.data()), labels.size());
}

}  // namespace madl
