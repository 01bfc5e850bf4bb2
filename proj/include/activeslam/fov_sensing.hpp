// Copyright 2026 The activeslam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Relative-position landmark sensing with a limited field of view.
//
// Visibility is smoothed through the signed distance d of the body-frame
// landmark position to the FoV polygon:
//
//   Phi(d) = 1/2 [1 + erf(d / (sqrt(2) kappa) - 2)]
//   M(x, y) = (1 - Phi(d)) R(theta) Gamma^-1 R(theta)^T
//
// so that M, the per-landmark sensor information block, is differentiable in
// the robot pose.

#ifndef ACTIVESLAM_FOV_SENSING_HPP_
#define ACTIVESLAM_FOV_SENSING_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "activeslam/geometry_se2.hpp"
#include "activeslam/motion_model.hpp"

namespace activeslam {

using LandmarkSet = std::vector<Eigen::Vector2d>;

struct SensorModel {
  Eigen::Matrix2d gamma = Eigen::Vector2d(0.1, 0.1).asDiagonal();
  double kappa = 10.0;
  FovPolygon fov = FovPolygon::triangle(20.0, 2.0 * std::numbers::pi / 3.0);
  // 1 - Phi is clamped below at this value so Gamma / (1 - Phi) stays finite.
  double visibility_floor = 1e-12;

  void validate() const {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
      throw std::invalid_argument("SensorModel: kappa must be > 0");
    }
    if (!gamma.allFinite() ||
        (gamma - gamma.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
        gamma.llt().info() != Eigen::Success) {
      throw std::invalid_argument("SensorModel: gamma must be symmetric positive definite");
    }
    if (!(visibility_floor > 0.0 && visibility_floor < 1.0)) {
      throw std::invalid_argument("SensorModel: visibility_floor must be in (0, 1)");
    }
  }
};

inline void validate_landmarks(const LandmarkSet& landmarks) {
  if (landmarks.empty()) {
    throw std::invalid_argument("LandmarkSet: need at least one landmark");
  }
  for (const auto& y : landmarks) {
    if (!y.allFinite()) throw std::invalid_argument("LandmarkSet: non-finite position");
  }
}

/// q = R(theta)^T (y - p).
inline Eigen::Vector2d body_frame_coords(const Pose2& x, const Eigen::Vector2d& y) {
  return rotation_matrix(x.theta).transpose() * (y - x.p);
}

/// dq/dx (2x3) = [-R^T | R'^T (y - p)].
inline Eigen::Matrix<double, 2, 3> body_frame_jacobian(const Pose2& x,
                                                       const Eigen::Vector2d& y) {
  Eigen::Matrix<double, 2, 3> j;
  j.leftCols<2>() = -rotation_matrix(x.theta).transpose();
  j.col(2) = rotation_matrix_derivative(x.theta).transpose() * (y - x.p);
  return j;
}

/// Phi(d), the smoothed probability of being outside the FoV.
inline double fov_cdf(double d, double kappa) {
  return 0.5 * (1.0 + std::erf(d / (std::numbers::sqrt2 * kappa) - 2.0));
}

inline double fov_cdf_derivative(double d, double kappa) {
  const double z = d / (std::numbers::sqrt2 * kappa) - 2.0;
  return std::exp(-z * z) / (std::sqrt(2.0 * std::numbers::pi) * kappa);
}

/// 1 - Phi(d), clamped below at the model's floor. Computed with erfc so the
/// far tail keeps its relative accuracy.
inline double visibility_from_distance(double d, const SensorModel& sensor) {
  const double z = d / (std::numbers::sqrt2 * sensor.kappa) - 2.0;
  return std::max(0.5 * std::erfc(z), sensor.visibility_floor);
}

inline double visibility_factor(const Eigen::Vector2d& q, const SensorModel& sensor) {
  return visibility_from_distance(signed_distance(q, sensor.fov), sensor);
}

/// Indices of landmarks whose body-frame position lies in the FoV (d <= 0).
inline std::vector<std::size_t> visible_set(const Pose2& x,
                                            const LandmarkSet& landmarks,
                                            const SensorModel& sensor) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < landmarks.size(); ++j) {
    if (signed_distance(body_frame_coords(x, landmarks[j]), sensor.fov) <= 0.0) {
      out.push_back(j);
    }
  }
  return out;
}

struct LandmarkMeasurement {
  std::size_t index = 0;
  Eigen::Vector2d z = Eigen::Vector2d::Zero();
};

/// Noisy body-frame positions of every landmark currently in the FoV.
inline std::vector<LandmarkMeasurement> sample_measurements(
    const Pose2& x_true, const LandmarkSet& landmarks, const SensorModel& sensor,
    Rng& rng) {
  std::vector<LandmarkMeasurement> out;
  for (std::size_t j : visible_set(x_true, landmarks, sensor)) {
    const Eigen::Vector2d noise = sample_gaussian<2>(sensor.gamma, rng);
    out.push_back({j, body_frame_coords(x_true, landmarks[j]) + noise});
  }
  return out;
}

/// Information block M(x, y_hat), symmetric PSD.
inline Eigen::Matrix2d info_block(const Pose2& x, const Eigen::Vector2d& y_hat,
                                  const SensorModel& sensor) {
  const Eigen::Matrix2d r = rotation_matrix(x.theta);
  const double vis = visibility_factor(body_frame_coords(x, y_hat), sensor);
  Eigen::Matrix2d m = vis * r * sensor.gamma.inverse() * r.transpose();
  return 0.5 * (m + m.transpose());
}

/// dM/dx split per robot coordinate (px, py, theta).
struct InfoBlockGradient {
  std::array<Eigen::Matrix2d, 3> d_dx;
  bool kink = false;
};

inline InfoBlockGradient info_block_gradient(const Pose2& x,
                                             const Eigen::Vector2d& y_hat,
                                             const SensorModel& sensor) {
  const Eigen::Matrix2d r = rotation_matrix(x.theta);
  const Eigen::Matrix2d dr = rotation_matrix_derivative(x.theta);
  const Eigen::Matrix2d gamma_inv = sensor.gamma.inverse();
  const Eigen::Matrix2d rgr = r * gamma_inv * r.transpose();
  const Eigen::Matrix2d a = dr * gamma_inv * r.transpose();
  const Eigen::Matrix2d d_rgr_dtheta = a + a.transpose();

  const Eigen::Vector2d q = body_frame_coords(x, y_hat);
  const SignedDistance sd = signed_distance_with_gradient(q, sensor.fov);
  const double z = sd.distance / (std::numbers::sqrt2 * sensor.kappa) - 2.0;
  const double raw_vis = 0.5 * std::erfc(z);
  const bool clamped = raw_vis < sensor.visibility_floor;
  const double vis = clamped ? sensor.visibility_floor : raw_vis;
  const double dvis_dd = clamped ? 0.0 : -fov_cdf_derivative(sd.distance, sensor.kappa);

  // dd/dx = grad(d)^T dq/dx
  const Eigen::RowVector3d dd_dx =
      sd.gradient.transpose() * body_frame_jacobian(x, y_hat);

  InfoBlockGradient out;
  out.kink = sd.kink;
  for (int c = 0; c < 3; ++c) {
    out.d_dx[c] = dvis_dd * dd_dx(c) * rgr;
  }
  out.d_dx[2] += vis * d_rgr_dtheta;
  return out;
}

/// (M11, M12, M22) of an information block.
inline Eigen::Vector3d info_vector(const Eigen::Matrix2d& m) {
  return {m(0, 0), m(0, 1), m(1, 1)};
}

}  // namespace activeslam

#endif  // ACTIVESLAM_FOV_SENSING_HPP_
