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

// Joint EKF over the robot pose and all landmark positions.
//
// Every update uses the full stacked measurement h = [q(x, y_1); ...;
// q(x, y_n)]. Landmarks that were not measured get the predicted measurement
// substituted, so their innovation is exactly zero, and a noise covariance
// Gamma / (1 - Phi) that makes their gain vanish.

#ifndef ACTIVESLAM_EKF_SLAM_HPP_
#define ACTIVESLAM_EKF_SLAM_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "activeslam/covariance_dynamics.hpp"
#include "activeslam/errors.hpp"
#include "activeslam/fov_sensing.hpp"
#include "activeslam/geometry_se2.hpp"
#include "activeslam/motion_model.hpp"

namespace activeslam {

/// How the measurement noise of unmeasured landmarks is chosen.
enum class UnseenNoise {
  // Visibility factor at the prior mean for measured landmarks, clamp floor
  // for unmeasured ones.
  kMeasuredGating,
  // Visibility factor at the prior mean for every landmark.
  kDifferentiable,
};

struct EkfOptions {
  UnseenNoise unseen_noise = UnseenNoise::kMeasuredGating;
};

struct JointBelief {
  Eigen::VectorXd mean;  // [px, py, theta, y1x, y1y, ...]
  Eigen::MatrixXd cov;

  std::size_t n_landmarks() const { return static_cast<std::size_t>((mean.size() - 3) / 2); }

  Pose2 robot() const { return Pose2(mean.head<2>(), mean(2)); }
  Eigen::Vector2d landmark(std::size_t j) const {
    return mean.segment<2>(3 + 2 * static_cast<Eigen::Index>(j));
  }
  LandmarkSet landmarks() const {
    LandmarkSet out(n_landmarks());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = landmark(j);
    return out;
  }
  Eigen::Matrix2d landmark_cov(std::size_t j) const {
    const Eigen::Index o = 3 + 2 * static_cast<Eigen::Index>(j);
    return cov.block<2, 2>(o, o);
  }
  /// Landmark diagonal blocks as a covariance vector (cross terms dropped).
  CovVector landmark_cov_vector() const {
    CovVector sigma(3 * static_cast<Eigen::Index>(n_landmarks()));
    for (std::size_t j = 0; j < n_landmarks(); ++j) {
      const Eigen::Matrix2d b = landmark_cov(j);
      sigma.segment<3>(3 * static_cast<Eigen::Index>(j)) << b(0, 0), 0.5 * (b(0, 1) + b(1, 0)),
          b(1, 1);
    }
    return sigma;
  }
};

inline JointBelief make_belief(const Pose2& robot, const LandmarkSet& landmarks,
                               const Eigen::MatrixXd& cov) {
  const Eigen::Index n = 3 + 2 * static_cast<Eigen::Index>(landmarks.size());
  if (cov.rows() != n || cov.cols() != n) {
    throw std::invalid_argument("make_belief: covariance has the wrong size");
  }
  JointBelief b;
  b.mean.resize(n);
  b.mean.head<3>() = robot.vector();
  for (std::size_t j = 0; j < landmarks.size(); ++j) {
    b.mean.segment<2>(3 + 2 * static_cast<Eigen::Index>(j)) = landmarks[j];
  }
  b.cov = cov;
  return b;
}

/// Symmetrizes and clips negative eigenvalues to zero.
inline Eigen::MatrixXd make_psd(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.eigenvalues().minCoeff() >= 0.0) return sym;
  const Eigen::MatrixXd clipped = es.eigenvectors() *
                                  es.eigenvalues().cwiseMax(0.0).asDiagonal() *
                                  es.eigenvectors().transpose();
  return 0.5 * (clipped + clipped.transpose());
}

inline JointBelief predict(const JointBelief& belief, const ControlInput& u,
                           const ProcessNoiseModel& model) {
  const Pose2 x = belief.robot();
  const MotionJacobians mj = jacobians(x, u, model);
  JointBelief out = belief;
  out.mean.head<3>() = step(x, u, model).vector();

  // F = blockdiag(E, I): only the robot rows and columns change.
  Eigen::MatrixXd& p = out.cov;
  p.topRows<3>() = mj.E * belief.cov.topRows<3>();
  p.leftCols<3>() = p.leftCols<3>() * mj.E.transpose();
  p.topLeftCorner<3, 3>() += mj.D * model.W * mj.D.transpose();
  out.cov = make_psd(p);
  return out;
}

/// Stacked measurement vector plus which entries came from the sensor.
struct ReconstructedMeasurement {
  Eigen::VectorXd z;           // 2 n_l
  std::vector<bool> measured;  // n_l
};

/// Fills unmeasured landmarks with the prediction q(x_hat, y_hat_j).
inline ReconstructedMeasurement reconstruct_measurement(
    const JointBelief& prior, const std::vector<LandmarkMeasurement>& raw) {
  const std::size_t n_l = prior.n_landmarks();
  ReconstructedMeasurement out;
  out.z.resize(2 * static_cast<Eigen::Index>(n_l));
  out.measured.assign(n_l, false);
  const Pose2 x = prior.robot();
  for (std::size_t j = 0; j < n_l; ++j) {
    out.z.segment<2>(2 * static_cast<Eigen::Index>(j)) = body_frame_coords(x, prior.landmark(j));
  }
  for (const auto& m : raw) {
    if (m.index >= n_l) {
      throw std::out_of_range("reconstruct_measurement: landmark index " +
                              std::to_string(m.index) + " out of range");
    }
    out.z.segment<2>(2 * static_cast<Eigen::Index>(m.index)) = m.z;
    out.measured[m.index] = true;
  }
  return out;
}

inline JointBelief update(const JointBelief& prior, const ReconstructedMeasurement& meas,
                          const SensorModel& sensor, const EkfOptions& options = {}) {
  const std::size_t n_l = prior.n_landmarks();
  const Eigen::Index n = prior.mean.size();
  const Eigen::Index nz = 2 * static_cast<Eigen::Index>(n_l);
  if (meas.z.size() != nz || meas.measured.size() != n_l) {
    throw std::invalid_argument("update: measurement size does not match belief");
  }

  const Pose2 x = prior.robot();
  const Eigen::Matrix2d rt = rotation_matrix(x.theta).transpose();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(nz, n);
  Eigen::VectorXd innovation(nz);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(nz, nz);
  for (std::size_t j = 0; j < n_l; ++j) {
    const Eigen::Index r = 2 * static_cast<Eigen::Index>(j);
    const Eigen::Vector2d y = prior.landmark(j);
    const Eigen::Vector2d q = body_frame_coords(x, y);
    h.block<2, 3>(r, 0) = body_frame_jacobian(x, y);
    h.block<2, 2>(r, 3 + r) = rt;
    innovation.segment<2>(r) = meas.z.segment<2>(r) - q;

    double vis = visibility_factor(q, sensor);
    if (options.unseen_noise == UnseenNoise::kMeasuredGating && !meas.measured[j]) {
      vis = sensor.visibility_floor;
    }
    v.block<2, 2>(r, r) = sensor.gamma / vis;
  }

  const Eigen::MatrixXd ph_t = prior.cov * h.transpose();
  const Eigen::MatrixXd s = h * ph_t + v;
  const Eigen::LDLT<Eigen::MatrixXd> s_ldlt(0.5 * (s + s.transpose()));
  if (s_ldlt.info() != Eigen::Success || !s_ldlt.isPositive()) {
    throw NumericError("ekf_slam", "innovation covariance is not invertible (max |S| = " +
                                       std::to_string(s.cwiseAbs().maxCoeff()) + ")");
  }
  const Eigen::MatrixXd gain = s_ldlt.solve(ph_t.transpose()).transpose();

  JointBelief post = prior;
  post.mean += gain * innovation;
  post.mean(2) = wrap_angle(post.mean(2));
  const Eigen::MatrixXd ikh = Eigen::MatrixXd::Identity(n, n) - gain * h;
  post.cov = make_psd(ikh * prior.cov * ikh.transpose() + gain * v * gain.transpose());
  return post;
}

/// Gaussian differential entropy 0.5 ln((2 pi e)^n det(cov)); -inf when the
/// covariance is not positive definite.
inline double gaussian_entropy(const Eigen::MatrixXd& cov) {
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
  const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  const double n = static_cast<double>(cov.rows());
  return 0.5 * (n * std::log(2.0 * std::numbers::pi * std::numbers::e) + log_det);
}

struct BeliefEntropies {
  double robot = 0.0;
  std::vector<double> landmarks;
  double joint = 0.0;

  double landmark_average() const {
    double s = 0.0;
    for (double h : landmarks) s += h;
    return landmarks.empty() ? 0.0 : s / static_cast<double>(landmarks.size());
  }
};

inline BeliefEntropies entropies(const JointBelief& belief) {
  BeliefEntropies out;
  out.robot = gaussian_entropy(belief.cov.topLeftCorner<3, 3>());
  for (std::size_t j = 0; j < belief.n_landmarks(); ++j) {
    out.landmarks.push_back(gaussian_entropy(belief.landmark_cov(j)));
  }
  out.joint = gaussian_entropy(belief.cov);
  return out;
}

}  // namespace activeslam

#endif  // ACTIVESLAM_EKF_SLAM_HPP_
