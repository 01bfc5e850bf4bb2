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

// Differential-drive kinematics with additive Gaussian process noise.
//
//   x+ = x + tau * [v sinc(a) cos(theta + a),
//                   v sinc(a) sin(theta + a),
//                   omega] + w,          a = omega * tau / 2
//
// sinc is the unnormalized sin(a) / a.

#ifndef ACTIVESLAM_MOTION_MODEL_HPP_
#define ACTIVESLAM_MOTION_MODEL_HPP_

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "activeslam/geometry_se2.hpp"

namespace activeslam {

using Rng = std::mt19937_64;

struct ControlInput {
  double v = 0.0;      // m/s
  double omega = 0.0;  // rad/s

  Eigen::Vector2d vector() const { return {v, omega}; }
  static ControlInput from_vector(const Eigen::Vector2d& u) {
    return {u.x(), u.y()};
  }
  bool operator==(const ControlInput&) const = default;
};

struct ControlBounds {
  double v_min = 0.0;
  double v_max = 3.0;
  double omega_max = 1.0;

  void validate() const {
    if (!(v_min <= v_max) || !(omega_max >= 0.0) || !std::isfinite(v_min) ||
        !std::isfinite(v_max) || !std::isfinite(omega_max)) {
      throw std::invalid_argument("ControlBounds: need v_min <= v_max, omega_max >= 0");
    }
  }

  ControlInput clamp(const ControlInput& u) const {
    return {std::clamp(u.v, v_min, v_max),
            std::clamp(u.omega, -omega_max, omega_max)};
  }
  bool operator==(const ControlBounds&) const = default;
};

struct ProcessNoiseModel {
  Eigen::Matrix3d W = Eigen::Vector3d(0.1, 0.1, 0.01).asDiagonal();
  double tau = 1.0;  // seconds

  void validate() const {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
      throw std::invalid_argument("ProcessNoiseModel: tau must be > 0");
    }
    if (!W.allFinite() || (W - W.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
        W.llt().info() != Eigen::Success) {
      throw std::invalid_argument("ProcessNoiseModel: W must be symmetric positive definite");
    }
  }
};

namespace detail {

inline double sinc(double a) {
  if (std::abs(a) < 1e-4) {
    const double a2 = a * a;
    return 1.0 - a2 / 6.0 + a2 * a2 / 120.0;
  }
  return std::sin(a) / a;
}

inline double sinc_derivative(double a) {
  if (std::abs(a) < 1e-4) {
    const double a2 = a * a;
    return a * (-1.0 / 3.0 + a2 / 30.0 - a2 * a2 / 840.0);
  }
  return (a * std::cos(a) - std::sin(a)) / (a * a);
}

}  // namespace detail

/// Deterministic part of one step, without heading wrap.
inline Eigen::Vector3d step_displacement(double theta, const ControlInput& u,
                                         double tau) {
  const double a = 0.5 * u.omega * tau;
  const double s = detail::sinc(a);
  return tau * Eigen::Vector3d(u.v * s * std::cos(theta + a),
                               u.v * s * std::sin(theta + a), u.omega);
}

inline Pose2 step(const Pose2& x, const ControlInput& u,
                  const Eigen::Vector3d& w, const ProcessNoiseModel& model) {
  const Eigen::Vector3d next =
      x.vector() + step_displacement(x.theta, u, model.tau) + w;
  return Pose2::from_vector(next);
}

inline Pose2 step(const Pose2& x, const ControlInput& u,
                  const ProcessNoiseModel& model) {
  return step(x, u, Eigen::Vector3d::Zero(), model);
}

/// Draws a zero-mean Gaussian sample with covariance `cov` (via Cholesky).
template <int N>
Eigen::Matrix<double, N, 1> sample_gaussian(
    const Eigen::Matrix<double, N, N>& cov, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Matrix<double, N, 1> n;
  for (int i = 0; i < N; ++i) n(i) = normal(rng);
  const Eigen::LLT<Eigen::Matrix<double, N, N>> llt(cov);
  if (llt.info() != Eigen::Success) {
    // semidefinite: fall back to the eigen square root
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, N, N>> es(cov);
    return es.eigenvectors() *
           es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() * n;
  }
  return llt.matrixL() * n;
}

inline Pose2 sample_step(const Pose2& x, const ControlInput& u,
                         const ProcessNoiseModel& model, Rng& rng) {
  return step(x, u, sample_gaussian<3>(model.W, rng), model);
}

/// df/dx, df/du, df/dw evaluated at (x, u, w = 0).
struct MotionJacobians {
  Eigen::Matrix3d E;
  Eigen::Matrix<double, 3, 2> B;
  Eigen::Matrix3d D;
};

inline MotionJacobians jacobians(const Pose2& x, const ControlInput& u,
                                 const ProcessNoiseModel& model) {
  const double tau = model.tau;
  const double a = 0.5 * u.omega * tau;
  const double s = detail::sinc(a);
  const double ds = detail::sinc_derivative(a);
  const double c = std::cos(x.theta + a);
  const double sn = std::sin(x.theta + a);

  MotionJacobians j;
  j.E.setIdentity();
  j.E(0, 2) = -tau * u.v * s * sn;
  j.E(1, 2) = tau * u.v * s * c;

  const double da = 0.5 * tau;  // da/domega
  j.B << tau * s * c, tau * u.v * (ds * c - s * sn) * da,
         tau * s * sn, tau * u.v * (ds * sn + s * c) * da,
         0.0, tau;
  j.D.setIdentity();
  return j;
}

}  // namespace activeslam

#endif  // ACTIVESLAM_MOTION_MODEL_HPP_
