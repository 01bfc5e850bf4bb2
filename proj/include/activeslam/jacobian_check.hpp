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

// Central finite-difference checks of every analytic derivative in the
// library, on randomly sampled smooth-region inputs.

#ifndef ACTIVESLAM_JACOBIAN_CHECK_HPP_
#define ACTIVESLAM_JACOBIAN_CHECK_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "activeslam/covariance_dynamics.hpp"
#include "activeslam/fov_sensing.hpp"
#include "activeslam/geometry_se2.hpp"
#include "activeslam/motion_model.hpp"

namespace activeslam {

struct JacobianCheckResult {
  std::string name;
  int samples = 0;
  double max_error = 0.0;
  double tolerance = 0.0;

  bool passed() const { return max_error <= tolerance; }
};

namespace jacobian_detail {

using VecFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Central differences; `diff` maps (f(x + h e_i), f(x - h e_i)) to their
/// difference so that wrapped outputs can be handled.
inline Eigen::MatrixXd central_difference(
    const VecFn& f, const Eigen::VectorXd& x, double h,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>& diff) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd jac(f0.size(), x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x;
    Eigen::VectorXd xm = x;
    xp(i) += h;
    xm(i) -= h;
    jac.col(i) = diff(f(xp), f(xm)) / (2.0 * h);
  }
  return jac;
}

inline Eigen::MatrixXd central_difference(const VecFn& f, const Eigen::VectorXd& x, double h) {
  return central_difference(f, x, h, [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return Eigen::VectorXd(a - b);
  });
}

inline Eigen::VectorXd pose_difference(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return pose_error(Pose2::from_vector(a), Pose2::from_vector(b));
}

/// Frobenius relative error. The denominator never drops below
/// 1e-5 * max(1, |f(x)|), the level at which central-difference roundoff
/// dominates, so exactly-zero derivatives compare against that floor.
inline double relative_error(const Eigen::MatrixXd& analytic, const Eigen::MatrixXd& numeric,
                             double value_norm) {
  const double floor = 1e-5 * std::max(1.0, value_norm);
  const double scale = std::max({analytic.norm(), numeric.norm(), floor});
  return (analytic - numeric).norm() / scale;
}

/// True when q is clear of the interior medial axis of a convex polygon, so
/// the signed distance is smooth in a neighborhood of q.
inline bool clear_of_kinks(const Eigen::Vector2d& q, const FovPolygon& fov, double margin) {
  if (!fov.contains(q)) return true;
  const auto& v = fov.vertices();
  std::vector<double> d;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Eigen::Vector2d e = v[(i + 1) % v.size()] - v[i];
    const Eigen::Vector2d n(e.y(), -e.x());
    d.push_back(std::abs(n.normalized().dot(q - v[i])));
  }
  std::sort(d.begin(), d.end());
  return d[1] - d[0] > margin;
}

struct Sampler {
  Rng rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  Pose2 pose() {
    return Pose2(Eigen::Vector2d(uniform(-50.0, 50.0), uniform(-50.0, 50.0)),
                 uniform(-std::numbers::pi, std::numbers::pi));
  }

  ControlInput control() {
    // Every fourth sample exercises the small-rotation branch.
    const double w = (std::uniform_int_distribution<int>(0, 3)(rng) == 0) ? uniform(-1e-5, 1e-5)
                                                                          : uniform(-1.0, 1.0);
    return {uniform(0.0, 3.0), w};
  }

  /// Landmark whose body-frame position lies near the FoV.
  Eigen::Vector2d landmark(const Pose2& x, const SensorModel& sensor) {
    for (;;) {
      const Eigen::Vector2d q(uniform(-20.0, 50.0), uniform(-45.0, 45.0));
      if (!clear_of_kinks(q, sensor.fov, 1e-3)) continue;
      return x.p + rotation_matrix(x.theta) * q;
    }
  }

  Eigen::Vector3d cov_triple() {
    Eigen::Matrix2d l = Eigen::Matrix2d::Zero();
    l(0, 0) = uniform(0.3, 5.0);
    l(1, 1) = uniform(0.3, 5.0);
    l(1, 0) = uniform(-2.0, 2.0);
    const Eigen::Matrix2d s = l * l.transpose();
    return {s(0, 0), s(0, 1), s(1, 1)};
  }
};

}  // namespace jacobian_detail

/// Runs every check on `samples` random inputs each.
inline std::vector<JacobianCheckResult> run_jacobian_checks(int samples = 100,
                                                            std::uint64_t seed = 1) {
  using jacobian_detail::central_difference;
  using jacobian_detail::pose_difference;
  using jacobian_detail::relative_error;
  jacobian_detail::Sampler sampler(seed);
  const ProcessNoiseModel motion;
  const SensorModel sensor;
  const double h = 1e-6;

  JacobianCheckResult e{"motion E", samples, 0.0, 1e-5};
  JacobianCheckResult b{"motion B", samples, 0.0, 1e-5};
  JacobianCheckResult d{"motion D", samples, 0.0, 1e-5};
  JacobianCheckResult dq{"dq/dx", samples, 0.0, 1e-4};
  JacobianCheckResult dm{"dM/dx", samples, 0.0, 1e-4};
  JacobianCheckResult f{"Riccati F", samples, 0.0, 1e-4};
  JacobianCheckResult g{"Riccati G", samples, 0.0, 1e-4};

  for (int s = 0; s < samples; ++s) {
    const Pose2 x = sampler.pose();
    const ControlInput u = sampler.control();
    const MotionJacobians mj = jacobians(x, u, motion);
    const Eigen::Vector3d w0 = Eigen::Vector3d::Zero();

    const Eigen::MatrixXd ne = central_difference(
        [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
          return step(Pose2::from_vector(v), u, motion).vector();
        },
        x.vector(), h, pose_difference);
    const double x_next_norm = step(x, u, motion).vector().norm();
    e.max_error = std::max(e.max_error, relative_error(mj.E, ne, x_next_norm));

    const Eigen::MatrixXd nb = central_difference(
        [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
          return step(x, ControlInput::from_vector(v), motion).vector();
        },
        u.vector(), h, pose_difference);
    b.max_error = std::max(b.max_error, relative_error(mj.B, nb, x_next_norm));

    const Eigen::MatrixXd nd = central_difference(
        [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
          return step(x, u, Eigen::Vector3d(v), motion).vector();
        },
        w0, h, pose_difference);
    d.max_error = std::max(d.max_error, relative_error(mj.D, nd, x_next_norm));

    const Eigen::Vector2d y = sampler.landmark(x, sensor);
    const Eigen::MatrixXd nq = central_difference(
        [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
          return body_frame_coords(Pose2::from_vector(v), y);
        },
        x.vector(), h);
    dq.max_error = std::max(dq.max_error, relative_error(body_frame_jacobian(x, y), nq,
                                                      body_frame_coords(x, y).norm()));

    const InfoBlockGradient grad = info_block_gradient(x, y, sensor);
    for (int c = 0; c < 3; ++c) {
      const Eigen::MatrixXd nm = central_difference(
          [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
            Eigen::Vector3d xv = x.vector();
            xv(c) = v(0);
            const Eigen::Matrix2d m = info_block(Pose2::from_vector(xv), y, sensor);
            return Eigen::Map<const Eigen::VectorXd>(m.data(), 4);
          },
          Eigen::VectorXd::Constant(1, x.vector()(c)), h);
      const Eigen::Matrix2d& an = grad.d_dx[c];
      dm.max_error = std::max(dm.max_error,
                              relative_error(Eigen::Map<const Eigen::VectorXd>(an.data(), 4), nm,
                                             info_block(x, y, sensor).norm()));
    }

    // Riccati F and G on three landmarks near the FoV.
    LandmarkSet lms;
    CovVector sigma(9);
    for (int j = 0; j < 3; ++j) {
      lms.push_back(sampler.landmark(x, sensor));
      sigma.segment<3>(3 * j) = sampler.cov_triple();
    }
    const RiccatiJacobians rj = riccati_jacobians(sigma, x, lms, sensor);
    const double sigma_next_norm = riccati_step(sigma, x, lms, sensor).norm();
    const Eigen::MatrixXd nf = central_difference(
        [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return riccati_step(v, x, lms, sensor); },
        sigma, h);
    f.max_error = std::max(f.max_error, relative_error(rj.F_dense(), nf, sigma_next_norm));
    const Eigen::MatrixXd ng = central_difference(
        [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
          return riccati_step(sigma, Pose2::from_vector(v), lms, sensor);
        },
        x.vector(), h);
    g.max_error = std::max(g.max_error, relative_error(rj.G, ng, sigma_next_norm));
  }
  return {e, b, d, dq, dm, f, g};
}

}  // namespace activeslam

#endif  // ACTIVESLAM_JACOBIAN_CHECK_HPP_
