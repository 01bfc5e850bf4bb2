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

// Open-loop informative trajectory optimization (iterative covariance
// regulation). The control sequence U = [u_0, ..., u_{K-1}] is improved by
// fixed-step gradient descent on
//
//   J(U) = sum_{k=0}^{K} tr(Sigma_k)
//
// subject to the noise-free motion model and the block Riccati update. The
// gradient is exact and computed with one backward adjoint sweep.

#ifndef ACTIVESLAM_ICR_PLANNER_HPP_
#define ACTIVESLAM_ICR_PLANNER_HPP_

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "activeslam/covariance_dynamics.hpp"
#include "activeslam/fov_sensing.hpp"
#include "activeslam/geometry_se2.hpp"
#include "activeslam/motion_model.hpp"

namespace activeslam {

/// Stacked controls [v_0, omega_0, v_1, omega_1, ...].
using ControlVector = Eigen::VectorXd;

inline ControlInput control_at(const ControlVector& u, std::size_t k) {
  const auto i = static_cast<Eigen::Index>(2 * k);
  return {u(i), u(i + 1)};
}

inline std::size_t horizon_of(const ControlVector& u) {
  return static_cast<std::size_t>(u.size() / 2);
}

inline ControlVector clamp_controls(const ControlVector& u, const ControlBounds& bounds) {
  ControlVector out(u.size());
  for (std::size_t k = 0; k < horizon_of(u); ++k) {
    out.segment<2>(static_cast<Eigen::Index>(2 * k)) = bounds.clamp(control_at(u, k)).vector();
  }
  return out;
}

/// Everything a rollout needs besides the controls.
struct PlanningProblem {
  Pose2 x0;
  CovVector sigma0;
  LandmarkSet landmarks_hat;
  SensorModel sensor;
  ProcessNoiseModel motion;

  void validate() const {
    validate_landmarks(landmarks_hat);
    validate_cov_vector(sigma0);
    if (sigma0.size() != 3 * static_cast<Eigen::Index>(landmarks_hat.size())) {
      throw std::invalid_argument("PlanningProblem: sigma0 / landmark count mismatch");
    }
    sensor.validate();
    motion.validate();
  }
};

struct IcrConfig {
  int horizon = 5;
  int iterations = 10;
  // Per-channel step size (v, omega), applied at every time step.
  Eigen::Vector2d alpha = Eigen::Vector2d(0.005, 0.0005);
  ControlBounds bounds;
  // Halve the step until the cost does not increase.
  bool backtracking = false;
  int max_backtracks = 30;

  void validate() const {
    if (horizon < 1) throw std::invalid_argument("IcrConfig: horizon must be >= 1");
    if (iterations < 0) throw std::invalid_argument("IcrConfig: iterations must be >= 0");
    if (!(alpha.minCoeff() > 0.0) || !alpha.allFinite()) {
      throw std::invalid_argument("IcrConfig: alpha entries must be > 0");
    }
    bounds.validate();
  }
};

struct OpenLoopPlan {
  std::vector<Pose2> x_nom;         // K + 1
  std::vector<ControlInput> u_nom;  // K
  std::vector<CovVector> sigma_nom; // K + 1
  double cost = 0.0;

  std::size_t horizon() const { return u_nom.size(); }
};

inline double trace_cost(const OpenLoopPlan& plan) {
  double j = 0.0;
  for (const auto& s : plan.sigma_nom) j += cov_trace(s);
  return j;
}

inline OpenLoopPlan rollout(const PlanningProblem& problem, const ControlVector& u) {
  if (u.size() % 2 != 0 || u.size() == 0) {
    throw std::invalid_argument("rollout: control vector must hold K >= 1 (v, omega) pairs");
  }
  const std::size_t k_max = horizon_of(u);
  OpenLoopPlan plan;
  plan.x_nom.reserve(k_max + 1);
  plan.sigma_nom.reserve(k_max + 1);
  plan.x_nom.push_back(problem.x0);
  plan.sigma_nom.push_back(problem.sigma0);
  for (std::size_t k = 0; k < k_max; ++k) {
    const ControlInput uk = control_at(u, k);
    plan.u_nom.push_back(uk);
    plan.x_nom.push_back(step(plan.x_nom.back(), uk, problem.motion));
    plan.sigma_nom.push_back(riccati_step(plan.sigma_nom.back(), plan.x_nom.back(),
                                          problem.landmarks_hat, problem.sensor));
  }
  plan.cost = trace_cost(plan);
  return plan;
}

/// dtr(Sigma)/dsigma: eta = (1, 0, 1) stacked per landmark.
inline Eigen::VectorXd trace_gradient(Eigen::Index n_landmarks) {
  Eigen::VectorXd b(3 * n_landmarks);
  for (Eigen::Index j = 0; j < n_landmarks; ++j) b.segment<3>(3 * j) << 1.0, 0.0, 1.0;
  return b;
}

/// dJ/dU by reverse-mode sweep over both the pose and covariance trajectories.
inline ControlVector gradient(const PlanningProblem& problem, const ControlVector& u) {
  const OpenLoopPlan plan = rollout(problem, u);
  const std::size_t k_max = plan.horizon();
  const auto n_l = static_cast<Eigen::Index>(problem.landmarks_hat.size());
  const Eigen::VectorXd eta = trace_gradient(n_l);

  ControlVector grad(u.size());
  Eigen::VectorXd lambda_sigma = eta;  // dJ/dsigma_{k+1}
  Eigen::Vector3d lambda_x = Eigen::Vector3d::Zero();  // dJ/dx_{k+1} via later steps
  for (std::size_t k = k_max; k-- > 0;) {
    const RiccatiJacobians rj = riccati_jacobians(plan.sigma_nom[k], plan.x_nom[k + 1],
                                                  problem.landmarks_hat, problem.sensor);
    const Eigen::Vector3d mu = lambda_x + rj.G.transpose() * lambda_sigma;
    const MotionJacobians mj = jacobians(plan.x_nom[k], plan.u_nom[k], problem.motion);
    grad.segment<2>(static_cast<Eigen::Index>(2 * k)) = mj.B.transpose() * mu;
    lambda_x = mj.E.transpose() * mu;
    lambda_sigma = eta + rj.F_transpose_times(lambda_sigma);
  }
  return grad;
}

struct IcrResult {
  OpenLoopPlan plan;
  ControlVector controls;
  std::vector<double> cost_history;  // cost before each iteration, then final
};

inline IcrResult optimize(const PlanningProblem& problem, const ControlVector& u_init,
                          const IcrConfig& cfg) {
  cfg.validate();
  ControlVector u = u_init;
  IcrResult result;
  double cost = rollout(problem, u).cost;
  result.cost_history.push_back(cost);
  for (int it = 0; it < cfg.iterations; ++it) {
    ControlVector scaled = gradient(problem, u);
    for (std::size_t k = 0; k < horizon_of(u); ++k) {
      scaled.segment<2>(static_cast<Eigen::Index>(2 * k)).array() *= cfg.alpha.array();
    }
    if (!cfg.backtracking) {
      u = clamp_controls(u - scaled, cfg.bounds);
      cost = rollout(problem, u).cost;
    } else {
      double t = 1.0;
      for (int b = 0; b <= cfg.max_backtracks; ++b, t *= 0.5) {
        const ControlVector candidate = clamp_controls(u - t * scaled, cfg.bounds);
        const double c = rollout(problem, candidate).cost;
        if (c <= cost) {
          u = candidate;
          cost = c;
          break;
        }
      }
    }
    result.cost_history.push_back(cost);
  }
  result.controls = u;
  result.plan = rollout(problem, u);
  return result;
}

}  // namespace activeslam

#endif  // ACTIVESLAM_ICR_PLANNER_HPP_
