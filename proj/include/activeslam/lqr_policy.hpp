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

// Closed-loop regulation around an open-loop plan.
//
// The error state s = (x - x_bar, sigma - sigma_bar) follows the linear
// time-varying system
//
//   s+ = A s + B u~ + D w,   A = [E 0; G E F],  B = [B; G B],  D = [D; G D]
//
// and the stage cost s'Qs + b's + u~'Ru carries a linear term from the trace
// objective. The optimal policy is affine, u~ = L s + eps, with value
// V_k(s) = s'P_k s + d_k's + delta_k computed backward in time.

#ifndef ACTIVESLAM_LQR_POLICY_HPP_
#define ACTIVESLAM_LQR_POLICY_HPP_

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "activeslam/covariance_dynamics.hpp"
#include "activeslam/errors.hpp"
#include "activeslam/icr_planner.hpp"
#include "activeslam/motion_model.hpp"

namespace activeslam {

struct AugmentedLinearization {
  std::vector<Eigen::MatrixXd> A;  // n_s x n_s
  std::vector<Eigen::MatrixXd> B;  // n_s x m
  std::vector<Eigen::MatrixXd> D;  // n_s x n_x
  int kink_count = 0;

  std::size_t horizon() const { return A.size(); }
};

struct CostQuadratics {
  std::vector<Eigen::MatrixXd> Q;  // K + 1
  std::vector<Eigen::VectorXd> b;  // K + 1
  std::vector<Eigen::MatrixXd> R;  // K
};

struct LqrWeights {
  Eigen::Matrix3d q_robot = Eigen::Vector3d(10.0, 10.0, 1.0).asDiagonal();
  // Per-landmark pattern, repeated along the diagonal for every landmark.
  Eigen::Matrix3d q_landmark = Eigen::Vector3d(1.0, 0.1, 1.0).asDiagonal();
  Eigen::Matrix2d r = (Eigen::Matrix2d() << 20.0, 5.0, 5.0, 10.0).finished();

  void validate() const {
    auto is_psd = [](const Eigen::MatrixXd& m) {
      if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) return false;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
      return es.eigenvalues().minCoeff() >= -1e-12;
    };
    if (!q_robot.allFinite() || !is_psd(q_robot)) {
      throw std::invalid_argument("LqrWeights: q_robot must be symmetric PSD");
    }
    if (!q_landmark.allFinite() || !is_psd(q_landmark)) {
      throw std::invalid_argument("LqrWeights: q_landmark must be symmetric PSD");
    }
    if (!r.allFinite() || (r - r.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
        r.llt().info() != Eigen::Success) {
      throw std::invalid_argument("LqrWeights: r must be symmetric positive definite");
    }
  }
};

struct LqrPolicy {
  std::vector<Eigen::MatrixXd> L;    // K, m x n_s
  std::vector<Eigen::VectorXd> eps;  // K
  std::vector<Eigen::MatrixXd> P;    // K + 1
  std::vector<Eigen::VectorXd> d;    // K + 1
  std::vector<double> delta;         // K + 1
  // Largest |P - P^T| seen before each symmetrization.
  double max_asymmetry = 0.0;

  std::size_t horizon() const { return L.size(); }

  /// Optimal expected cost-to-go from s at step k.
  double value(std::size_t k, const Eigen::VectorXd& s) const {
    return s.dot(P[k] * s) + d[k].dot(s) + delta[k];
  }
};

inline AugmentedLinearization linearize(const OpenLoopPlan& plan,
                                        const PlanningProblem& problem) {
  const std::size_t k_max = plan.horizon();
  const auto n_sigma = static_cast<Eigen::Index>(3 * problem.landmarks_hat.size());
  const Eigen::Index n_s = 3 + n_sigma;

  AugmentedLinearization lin;
  for (std::size_t k = 0; k < k_max; ++k) {
    const MotionJacobians mj = jacobians(plan.x_nom[k], plan.u_nom[k], problem.motion);
    const RiccatiJacobians rj = riccati_jacobians(plan.sigma_nom[k], plan.x_nom[k + 1],
                                                  problem.landmarks_hat, problem.sensor);
    lin.kink_count += rj.kink_count;

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_s, n_s);
    a.topLeftCorner<3, 3>() = mj.E;
    a.bottomLeftCorner(n_sigma, 3) = rj.G * mj.E;
    for (std::size_t j = 0; j < rj.F_blocks.size(); ++j) {
      const Eigen::Index o = 3 + 3 * static_cast<Eigen::Index>(j);
      a.block<3, 3>(o, o) = rj.F_blocks[j];
    }
    Eigen::MatrixXd b(n_s, 2);
    b.topRows<3>() = mj.B;
    b.bottomRows(n_sigma) = rj.G * mj.B;
    Eigen::MatrixXd d(n_s, 3);
    d.topRows<3>() = mj.D;
    d.bottomRows(n_sigma) = rj.G * mj.D;

    lin.A.push_back(std::move(a));
    lin.B.push_back(std::move(b));
    lin.D.push_back(std::move(d));
  }
  return lin;
}

/// Quadratic expansion of the trace objective plus user regularization. The
/// trace is linear in sigma, so its Hessian vanishes and b stacks (1, 0, 1).
inline CostQuadratics cost_expansion(const OpenLoopPlan& plan, const LqrWeights& weights) {
  const std::size_t k_max = plan.horizon();
  const Eigen::Index n_l = plan.sigma_nom.front().size() / 3;
  const Eigen::Index n_s = 3 + 3 * n_l;

  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n_s, n_s);
  q.topLeftCorner<3, 3>() = weights.q_robot;
  for (Eigen::Index j = 0; j < n_l; ++j) q.block<3, 3>(3 + 3 * j, 3 + 3 * j) = weights.q_landmark;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n_s);
  b.tail(3 * n_l) = trace_gradient(n_l);

  CostQuadratics costs;
  costs.Q.assign(k_max + 1, q);
  costs.b.assign(k_max + 1, b);
  costs.R.assign(k_max, weights.r);
  return costs;
}

/// Backward recursion for the affine LQR. `noise_cov` is the covariance of w
/// (an empty matrix means w = 0).
inline LqrPolicy backward_pass(const AugmentedLinearization& lin, const CostQuadratics& costs,
                               const Eigen::MatrixXd& noise_cov) {
  const std::size_t k_max = lin.horizon();
  if (k_max == 0) throw std::invalid_argument("backward_pass: horizon must be >= 1");
  if (costs.Q.size() != k_max + 1 || costs.b.size() != k_max + 1 || costs.R.size() != k_max) {
    throw std::invalid_argument("backward_pass: cost horizon does not match linearization");
  }

  LqrPolicy pol;
  pol.L.resize(k_max);
  pol.eps.resize(k_max);
  pol.P.resize(k_max + 1);
  pol.d.resize(k_max + 1);
  pol.delta.resize(k_max + 1);
  pol.P[k_max] = costs.Q[k_max];
  pol.d[k_max] = costs.b[k_max];
  pol.delta[k_max] = 0.0;

  for (std::size_t k = k_max; k-- > 0;) {
    const Eigen::MatrixXd& a = lin.A[k];
    const Eigen::MatrixXd& b = lin.B[k];
    const Eigen::MatrixXd& p_next = pol.P[k + 1];
    const Eigen::VectorXd& d_next = pol.d[k + 1];

    const Eigen::MatrixXd pb = p_next * b;
    const Eigen::MatrixXd s = costs.R[k] + b.transpose() * pb;
    const Eigen::LLT<Eigen::MatrixXd> s_llt(0.5 * (s + s.transpose()));
    if (s_llt.info() != Eigen::Success) {
      throw NumericError("lqr_policy", "R + B'PB is not positive definite",
                         static_cast<int>(k));
    }
    const Eigen::MatrixXd bt_pa = pb.transpose() * a;
    const Eigen::VectorXd bt_d = b.transpose() * d_next;

    pol.L[k] = -s_llt.solve(bt_pa);
    pol.eps[k] = -0.5 * s_llt.solve(bt_d);

    Eigen::MatrixXd p = costs.Q[k] + a.transpose() * p_next * a + bt_pa.transpose() * pol.L[k];
    pol.d[k] = costs.b[k] + a.transpose() * d_next + bt_pa.transpose() * (2.0 * pol.eps[k]);

    double noise_term = 0.0;
    if (noise_cov.size() > 0) {
      const Eigen::MatrixXd& dn = lin.D[k];
      noise_term = (dn.transpose() * p_next * dn * noise_cov).trace();
    }
    pol.delta[k] = pol.delta[k + 1] + noise_term + 0.5 * bt_d.dot(pol.eps[k]);

    pol.max_asymmetry = std::max(pol.max_asymmetry, (p - p.transpose()).cwiseAbs().maxCoeff());
    pol.P[k] = 0.5 * (p + p.transpose());
  }
  return pol;
}

/// Feedback control at step k from the current state estimate.
inline ControlInput apply_policy(std::size_t k, const Pose2& x, const CovVector& sigma,
                                 const OpenLoopPlan& plan, const LqrPolicy& policy,
                                 const ControlBounds& bounds) {
  if (k >= policy.horizon()) throw std::out_of_range("apply_policy: step outside horizon");
  Eigen::VectorXd s(3 + sigma.size());
  s.head<3>() = pose_error(x, plan.x_nom[k]);
  s.tail(sigma.size()) = sigma - plan.sigma_nom[k];
  const Eigen::Vector2d u =
      plan.u_nom[k].vector() + policy.L[k] * s + policy.eps[k];
  return bounds.clamp(ControlInput::from_vector(u));
}

}  // namespace activeslam

#endif  // ACTIVESLAM_LQR_POLICY_HPP_
