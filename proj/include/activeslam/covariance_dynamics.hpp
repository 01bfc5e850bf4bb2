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

// Landmark covariance propagation.
//
// For static landmarks with block-diagonal information, every 2x2 block
// evolves independently as Sigma+ = (Sigma^-1 + M)^-1. With
// sigma = (S11, S12, S22) and m = (M11, M12, M22) this is the rational map
//
//   g(sigma, m) = (sigma + det(Sigma) * (m3, -m2, m1)) / f(sigma, m),
//   f(sigma, m) = det(I + Sigma M),
//
// whose partial derivatives give the per-block Jacobians used by the planner
// and by the LQR linearization.

#ifndef ACTIVESLAM_COVARIANCE_DYNAMICS_HPP_
#define ACTIVESLAM_COVARIANCE_DYNAMICS_HPP_

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "activeslam/errors.hpp"
#include "activeslam/fov_sensing.hpp"
#include "activeslam/geometry_se2.hpp"

namespace activeslam {

/// Per-landmark 2x2 covariance blocks of a block-diagonal covariance.
using CovBlocks = std::vector<Eigen::Matrix2d>;
/// Stacked (S11, S12, S22) triples, 3 entries per landmark.
using CovVector = Eigen::VectorXd;

inline bool is_valid_cov_triple(const Eigen::Vector3d& s) {
  return s.allFinite() && s(0) > 0.0 && s(2) > 0.0 && s(0) * s(2) - s(1) * s(1) > 0.0;
}

inline void validate_cov_vector(const CovVector& sigma) {
  if (sigma.size() == 0 || sigma.size() % 3 != 0) {
    throw std::invalid_argument("CovVector: length must be a positive multiple of 3");
  }
  for (Eigen::Index j = 0; j < sigma.size() / 3; ++j) {
    if (!is_valid_cov_triple(sigma.segment<3>(3 * j))) {
      throw std::invalid_argument("CovVector: block " + std::to_string(j) +
                                  " is not positive definite");
    }
  }
}

inline CovVector vecbl(const CovBlocks& blocks) {
  CovVector sigma(3 * static_cast<Eigen::Index>(blocks.size()));
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const Eigen::Matrix2d& b = blocks[j];
    if ((b - b.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff())) {
      throw std::invalid_argument("vecbl: block " + std::to_string(j) + " is not symmetric");
    }
    sigma.segment<3>(3 * static_cast<Eigen::Index>(j)) << b(0, 0), b(0, 1), b(1, 1);
  }
  validate_cov_vector(sigma);
  return sigma;
}

inline CovBlocks unvecbl(const CovVector& sigma) {
  validate_cov_vector(sigma);
  CovBlocks blocks(static_cast<std::size_t>(sigma.size() / 3));
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const auto s = sigma.segment<3>(3 * static_cast<Eigen::Index>(j));
    blocks[j] << s(0), s(1), s(1), s(2);
  }
  return blocks;
}

/// Sum of the landmark position variances, i.e. trace of the full covariance.
inline double cov_trace(const CovVector& sigma) {
  double t = 0.0;
  for (Eigen::Index j = 0; j < sigma.size() / 3; ++j) t += sigma(3 * j) + sigma(3 * j + 2);
  return t;
}

/// General Riccati map A (Sigma^-1 + M)^-1 A^T + Xi for dense matrices.
inline Eigen::MatrixXd riccati_general(const Eigen::MatrixXd& sigma,
                                       const Eigen::MatrixXd& m,
                                       const Eigen::MatrixXd& a,
                                       const Eigen::MatrixXd& xi) {
  const Eigen::LLT<Eigen::MatrixXd> sigma_llt(sigma);
  if (sigma_llt.info() != Eigen::Success) {
    throw std::invalid_argument("riccati_general: Sigma is not positive definite");
  }
  const Eigen::Index n = sigma.rows();
  const Eigen::MatrixXd info =
      sigma_llt.solve(Eigen::MatrixXd::Identity(n, n)) + m;
  const Eigen::LLT<Eigen::MatrixXd> info_llt(info);
  if (info_llt.info() != Eigen::Success) {
    throw NumericError("covariance_dynamics", "Sigma^-1 + M is not positive definite");
  }
  const Eigen::MatrixXd post = info_llt.solve(Eigen::MatrixXd::Identity(n, n));
  Eigen::MatrixXd out = a * post * a.transpose() + xi;
  return 0.5 * (out + out.transpose());
}

/// Closed-form block update g(sigma, m) for one landmark.
inline Eigen::Vector3d riccati_block_vector(const Eigen::Vector3d& s,
                                            const Eigen::Vector3d& m) {
  const double det_s = s(0) * s(2) - s(1) * s(1);
  const double f = s(1) * s(1) * (m(1) * m(1) - m(0) * m(2)) + 2.0 * s(1) * m(1) +
                   s(2) * m(2) + s(0) * (m(0) * (s(2) * m(2) + 1.0) - s(2) * m(1) * m(1)) +
                   1.0;
  if (!(f > 0.0)) {
    throw NumericError("covariance_dynamics",
                       "det(I + Sigma M) <= 0: block lost positive definiteness");
  }
  return Eigen::Vector3d(s(0) + det_s * m(2), s(1) - det_s * m(1), s(2) + det_s * m(0)) / f;
}

/// Partial derivatives of g for one block: rows are g1..g3.
struct BlockRiccatiJacobian {
  Eigen::Matrix3d d_sigma;
  Eigen::Matrix3d d_m;
};

inline BlockRiccatiJacobian riccati_block_jacobian(const Eigen::Vector3d& s,
                                                   const Eigen::Vector3d& m) {
  const Eigen::Vector3d g = riccati_block_vector(s, m);
  const double det_s = s(0) * s(2) - s(1) * s(1);
  const double det_m = m(0) * m(2) - m(1) * m(1);
  const double f = s(1) * s(1) * (m(1) * m(1) - m(0) * m(2)) + 2.0 * s(1) * m(1) +
                   s(2) * m(2) + s(0) * (m(0) * (s(2) * m(2) + 1.0) - s(2) * m(1) * m(1)) +
                   1.0;

  const Eigen::RowVector3d df_ds(m(0) + s(2) * det_m, 2.0 * m(1) - 2.0 * s(1) * det_m,
                                 m(2) + s(0) * det_m);
  Eigen::Matrix3d r;
  r << 1.0 + s(2) * m(2), -2.0 * s(1) * m(2), s(0) * m(2),
       -s(2) * m(1), 1.0 + 2.0 * s(1) * m(1), -s(0) * m(1),
       s(2) * m(0), -2.0 * s(1) * m(0), 1.0 + s(0) * m(0);

  const Eigen::RowVector3d df_dm(s(0) + det_s * m(2), 2.0 * s(1) - 2.0 * det_s * m(1),
                                 s(2) + det_s * m(0));
  Eigen::Matrix3d r_tilde;
  r_tilde << 0.0, 0.0, 1.0,
             0.0, -1.0, 0.0,
             1.0, 0.0, 0.0;

  BlockRiccatiJacobian j;
  j.d_sigma = (r - g * df_ds) / f;
  j.d_m = (det_s * r_tilde - g * df_dm) / f;
  return j;
}

/// Information triples m_j(x) for every landmark estimate.
inline std::vector<Eigen::Vector3d> info_vectors(const Pose2& x,
                                                 const LandmarkSet& landmarks_hat,
                                                 const SensorModel& sensor) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(landmarks_hat.size());
  for (const auto& y : landmarks_hat) out.push_back(info_vector(info_block(x, y, sensor)));
  return out;
}

/// sigma_{k+1} = g(sigma_k, x_{k+1}) with information evaluated at the fixed
/// landmark estimates.
inline CovVector riccati_step(const CovVector& sigma, const Pose2& x_next,
                              const LandmarkSet& landmarks_hat,
                              const SensorModel& sensor) {
  if (sigma.size() != 3 * static_cast<Eigen::Index>(landmarks_hat.size())) {
    throw std::invalid_argument("riccati_step: sigma / landmark count mismatch");
  }
  CovVector out(sigma.size());
  for (std::size_t j = 0; j < landmarks_hat.size(); ++j) {
    const Eigen::Index o = 3 * static_cast<Eigen::Index>(j);
    const Eigen::Vector3d m = info_vector(info_block(x_next, landmarks_hat[j], sensor));
    out.segment<3>(o) = riccati_block_vector(sigma.segment<3>(o), m);
  }
  return out;
}

/// F = dg/dsigma (block diagonal, kept as blocks) and G = dg/dx (3 n_l x 3).
struct RiccatiJacobians {
  std::vector<Eigen::Matrix3d> F_blocks;
  Eigen::MatrixXd G;
  int kink_count = 0;

  Eigen::MatrixXd F_dense() const {
    const Eigen::Index n = 3 * static_cast<Eigen::Index>(F_blocks.size());
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t j = 0; j < F_blocks.size(); ++j) {
      const Eigen::Index o = 3 * static_cast<Eigen::Index>(j);
      f.block<3, 3>(o, o) = F_blocks[j];
    }
    return f;
  }

  /// F^T * v using the block structure.
  Eigen::VectorXd F_transpose_times(const Eigen::VectorXd& v) const {
    Eigen::VectorXd out(v.size());
    for (std::size_t j = 0; j < F_blocks.size(); ++j) {
      const Eigen::Index o = 3 * static_cast<Eigen::Index>(j);
      out.segment<3>(o) = F_blocks[j].transpose() * v.segment<3>(o);
    }
    return out;
  }
};

/// dm/dx (3x3): rows m1..m3, columns px, py, theta.
inline Eigen::Matrix3d info_vector_gradient(const InfoBlockGradient& grad) {
  Eigen::Matrix3d dm_dx;
  for (int c = 0; c < 3; ++c) dm_dx.col(c) = info_vector(grad.d_dx[c]);
  return dm_dx;
}

inline RiccatiJacobians riccati_jacobians(const CovVector& sigma_k,
                                          const Pose2& x_next,
                                          const LandmarkSet& landmarks_hat,
                                          const SensorModel& sensor) {
  const std::size_t n_l = landmarks_hat.size();
  if (sigma_k.size() != 3 * static_cast<Eigen::Index>(n_l)) {
    throw std::invalid_argument("riccati_jacobians: sigma / landmark count mismatch");
  }
  RiccatiJacobians out;
  out.F_blocks.resize(n_l);
  out.G.resize(3 * static_cast<Eigen::Index>(n_l), 3);
  for (std::size_t j = 0; j < n_l; ++j) {
    const Eigen::Index o = 3 * static_cast<Eigen::Index>(j);
    const Eigen::Vector3d m = info_vector(info_block(x_next, landmarks_hat[j], sensor));
    const BlockRiccatiJacobian bj = riccati_block_jacobian(sigma_k.segment<3>(o), m);
    const InfoBlockGradient grad = info_block_gradient(x_next, landmarks_hat[j], sensor);
    if (grad.kink) ++out.kink_count;
    out.F_blocks[j] = bj.d_sigma;
    out.G.block<3, 3>(o, 0) = bj.d_m * info_vector_gradient(grad);
  }
  return out;
}

}  // namespace activeslam

#endif  // ACTIVESLAM_COVARIANCE_DYNAMICS_HPP_
