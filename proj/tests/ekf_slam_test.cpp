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

#include "activeslam/ekf_slam.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "support/oracles.hpp"

namespace activeslam {
namespace {

JointBelief RandomBelief(std::mt19937_64& rng, int n_l) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LandmarkSet lms;
  for (int j = 0; j < n_l; ++j) lms.emplace_back(20 + 15 * u(rng), 15 * u(rng));
  const int n = 3 + 2 * n_l;
  Eigen::MatrixXd cov = testing::random_spd(n, rng, 0.05, 2.0);
  return make_belief(Pose2(u(rng), u(rng), 0.2 * u(rng)), lms, cov);
}

// Textbook EKF update with every landmark's noise given explicitly.
JointBelief OracleUpdate(const JointBelief& prior, const Eigen::VectorXd& z,
                         const std::vector<double>& vis, const SensorModel& sensor) {
  const Pose2 x = prior.robot();
  const auto n_l = static_cast<Eigen::Index>(prior.n_landmarks());
  const Eigen::Index n = prior.mean.size();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n_l, n);
  Eigen::VectorXd pred(2 * n_l);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(2 * n_l, 2 * n_l);
  const double c = std::cos(x.theta), s = std::sin(x.theta);
  for (Eigen::Index j = 0; j < n_l; ++j) {
    const Eigen::Vector2d d = prior.landmark(static_cast<std::size_t>(j)) - x.p;
    pred.segment<2>(2 * j) << c * d.x() + s * d.y(), -s * d.x() + c * d.y();
    h(2 * j, 0) = -c;
    h(2 * j, 1) = -s;
    h(2 * j + 1, 0) = s;
    h(2 * j + 1, 1) = -c;
    h(2 * j, 2) = -s * d.x() + c * d.y();
    h(2 * j + 1, 2) = -c * d.x() - s * d.y();
    h(2 * j, 3 + 2 * j) = c;
    h(2 * j, 4 + 2 * j) = s;
    h(2 * j + 1, 3 + 2 * j) = -s;
    h(2 * j + 1, 4 + 2 * j) = c;
    v.block<2, 2>(2 * j, 2 * j) = sensor.gamma / vis[static_cast<std::size_t>(j)];
  }
  const Eigen::MatrixXd k =
      prior.cov * h.transpose() * (h * prior.cov * h.transpose() + v).inverse();
  JointBelief post = prior;
  post.mean += k * (z - pred);
  post.cov = (Eigen::MatrixXd::Identity(n, n) - k * h) * prior.cov;
  return post;
}

TEST(GaussianEntropyTest, ClosedForms) {
  const double h2 = std::log(2 * std::numbers::pi * std::numbers::e);
  EXPECT_NEAR(gaussian_entropy(Eigen::MatrixXd::Identity(2, 2)), h2, 1e-15);
  EXPECT_NEAR(h2, 2.83788, 1e-5);
  EXPECT_NEAR(gaussian_entropy(4 * Eigen::MatrixXd::Identity(2, 2)) - h2, std::log(4.0), 1e-14);
  EXPECT_NEAR(std::log(4.0), 1.3863, 1e-4);
  EXPECT_EQ(gaussian_entropy(-Eigen::MatrixXd::Identity(2, 2)),
            -std::numeric_limits<double>::infinity());
}

TEST(GaussianEntropyTest, MatchesDeterminantOracle) {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 8; ++n) {
    const Eigen::MatrixXd c = testing::random_spd(n, rng);
    const double expected =
        0.5 * (n * std::log(2 * std::numbers::pi * std::numbers::e) +
               std::log(testing::determinant_by_elimination(c)));
    EXPECT_NEAR(gaussian_entropy(c), expected, 1e-12 * std::max(1.0, std::abs(expected)));
  }
}

TEST(BeliefTest, Accessors) {
  const LandmarkSet lms = {{1.0, 2.0}, {3.0, 4.0}};
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(7, 7);
  cov(3, 4) = cov(4, 3) = 0.25;
  const JointBelief b = make_belief(Pose2(5.0, 6.0, 0.5), lms, cov);
  EXPECT_EQ(b.n_landmarks(), 2u);
  EXPECT_EQ(b.landmark(1), Eigen::Vector2d(3.0, 4.0));
  EXPECT_EQ(b.robot().vector(), Eigen::Vector3d(5.0, 6.0, 0.5));
  EXPECT_EQ(b.landmark_cov_vector(),
            (CovVector(6) << 1.0, 0.25, 1.0, 1.0, 0.0, 1.0).finished());
  EXPECT_THROW(make_belief(Pose2(), lms, Eigen::MatrixXd::Identity(5, 5)), std::invalid_argument);
}

TEST(MakePsdTest, ClipsNegativeEigenvalues) {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3, -1
  const Eigen::MatrixXd p = make_psd(m);
  EXPECT_GE(testing::min_eigenvalue(p), -1e-15);
  EXPECT_LT((p - 1.5 * Eigen::MatrixXd::Ones(2, 2)).norm(), 1e-12);
  const Eigen::MatrixXd spd = Eigen::MatrixXd::Identity(3, 3);
  EXPECT_EQ(make_psd(spd), spd);
}

TEST(PredictTest, MatchesDenseOracle) {
  std::mt19937_64 rng(2);
  const ProcessNoiseModel model;
  for (int i = 0; i < 50; ++i) {
    const JointBelief b = RandomBelief(rng, 4);
    const ControlInput u{1.7, -0.3};
    const JointBelief p = predict(b, u, model);
    const MotionJacobians mj = jacobians(b.robot(), u, model);
    Eigen::MatrixXd f = Eigen::MatrixXd::Identity(11, 11);
    f.topLeftCorner<3, 3>() = mj.E;
    Eigen::MatrixXd expected = f * b.cov * f.transpose();
    expected.topLeftCorner<3, 3>() += model.W;
    EXPECT_LT((p.cov - expected).norm(), 1e-12 * expected.norm());
    EXPECT_EQ(p.mean.head<3>(), step(b.robot(), u, model).vector());
    EXPECT_EQ(p.mean.tail(8), b.mean.tail(8));
    EXPECT_EQ(p.cov.bottomRightCorner(8, 8), b.cov.bottomRightCorner(8, 8));
  }
}

TEST(ReconstructTest, FillsPredictionsAndFlags) {
  std::mt19937_64 rng(3);
  const JointBelief b = RandomBelief(rng, 3);
  const ReconstructedMeasurement r = reconstruct_measurement(b, {{1, {7.0, 8.0}}});
  EXPECT_EQ(r.measured, (std::vector<bool>{false, true, false}));
  EXPECT_EQ(r.z.segment<2>(2), Eigen::Vector2d(7.0, 8.0));
  EXPECT_EQ(r.z.segment<2>(0), body_frame_coords(b.robot(), b.landmark(0)));
  EXPECT_THROW(reconstruct_measurement(b, {{3, {0.0, 0.0}}}), std::out_of_range);
}

TEST(UpdateTest, ZeroInnovationLeavesMeanAndBarelyTouchesCovariance) {
  std::mt19937_64 rng(4);
  const SensorModel sensor;
  for (int i = 0; i < 50; ++i) {
    const JointBelief b = RandomBelief(rng, 5);
    const JointBelief post = update(b, reconstruct_measurement(b, {}), sensor);
    EXPECT_EQ(post.mean, b.mean);
    EXPECT_LE((post.cov - b.cov).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(UpdateTest, MatchesTextbookOracle) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 0.3);
  SensorModel sensor;
  sensor.gamma << 0.2, 0.05, 0.05, 0.1;
  for (const UnseenNoise mode : {UnseenNoise::kMeasuredGating, UnseenNoise::kDifferentiable}) {
    for (int i = 0; i < 50; ++i) {
      const JointBelief b = RandomBelief(rng, 4);
      std::vector<LandmarkMeasurement> raw;
      std::vector<double> vis;
      for (std::size_t j = 0; j < 4; ++j) {
        const Eigen::Vector2d q = body_frame_coords(b.robot(), b.landmark(j));
        const bool seen = (i + j) % 3 != 0;
        if (seen) raw.push_back({j, q + Eigen::Vector2d(normal(rng), normal(rng))});
        vis.push_back(seen || mode == UnseenNoise::kDifferentiable
                          ? visibility_factor(q, sensor)
                          : sensor.visibility_floor);
      }
      const ReconstructedMeasurement meas = reconstruct_measurement(b, raw);
      const JointBelief got = update(b, meas, sensor, {mode});
      const JointBelief want = OracleUpdate(b, meas.z, vis, sensor);
      EXPECT_LT(pose_error(got.robot(), want.robot()).norm(), 1e-9);
      EXPECT_LT((got.mean.tail(8) - want.mean.tail(8)).norm(), 1e-9);
      EXPECT_LT((got.cov - want.cov).norm(), 1e-9 * want.cov.norm());
    }
  }
}

TEST(UpdateTest, CovarianceStaysSymmetricPsdOverLongRuns) {
  Rng rng(6);
  const SensorModel sensor;
  const ProcessNoiseModel model;
  const LandmarkSet truth = {{10.0, 2.0}, {14.0, -6.0}, {-20.0, 10.0}, {30.0, 30.0}};
  JointBelief b = make_belief(Pose2(), truth, 0.01 * Eigen::MatrixXd::Identity(11, 11));
  Pose2 x;
  for (int k = 0; k < 300; ++k) {
    const ControlInput u{1.0, 0.3};
    x = sample_step(x, u, model, rng);
    b = predict(b, u, model);
    b = update(b, reconstruct_measurement(b, sample_measurements(x, truth, sensor, rng)), sensor);
    ASSERT_EQ(b.cov, b.cov.transpose());
    ASSERT_GE(testing::min_eigenvalue(b.cov), -1e-9);
    ASSERT_GE(b.mean(2), -std::numbers::pi);
    ASSERT_LT(b.mean(2), std::numbers::pi);
  }
}

TEST(UpdateTest, MeasuringShrinksLandmarkUncertainty) {
  std::mt19937_64 rng(7);
  const SensorModel sensor;
  const JointBelief b = RandomBelief(rng, 2);
  const Eigen::Vector2d q = body_frame_coords(b.robot(), b.landmark(0));
  const JointBelief post = update(b, reconstruct_measurement(b, {{0, q}}), sensor);
  const BeliefEntropies before = entropies(b), after = entropies(post);
  EXPECT_LT(after.landmarks[0], before.landmarks[0]);
  EXPECT_LT(after.joint, before.joint);
}

TEST(UpdateTest, RejectsMismatchedMeasurement) {
  std::mt19937_64 rng(8);
  const JointBelief b = RandomBelief(rng, 2);
  ReconstructedMeasurement m = reconstruct_measurement(b, {});
  m.measured.pop_back();
  EXPECT_THROW(update(b, m, SensorModel{}), std::invalid_argument);
}

TEST(EntropiesTest, Blocks) {
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(7, 7);
  cov.block<2, 2>(5, 5) *= 4.0;
  const JointBelief b = make_belief(Pose2(), {{0.0, 0.0}, {1.0, 1.0}}, cov);
  const BeliefEntropies h = entropies(b);
  const double h1 = 0.5 * std::log(2 * std::numbers::pi * std::numbers::e);
  EXPECT_NEAR(h.robot, 3 * h1, 1e-14);
  EXPECT_NEAR(h.landmarks[0], 2 * h1, 1e-14);
  EXPECT_NEAR(h.landmarks[1], 2 * h1 + std::log(4.0), 1e-14);
  EXPECT_NEAR(h.landmark_average(), 2 * h1 + 0.5 * std::log(4.0), 1e-14);
  EXPECT_NEAR(h.joint, 7 * h1 + std::log(4.0), 1e-13);
}

}  // namespace
}  // namespace activeslam
