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

#include "activeslam/sim_harness.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

namespace activeslam {
namespace {

TrialConfig ShortTrial(PolicyKind policy, std::uint64_t seed) {
  TrialConfig cfg;
  cfg.policy = policy;
  cfg.steps = 10;
  cfg.seed = seed;
  return cfg;
}

TEST(DeriveSeedTest, DeterministicAndDistinct) {
  EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 50; ++a) {
    for (std::uint64_t b = 0; b < 4; ++b) seen.insert(derive_seed(7, a, b));
  }
  EXPECT_EQ(seen.size(), 200u);
  EXPECT_NE(derive_seed(1, 0, 0), derive_seed(2, 0, 0));
  EXPECT_NE(derive_seed(1ULL << 32, 0, 0), derive_seed(0, 0, 0));
}

TEST(EnvironmentTest, LandmarksInsideBoundsAndReproducible) {
  const Rect r;
  const Environment a = generate_environment(r, 15, 99);
  const Environment b = generate_environment(r, 15, 99);
  ASSERT_EQ(a.landmarks_true.size(), 15u);
  for (std::size_t j = 0; j < 15; ++j) {
    EXPECT_TRUE(r.contains(a.landmarks_true[j]));
    EXPECT_EQ(a.landmarks_true[j], b.landmarks_true[j]);
  }
  EXPECT_NE(generate_environment(r, 15, 100).landmarks_true[0], a.landmarks_true[0]);
  EXPECT_THROW(generate_environment(r, 0, 1), std::invalid_argument);
  EXPECT_THROW(generate_environment(Rect{{0.0, 0.0}, {0.0, 1.0}}, 3, 1), std::invalid_argument);
}

TEST(EnvironmentTest, UniformMoments) {
  const Rect r;
  const Environment env = generate_environment(r, 20000, 5);
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& y : env.landmarks_true) mean += y / 20000.0;
  // uniform means 50 and 35, standard errors 100 / sqrt(12 n) and 70 / sqrt(12 n)
  EXPECT_NEAR(mean.x(), 50.0, 5 * 100.0 / std::sqrt(12.0 * 20000));
  EXPECT_NEAR(mean.y(), 35.0, 5 * 70.0 / std::sqrt(12.0 * 20000));
}

TEST(PolicyNameTest, RoundTrip) {
  for (PolicyKind p : {PolicyKind::kRandom, PolicyKind::kIcrOpenLoop, PolicyKind::kIcrLqr}) {
    EXPECT_EQ(parse_policy(policy_name(p)), p);
  }
  EXPECT_FALSE(parse_policy("greedy").has_value());
}

TEST(TrialConfigTest, Validate) {
  TrialConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.steps = 12;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.steps = 10;
  cfg.init_variance = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(ComputeMetricsTest, KnownErrors) {
  const LandmarkSet truth = {{0.0, 0.0}, {10.0, 0.0}};
  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(7, 7);
  const JointBelief b = make_belief(Pose2(3.0, 4.0, 0.5), {{1.0, 0.0}, {10.0, 3.0}}, cov);
  const StepMetrics m = compute_metrics(Pose2(0.0, 0.0, 0.2), truth, b);
  EXPECT_NEAR(m.robot_rmse_pos, 5.0, 1e-15);
  EXPECT_NEAR(m.robot_rmse_theta, 0.3, 1e-15);
  EXPECT_NEAR(m.lm_rmse, std::sqrt((1.0 + 9.0) / 2.0), 1e-15);
  const double h1 = 0.5 * std::log(2 * std::numbers::pi * std::numbers::e);
  EXPECT_NEAR(m.robot_entropy, 3 * h1, 1e-14);
  EXPECT_NEAR(m.lm_entropy_avg, 2 * h1, 1e-14);
  EXPECT_NEAR(m.joint_entropy, 7 * h1, 1e-13);
  EXPECT_EQ(StepMetrics::from_values(m.values()).values(), m.values());
}

TEST(ComputeMetricsTest, HeadingErrorWraps) {
  const JointBelief b =
      make_belief(Pose2(0.0, 0.0, 3.1), {{0.0, 0.0}}, Eigen::MatrixXd::Identity(5, 5));
  const StepMetrics m = compute_metrics(Pose2(0.0, 0.0, -3.1), {{0.0, 0.0}}, b);
  EXPECT_NEAR(m.robot_rmse_theta, 2 * std::numbers::pi - 6.2, 1e-12);
}

TEST(RunTrialTest, SeriesLengthsAndBounds) {
  const Environment env = generate_environment(Rect{}, 8, 3);
  for (PolicyKind p : {PolicyKind::kRandom, PolicyKind::kIcrOpenLoop, PolicyKind::kIcrLqr}) {
    TrialConfig cfg = ShortTrial(p, 11);
    cfg.record_beliefs = true;
    const TrialResult r = run_trial(env, cfg);
    EXPECT_EQ(r.metrics.size(), 11u);
    EXPECT_EQ(r.truth.size(), 11u);
    EXPECT_EQ(r.estimate.size(), 11u);
    EXPECT_EQ(r.controls.size(), 10u);
    EXPECT_EQ(r.beliefs.size(), 11u);
    EXPECT_EQ(r.final_belief.mean, r.beliefs.back().mean);
    for (const auto& u : r.controls) EXPECT_EQ(cfg.icr.bounds.clamp(u), u);
    for (const auto& b : r.beliefs) {
      EXPECT_EQ(b.cov, b.cov.transpose());
      EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(b.cov).eigenvalues().minCoeff(),
                -1e-9);
    }
  }
}

TEST(RunTrialTest, DeterministicForFixedSeed) {
  const Environment env = generate_environment(Rect{}, 6, 4);
  for (PolicyKind p : {PolicyKind::kRandom, PolicyKind::kIcrLqr}) {
    const TrialResult a = run_trial(env, ShortTrial(p, 21));
    const TrialResult b = run_trial(env, ShortTrial(p, 21));
    for (std::size_t k = 0; k < a.metrics.size(); ++k) {
      EXPECT_EQ(a.metrics[k].values(), b.metrics[k].values());
    }
    const TrialResult c = run_trial(env, ShortTrial(p, 22));
    EXPECT_NE(a.metrics.back().values(), c.metrics.back().values());
  }
}

TEST(RunTrialTest, PoliciesShareInitialization) {
  const Environment env = generate_environment(Rect{}, 6, 5);
  const TrialResult a = run_trial(env, ShortTrial(PolicyKind::kRandom, 31));
  const TrialResult b = run_trial(env, ShortTrial(PolicyKind::kIcrOpenLoop, 31));
  EXPECT_EQ(a.metrics[0].values(), b.metrics[0].values());
  EXPECT_EQ(a.estimate[0].vector(), b.estimate[0].vector());
}

TEST(RunTrialTest, StartsAtCenterWithZeroHeading) {
  const Environment env = generate_environment(Rect{}, 4, 6);
  const TrialResult r = run_trial(env, ShortTrial(PolicyKind::kRandom, 1));
  EXPECT_EQ(r.truth[0].vector(), Eigen::Vector3d(50.0, 35.0, 0.0));
  // heading is not perturbed by default
  EXPECT_EQ(r.estimate[0].theta, 0.0);
  TrialConfig cfg = ShortTrial(PolicyKind::kRandom, 1);
  cfg.init_heading_noise = true;
  EXPECT_NE(run_trial(env, cfg).estimate[0].theta, 0.0);
  cfg.start = Pose2(10.0, 10.0, 1.0);
  EXPECT_EQ(run_trial(env, cfg).truth[0].vector(), Eigen::Vector3d(10.0, 10.0, 1.0));
}

TEST(RunTrialTest, OpenLoopFollowsPlanWithinPhase) {
  const Environment env = generate_environment(Rect{}, 6, 7);
  TrialConfig cfg = ShortTrial(PolicyKind::kIcrOpenLoop, 41);
  cfg.icr.iterations = 0;
  cfg.initial_control = {1.5, 0.2};
  const TrialResult r = run_trial(env, cfg);
  for (const auto& u : r.controls) EXPECT_EQ(u, (ControlInput{1.5, 0.2}));
}

TEST(NumericErrorTest, ContextFormat) {
  const NumericError inner("ekf_slam", "innovation covariance is not invertible");
  EXPECT_STREQ(inner.what(), "[ekf_slam]: innovation covariance is not invertible");
  const NumericError outer = inner.with_context("sim_harness/icr_lqr", 17);
  EXPECT_EQ(outer.module(), "sim_harness/icr_lqr/ekf_slam");
  EXPECT_EQ(outer.step(), 17);
  EXPECT_STREQ(outer.what(),
               "[sim_harness/icr_lqr/ekf_slam] step 17: innovation covariance is not invertible");
}

TEST(AggregateTest, MeanAndPopulationStd) {
  TrialResult a, b;
  StepMetrics m1, m2;
  m1.lm_rmse = 1.0;
  m2.lm_rmse = 3.0;
  a.metrics = {m1, m1};
  b.metrics = {m2, m1};
  const AggregateSeries s = aggregate({a, b});
  EXPECT_EQ(s.trials, 2u);
  EXPECT_DOUBLE_EQ(s.mean[0].lm_rmse, 2.0);
  EXPECT_DOUBLE_EQ(s.stddev[0].lm_rmse, 1.0);
  EXPECT_DOUBLE_EQ(s.stddev[1].lm_rmse, 0.0);
  EXPECT_THROW(aggregate({}), std::invalid_argument);
  b.metrics.pop_back();
  EXPECT_THROW(aggregate({a, b}), std::invalid_argument);
}

}  // namespace
}  // namespace activeslam
