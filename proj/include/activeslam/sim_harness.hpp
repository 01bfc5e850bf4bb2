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

// Closed-loop active SLAM simulation: environment generation, the
// plan-execute-estimate loop for each policy, and per-step metrics.

#ifndef ACTIVESLAM_SIM_HARNESS_HPP_
#define ACTIVESLAM_SIM_HARNESS_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "activeslam/covariance_dynamics.hpp"
#include "activeslam/ekf_slam.hpp"
#include "activeslam/errors.hpp"
#include "activeslam/fov_sensing.hpp"
#include "activeslam/geometry_se2.hpp"
#include "activeslam/icr_planner.hpp"
#include "activeslam/lqr_policy.hpp"
#include "activeslam/motion_model.hpp"

namespace activeslam {

/// Deterministic 64-bit seed from a master seed and a stream path.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

struct Rect {
  Eigen::Vector2d lo = Eigen::Vector2d(0.0, 0.0);
  Eigen::Vector2d hi = Eigen::Vector2d(100.0, 70.0);

  Eigen::Vector2d center() const { return 0.5 * (lo + hi); }
  bool contains(const Eigen::Vector2d& p) const {
    return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
  }
  bool operator==(const Rect&) const = default;
};

struct Environment {
  Rect bounds;
  LandmarkSet landmarks_true;
  std::uint64_t seed = 0;
};

inline Environment generate_environment(const Rect& bounds, int n_landmarks, std::uint64_t seed) {
  if (n_landmarks < 1) throw std::invalid_argument("generate_environment: need n_l >= 1");
  if (!((bounds.hi.array() > bounds.lo.array()).all())) {
    throw std::invalid_argument("generate_environment: empty bounds");
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> ux(bounds.lo.x(), bounds.hi.x());
  std::uniform_real_distribution<double> uy(bounds.lo.y(), bounds.hi.y());
  Environment env{bounds, {}, seed};
  env.landmarks_true.reserve(static_cast<std::size_t>(n_landmarks));
  for (int j = 0; j < n_landmarks; ++j) {
    const double x = ux(rng);
    env.landmarks_true.emplace_back(x, uy(rng));
  }
  return env;
}

enum class PolicyKind { kRandom, kIcrOpenLoop, kIcrLqr };

inline std::string_view policy_name(PolicyKind p) {
  switch (p) {
    case PolicyKind::kRandom: return "random";
    case PolicyKind::kIcrOpenLoop: return "icr_open_loop";
    case PolicyKind::kIcrLqr: return "icr_lqr";
  }
  return "unknown";
}

inline std::optional<PolicyKind> parse_policy(std::string_view name) {
  for (PolicyKind p : {PolicyKind::kRandom, PolicyKind::kIcrOpenLoop, PolicyKind::kIcrLqr}) {
    if (policy_name(p) == name) return p;
  }
  return std::nullopt;
}

struct TrialConfig {
  PolicyKind policy = PolicyKind::kIcrLqr;
  int steps = 60;
  ProcessNoiseModel motion;
  SensorModel sensor;
  IcrConfig icr;  // icr.bounds doubles as the control bounds for every policy
  LqrWeights lqr;
  EkfOptions ekf;
  // Initial guess for every iCR phase: this control repeated over the
  // horizon, or the previous phase's plan when warm_start is set.
  ControlInput initial_control{3.0, 0.1};
  bool warm_start = false;
  std::optional<Pose2> start;  // defaults to the center of the bounds, heading 0
  double init_variance = 25.0;
  bool init_heading_noise = false;
  bool record_beliefs = false;
  std::uint64_t seed = 0;

  void validate() const {
    if (steps < 1 || steps % icr.horizon != 0) {
      throw std::invalid_argument("TrialConfig: steps must be a positive multiple of the horizon");
    }
    if (!(init_variance > 0.0)) throw std::invalid_argument("TrialConfig: init_variance must be > 0");
    motion.validate();
    sensor.validate();
    icr.validate();
    lqr.validate();
  }
};

inline constexpr std::array<std::string_view, 6> kMetricNames = {
    "robot_rmse_pos", "robot_rmse_theta", "robot_entropy",
    "lm_rmse",        "lm_entropy_avg",   "joint_entropy"};

struct StepMetrics {
  double robot_rmse_pos = 0.0;    // m
  double robot_rmse_theta = 0.0;  // rad, wrapped difference
  double robot_entropy = 0.0;
  double lm_rmse = 0.0;           // m, over all landmarks
  double lm_entropy_avg = 0.0;
  double joint_entropy = 0.0;

  std::array<double, 6> values() const {
    return {robot_rmse_pos, robot_rmse_theta, robot_entropy, lm_rmse, lm_entropy_avg, joint_entropy};
  }
  static StepMetrics from_values(const std::array<double, 6>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }
};

inline StepMetrics compute_metrics(const Pose2& truth, const LandmarkSet& landmarks_true,
                                   const JointBelief& belief) {
  StepMetrics m;
  const Eigen::Vector3d e = pose_error(belief.robot(), truth);
  m.robot_rmse_pos = e.head<2>().norm();
  m.robot_rmse_theta = std::abs(e.z());
  double sq = 0.0;
  for (std::size_t j = 0; j < landmarks_true.size(); ++j) {
    sq += (belief.landmark(j) - landmarks_true[j]).squaredNorm();
  }
  m.lm_rmse = std::sqrt(sq / static_cast<double>(landmarks_true.size()));
  const BeliefEntropies h = entropies(belief);
  m.robot_entropy = h.robot;
  m.lm_entropy_avg = h.landmark_average();
  m.joint_entropy = h.joint;
  return m;
}

struct TrialResult {
  PolicyKind policy = PolicyKind::kRandom;
  std::uint64_t seed = 0;
  std::vector<StepMetrics> metrics;  // steps + 1
  std::vector<Pose2> truth;          // steps + 1
  std::vector<Pose2> estimate;       // steps + 1
  std::vector<ControlInput> controls;  // steps
  std::vector<JointBelief> beliefs;    // steps + 1 when recorded
  JointBelief final_belief;
  int kink_count = 0;
};

/// Sampling streams kept apart so every policy sees the same initialization
/// and noise sequence for a given seed.
struct TrialStreams {
  Rng init;
  Rng process;
  Rng sensing;
  Rng policy;

  explicit TrialStreams(std::uint64_t seed)
      : init(derive_seed(seed, 1)),
        process(derive_seed(seed, 2)),
        sensing(derive_seed(seed, 3)),
        policy(derive_seed(seed, 4)) {}
};

inline TrialResult run_trial(const Environment& env, const TrialConfig& cfg) {
  cfg.validate();
  validate_landmarks(env.landmarks_true);
  const std::size_t n_l = env.landmarks_true.size();
  const int horizon = cfg.icr.horizon;
  TrialStreams streams(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double init_sd = std::sqrt(cfg.init_variance);

  Pose2 truth = cfg.start.value_or(Pose2(env.bounds.center(), 0.0));
  Eigen::Vector3d x0 = truth.vector();
  x0.x() += init_sd * normal(streams.init);
  x0.y() += init_sd * normal(streams.init);
  if (cfg.init_heading_noise) x0.z() += init_sd * normal(streams.init);
  LandmarkSet y0 = env.landmarks_true;
  for (auto& y : y0) {
    y.x() += init_sd * normal(streams.init);
    y.y() += init_sd * normal(streams.init);
  }
  const Eigen::Index n = 3 + 2 * static_cast<Eigen::Index>(n_l);
  JointBelief belief = make_belief(Pose2::from_vector(x0), y0,
                                   cfg.init_variance * Eigen::MatrixXd::Identity(n, n));

  TrialResult result;
  result.policy = cfg.policy;
  result.seed = cfg.seed;
  result.metrics.push_back(compute_metrics(truth, env.landmarks_true, belief));
  result.truth.push_back(truth);
  result.estimate.push_back(belief.robot());
  if (cfg.record_beliefs) result.beliefs.push_back(belief);

  const ControlBounds& bounds = cfg.icr.bounds;
  std::uniform_real_distribution<double> uv(bounds.v_min, bounds.v_max);
  std::uniform_real_distribution<double> uw(-bounds.omega_max, bounds.omega_max);
  const std::string where = "sim_harness/" + std::string(policy_name(cfg.policy));

  int global_step = 0;
  ControlVector u_init;
  try {
    for (int phase = 0; phase < cfg.steps / horizon; ++phase) {
      OpenLoopPlan plan;
      LqrPolicy lqr;
      if (cfg.policy != PolicyKind::kRandom) {
        PlanningProblem problem{belief.robot(), belief.landmark_cov_vector(), belief.landmarks(),
                                cfg.sensor, cfg.motion};
        if (!cfg.warm_start || u_init.size() == 0) {
          u_init = ControlVector(2 * horizon);
          for (int k = 0; k < horizon; ++k) u_init.segment<2>(2 * k) = cfg.initial_control.vector();
        }
        const IcrResult icr = optimize(problem, u_init, cfg.icr);
        plan = icr.plan;
        u_init = icr.controls;
        if (cfg.policy == PolicyKind::kIcrLqr) {
          const AugmentedLinearization lin = linearize(plan, problem);
          result.kink_count += lin.kink_count;
          lqr = backward_pass(lin, cost_expansion(plan, cfg.lqr), cfg.motion.W);
        }
      }

      for (int k = 0; k < horizon; ++k, ++global_step) {
        ControlInput u;
        switch (cfg.policy) {
          case PolicyKind::kRandom: {
            const double v = uv(streams.policy);
            u = {v, uw(streams.policy)};
            break;
          }
          case PolicyKind::kIcrOpenLoop:
            u = plan.u_nom[static_cast<std::size_t>(k)];
            break;
          case PolicyKind::kIcrLqr:
            u = apply_policy(static_cast<std::size_t>(k), belief.robot(),
                             belief.landmark_cov_vector(), plan, lqr, bounds);
            break;
        }
        truth = sample_step(truth, u, cfg.motion, streams.process);
        const auto raw = sample_measurements(truth, env.landmarks_true, cfg.sensor, streams.sensing);
        belief = predict(belief, u, cfg.motion);
        belief = update(belief, reconstruct_measurement(belief, raw), cfg.sensor, cfg.ekf);

        result.controls.push_back(u);
        result.metrics.push_back(compute_metrics(truth, env.landmarks_true, belief));
        result.truth.push_back(truth);
        result.estimate.push_back(belief.robot());
        if (cfg.record_beliefs) result.beliefs.push_back(belief);
      }
    }
  } catch (const NumericError& e) {
    throw e.with_context(where, global_step);
  }
  result.final_belief = belief;
  return result;
}

/// Per-step mean and population standard deviation across trials.
struct AggregateSeries {
  std::vector<StepMetrics> mean;
  std::vector<StepMetrics> stddev;
  std::size_t trials = 0;
};

inline AggregateSeries aggregate(const std::vector<TrialResult>& results) {
  if (results.empty()) throw std::invalid_argument("aggregate: no trials");
  const std::size_t len = results.front().metrics.size();
  for (const auto& r : results) {
    if (r.metrics.size() != len) {
      throw std::invalid_argument("aggregate: trials have different series lengths");
    }
  }
  const double count = static_cast<double>(results.size());
  AggregateSeries out;
  out.trials = results.size();
  for (std::size_t t = 0; t < len; ++t) {
    std::array<double, 6> mean{};
    for (const auto& r : results) {
      const auto v = r.metrics[t].values();
      for (std::size_t i = 0; i < v.size(); ++i) mean[i] += v[i] / count;
    }
    std::array<double, 6> var{};
    for (const auto& r : results) {
      const auto v = r.metrics[t].values();
      for (std::size_t i = 0; i < v.size(); ++i) var[i] += (v[i] - mean[i]) * (v[i] - mean[i]) / count;
    }
    std::array<double, 6> sd{};
    for (std::size_t i = 0; i < sd.size(); ++i) sd[i] = std::sqrt(var[i]);
    out.mean.push_back(StepMetrics::from_values(mean));
    out.stddev.push_back(StepMetrics::from_values(sd));
  }
  return out;
}

}  // namespace activeslam

#endif  // ACTIVESLAM_SIM_HARNESS_HPP_
