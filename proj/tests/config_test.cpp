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

#include "activeslam/config.hpp"

#include <filesystem>
#include <string>

#include <gtest/gtest.h>

namespace activeslam {
namespace {

std::string ErrorOf(const std::string& text) {
  try {
    parse_config(text, "test.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(ConfigTest, EmptyDocumentGivesDefaults) {
  const ExperimentConfig cfg = parse_config("");
  EXPECT_TRUE(cfg == ExperimentConfig{});
  EXPECT_EQ(cfg.seed, 1u);
  EXPECT_EQ(cfg.trials, 5);
  EXPECT_EQ(cfg.policies.size(), 3u);
  EXPECT_EQ(cfg.harness.landmarks, 15);
  EXPECT_EQ(cfg.icr.horizon, 5);
  EXPECT_EQ(cfg.motion.tau, 1.0);
}

TEST(ConfigTest, ParsesEverySection) {
  const ExperimentConfig cfg = parse_config(R"(
seed: 42
trials: 3
policies: [icr_lqr, random]
output_dir: out
motion:
  tau: 0.5
  W: [0.2, 0.2, 0.02]
controls: {v_min: 0.5, v_max: 2.0, omega_max: 0.7}
sensor:
  gamma: [[0.2, 0.01], [0.01, 0.1]]
  kappa: 5
  visibility_floor: 1.0e-9
  fov: {height: 30, apex_angle_deg: 90}
icr:
  horizon: 4
  iterations: 7
  alpha: [0.01, 0.001]
  backtracking: true
  max_backtracks: 12
  initial_control: [1.0, 0.0]
  warm_start: true
lqr:
  q_robot: [1, 2, 3]
  q_landmark: [1, 1, 1]
  r: [[2, 1], [1, 2]]
ekf: {unseen_noise: differentiable}
harness:
  bounds: [-10, -5, 40, 30]
  landmarks: 9
  steps: 20
  start: [1, 2, 0.5]
  init_variance: 4
  init_heading_noise: true
)");
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.trials, 3);
  EXPECT_EQ(cfg.policies, (std::vector<PolicyKind>{PolicyKind::kIcrLqr, PolicyKind::kRandom}));
  EXPECT_EQ(cfg.output_dir, "out");
  EXPECT_EQ(cfg.motion.tau, 0.5);
  EXPECT_EQ(cfg.motion.W(2, 2), 0.02);
  EXPECT_EQ(cfg.icr.bounds, (ControlBounds{0.5, 2.0, 0.7}));
  EXPECT_EQ(cfg.sensor.gamma(0, 1), 0.01);
  EXPECT_EQ(cfg.sensor.kappa, 5.0);
  EXPECT_EQ(cfg.sensor.visibility_floor, 1e-9);
  EXPECT_NEAR(cfg.sensor.fov.vertices()[2].y(), 30.0, 1e-12);
  EXPECT_EQ(cfg.icr.horizon, 4);
  EXPECT_EQ(cfg.icr.iterations, 7);
  EXPECT_EQ(cfg.icr.alpha, Eigen::Vector2d(0.01, 0.001));
  EXPECT_TRUE(cfg.icr.backtracking);
  EXPECT_EQ(cfg.icr.max_backtracks, 12);
  EXPECT_EQ(cfg.initial_control, (ControlInput{1.0, 0.0}));
  EXPECT_TRUE(cfg.warm_start);
  EXPECT_EQ(cfg.lqr.q_robot(1, 1), 2.0);
  EXPECT_EQ(cfg.lqr.r(0, 1), 1.0);
  EXPECT_EQ(cfg.ekf.unseen_noise, UnseenNoise::kDifferentiable);
  EXPECT_EQ(cfg.harness.bounds, (Rect{{-10.0, -5.0}, {40.0, 30.0}}));
  EXPECT_EQ(cfg.harness.landmarks, 9);
  EXPECT_EQ(cfg.harness.steps, 20);
  ASSERT_TRUE(cfg.harness.start.has_value());
  EXPECT_EQ(cfg.harness.start->vector(), Eigen::Vector3d(1.0, 2.0, 0.5));
  EXPECT_EQ(cfg.harness.init_variance, 4.0);
  EXPECT_TRUE(cfg.harness.init_heading_noise);

  const TrialConfig t = cfg.trial_config(PolicyKind::kIcrLqr, 77);
  EXPECT_EQ(t.seed, 77u);
  EXPECT_EQ(t.steps, 20);
  EXPECT_EQ(t.icr.horizon, 4);
  EXPECT_NO_THROW(t.validate());
}

TEST(ConfigTest, PolygonVertices) {
  const ExperimentConfig cfg =
      parse_config("sensor:\n  fov:\n    vertices: [[0, 0], [10, -5], [10, 5]]\n");
  ASSERT_EQ(cfg.sensor.fov.vertices().size(), 3u);
  EXPECT_EQ(cfg.sensor.fov.vertices()[1], Eigen::Vector2d(10.0, -5.0));
}

TEST(ConfigTest, RoundTripIsExact) {
  ExperimentConfig cfg;
  cfg.seed = 123456789012345ULL;
  cfg.motion.tau = 0.1;
  cfg.sensor.kappa = 1.0 / 3.0;
  cfg.sensor.fov = FovPolygon({{0.0, 0.0}, {7.5, -2.25}, {9.0, 0.1}, {7.5, 2.25}});
  cfg.icr.alpha = Eigen::Vector2d(0.1 + 0.2, 1e-7);
  cfg.harness.start = Pose2(1.0 / 7.0, -2.0, 0.3);
  cfg.policies = {PolicyKind::kIcrOpenLoop};
  cfg.ekf.unseen_noise = UnseenNoise::kDifferentiable;
  cfg.output_dir = "somewhere/else";
  const std::string text = serialize_config(cfg);
  const ExperimentConfig back = parse_config(text);
  EXPECT_TRUE(back == cfg) << text;
  EXPECT_EQ(serialize_config(back), text);
}

TEST(ConfigTest, FormatDoubleIsShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(25.0), "25");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(ConfigTest, ReadsManifestConfigSection) {
  ExperimentConfig cfg;
  cfg.trials = 2;
  const std::string manifest = std::string("format: ") + kManifestFormat + "\nconfig:\n" +
                               "  trials: 2\ntrials: []\n";
  EXPECT_TRUE(parse_config(manifest) == cfg);
  EXPECT_NE(ErrorOf("format: other/1\nconfig: {}\n").find("unsupported manifest format"),
            std::string::npos);
}

TEST(ConfigTest, ErrorMessagesNameTheField) {
  EXPECT_EQ(ErrorOf("sensor:\n  kapa: 3\n"), "test.yaml: config: unknown key 'sensor.kapa' (line 2)");
  EXPECT_EQ(ErrorOf("sensor: {kappa: -1}\n"), "test.yaml: config: sensor.kappa must be > 0");
  EXPECT_EQ(ErrorOf("trials: many\n"),
            "test.yaml: config: trials has an invalid value 'many' (line 1)");
  EXPECT_NE(ErrorOf("harness: {steps: 12}\n").find("harness.steps"), std::string::npos);
  EXPECT_NE(ErrorOf("policies: [random, random]\n").find("must not repeat"), std::string::npos);
  EXPECT_NE(ErrorOf("policies: [greedy]\n").find("unknown policy 'greedy'"), std::string::npos);
  EXPECT_NE(ErrorOf("motion: {W: [1, 2]}\n").find("motion.W"), std::string::npos);
  EXPECT_NE(ErrorOf("lqr: {r: [[1, 2], [2, 1]]}\n").find("lqr.r"), std::string::npos);
  EXPECT_NE(ErrorOf("ekf: {unseen_noise: maybe}\n").find("ekf.unseen_noise"), std::string::npos);
  EXPECT_NE(ErrorOf("sensor:\n  fov:\n    vertices: [[0, 0], [1, 0], [2, 0]]\n").find("sensor.fov"),
            std::string::npos);
  EXPECT_NE(ErrorOf("sensor: {fov: {height: 1, vertices: []}}\n").find("either"), std::string::npos);
  EXPECT_NE(ErrorOf("seed: [1\n").find("parse error at line"), std::string::npos);
  EXPECT_NE(ErrorOf("- 1\n- 2\n").find("top level must be a mapping"), std::string::npos);
}

TEST(ConfigTest, SaveAndLoadFile) {
  const auto dir = std::filesystem::temp_directory_path() / "activeslam_config_test";
  std::filesystem::create_directories(dir);
  ExperimentConfig cfg;
  cfg.seed = 9;
  save_config(cfg, (dir / "c.yaml").string());
  EXPECT_TRUE(load_config((dir / "c.yaml").string()) == cfg);
  EXPECT_THROW(load_config((dir / "missing.yaml").string()), ConfigError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace activeslam
