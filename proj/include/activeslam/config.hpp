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

// Experiment configuration: defaults, validation and YAML (de)serialization.
//
// Every key is optional; missing keys keep their defaults and unknown keys
// are rejected. A manifest written by run_experiment is also accepted, in
// which case its `config` section is read.

#ifndef ACTIVESLAM_CONFIG_HPP_
#define ACTIVESLAM_CONFIG_HPP_

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <Eigen/Dense>
#include <yaml-cpp/yaml.h>

#include "activeslam/ekf_slam.hpp"
#include "activeslam/fov_sensing.hpp"
#include "activeslam/geometry_se2.hpp"
#include "activeslam/icr_planner.hpp"
#include "activeslam/lqr_policy.hpp"
#include "activeslam/motion_model.hpp"
#include "activeslam/sim_harness.hpp"

namespace activeslam {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kManifestFormat = "activeslam-manifest/1";

struct HarnessConfig {
  Rect bounds;
  int landmarks = 15;
  int steps = 60;
  std::optional<Pose2> start;
  double init_variance = 25.0;
  bool init_heading_noise = false;
};

struct ExperimentConfig {
  ProcessNoiseModel motion;
  SensorModel sensor;
  IcrConfig icr;
  ControlInput initial_control{3.0, 0.1};
  bool warm_start = false;
  LqrWeights lqr;
  EkfOptions ekf;
  HarnessConfig harness;
  std::uint64_t seed = 1;
  int trials = 5;
  std::vector<PolicyKind> policies = {PolicyKind::kRandom, PolicyKind::kIcrOpenLoop,
                                      PolicyKind::kIcrLqr};
  std::string output_dir;  // empty: chosen by the caller

  void validate() const;

  TrialConfig trial_config(PolicyKind policy, std::uint64_t trial_seed) const {
    TrialConfig t;
    t.policy = policy;
    t.steps = harness.steps;
    t.motion = motion;
    t.sensor = sensor;
    t.icr = icr;
    t.lqr = lqr;
    t.ekf = ekf;
    t.initial_control = initial_control;
    t.warm_start = warm_start;
    t.start = harness.start;
    t.init_variance = harness.init_variance;
    t.init_heading_noise = harness.init_heading_noise;
    t.seed = trial_seed;
    return t;
  }
};

namespace config_detail {

inline void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError("config: " + field + " " + what);
}

inline bool is_spd(const Eigen::MatrixXd& m) {
  return m.allFinite() && (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 &&
         m.llt().info() == Eigen::Success;
}

inline bool is_psd(const Eigen::MatrixXd& m) {
  if (!m.allFinite() || (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) return false;
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff() >= -1e-12;
}

}  // namespace config_detail

inline void ExperimentConfig::validate() const {
  using config_detail::require;
  require(std::isfinite(motion.tau) && motion.tau > 0.0, "motion.tau", "must be > 0");
  require(config_detail::is_psd(motion.W), "motion.W", "must be symmetric positive semidefinite");
  require(std::isfinite(icr.bounds.v_min) && std::isfinite(icr.bounds.v_max) &&
              icr.bounds.v_min <= icr.bounds.v_max,
          "controls.v_min", "must be finite and <= controls.v_max");
  require(std::isfinite(icr.bounds.omega_max) && icr.bounds.omega_max >= 0.0,
          "controls.omega_max", "must be >= 0");
  require(config_detail::is_spd(sensor.gamma), "sensor.gamma",
          "must be symmetric positive definite");
  require(std::isfinite(sensor.kappa) && sensor.kappa > 0.0, "sensor.kappa", "must be > 0");
  require(sensor.visibility_floor > 0.0 && sensor.visibility_floor < 1.0,
          "sensor.visibility_floor", "must lie in (0, 1)");
  require(icr.horizon >= 1, "icr.horizon", "must be >= 1");
  require(icr.iterations >= 0, "icr.iterations", "must be >= 0");
  require(icr.alpha.allFinite() && icr.alpha.minCoeff() > 0.0, "icr.alpha", "entries must be > 0");
  require(icr.max_backtracks >= 0, "icr.max_backtracks", "must be >= 0");
  require(initial_control.vector().allFinite(), "icr.initial_control", "must be finite");
  require(config_detail::is_psd(lqr.q_robot), "lqr.q_robot", "must be symmetric PSD");
  require(config_detail::is_psd(lqr.q_landmark), "lqr.q_landmark", "must be symmetric PSD");
  require(config_detail::is_spd(lqr.r), "lqr.r", "must be symmetric positive definite");
  require(harness.bounds.lo.allFinite() && harness.bounds.hi.allFinite() &&
              (harness.bounds.hi.array() > harness.bounds.lo.array()).all(),
          "harness.bounds", "must satisfy xmin < xmax and ymin < ymax");
  require(harness.landmarks >= 1, "harness.landmarks", "must be >= 1");
  require(harness.steps >= 1 && harness.steps % icr.horizon == 0, "harness.steps",
          "must be a positive multiple of icr.horizon");
  require(std::isfinite(harness.init_variance) && harness.init_variance > 0.0,
          "harness.init_variance", "must be > 0");
  require(!harness.start || harness.start->vector().allFinite(), "harness.start",
          "must be finite");
  require(trials >= 1, "trials", "must be >= 1");
  require(!policies.empty(), "policies", "must not be empty");
  std::set<PolicyKind> seen(policies.begin(), policies.end());
  require(seen.size() == policies.size(), "policies", "must not repeat a policy");
}

inline bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  auto same_start = [](const std::optional<Pose2>& x, const std::optional<Pose2>& y) {
    if (x.has_value() != y.has_value()) return false;
    return !x || x->vector() == y->vector();
  };
  return a.motion.tau == b.motion.tau && a.motion.W == b.motion.W &&
         a.sensor.gamma == b.sensor.gamma && a.sensor.kappa == b.sensor.kappa &&
         a.sensor.fov == b.sensor.fov && a.sensor.visibility_floor == b.sensor.visibility_floor &&
         a.icr.horizon == b.icr.horizon && a.icr.iterations == b.icr.iterations &&
         a.icr.alpha == b.icr.alpha && a.icr.bounds.v_min == b.icr.bounds.v_min &&
         a.icr.bounds.v_max == b.icr.bounds.v_max &&
         a.icr.bounds.omega_max == b.icr.bounds.omega_max &&
         a.icr.backtracking == b.icr.backtracking &&
         a.icr.max_backtracks == b.icr.max_backtracks &&
         a.initial_control == b.initial_control && a.warm_start == b.warm_start &&
         a.lqr.q_robot == b.lqr.q_robot && a.lqr.q_landmark == b.lqr.q_landmark &&
         a.lqr.r == b.lqr.r && a.ekf.unseen_noise == b.ekf.unseen_noise &&
         a.harness.bounds == b.harness.bounds && a.harness.landmarks == b.harness.landmarks &&
         a.harness.steps == b.harness.steps && same_start(a.harness.start, b.harness.start) &&
         a.harness.init_variance == b.harness.init_variance &&
         a.harness.init_heading_noise == b.harness.init_heading_noise && a.seed == b.seed &&
         a.trials == b.trials && a.policies == b.policies && a.output_dir == b.output_dir;
}

/// Shortest decimal text that parses back to exactly `x`.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

inline std::string_view unseen_noise_name(UnseenNoise u) {
  return u == UnseenNoise::kMeasuredGating ? "measured_gating" : "differentiable";
}

namespace config_detail {

class Loader {
 public:
  std::string where(const YAML::Node& n) const {
    const YAML::Mark m = n.Mark();
    if (m.is_null()) return "";
    return " (line " + std::to_string(m.line + 1) + ")";
  }

  void check_keys(const YAML::Node& map, const std::string& section,
                  std::initializer_list<const char*> allowed) const {
    if (!map.IsMap()) throw ConfigError("config: " + section + " must be a mapping" + where(map));
    for (const auto& kv : map) {
      const std::string key = kv.first.as<std::string>();
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) {
        const std::string path = section.empty() ? key : section + "." + key;
        throw ConfigError("config: unknown key '" + path + "'" + where(kv.first));
      }
    }
  }

  template <typename T>
  T scalar(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) throw ConfigError("config: " + field + " must be a scalar" + where(n));
    try {
      return n.as<T>();
    } catch (const YAML::BadConversion&) {
      throw ConfigError("config: " + field + " has an invalid value '" + n.Scalar() + "'" +
                        where(n));
    }
  }

  Eigen::VectorXd vector(const YAML::Node& n, const std::string& field, int size) const {
    if (!n.IsSequence() || static_cast<int>(n.size()) != size) {
      throw ConfigError("config: " + field + " must be a list of " + std::to_string(size) +
                        " numbers" + where(n));
    }
    Eigen::VectorXd v(size);
    for (int i = 0; i < size; ++i) v(i) = scalar<double>(n[i], field);
    return v;
  }

  /// Square matrix as nested rows, or a flat list taken as the diagonal.
  Eigen::MatrixXd matrix(const YAML::Node& n, const std::string& field, int size) const {
    if (!n.IsSequence() || static_cast<int>(n.size()) != size) {
      throw ConfigError("config: " + field + " must be a " + std::to_string(size) + "x" +
                        std::to_string(size) + " matrix or a diagonal list" + where(n));
    }
    if (n[0].IsScalar()) return vector(n, field, size).asDiagonal();
    Eigen::MatrixXd m(size, size);
    for (int r = 0; r < size; ++r) m.row(r) = vector(n[r], field, size).transpose();
    return m;
  }

  void load(const YAML::Node& root, ExperimentConfig& cfg) const {
    if (!root || root.IsNull()) return;
    check_keys(root, "", {"seed", "trials", "policies", "output_dir", "motion", "controls",
                          "sensor", "icr", "lqr", "ekf", "harness"});
    if (auto n = root["seed"]) cfg.seed = scalar<std::uint64_t>(n, "seed");
    if (auto n = root["trials"]) cfg.trials = scalar<int>(n, "trials");
    if (auto n = root["output_dir"]) cfg.output_dir = scalar<std::string>(n, "output_dir");
    if (auto n = root["policies"]) {
      if (!n.IsSequence()) throw ConfigError("config: policies must be a list" + where(n));
      cfg.policies.clear();
      for (const auto& p : n) {
        const std::string name = scalar<std::string>(p, "policies");
        const auto kind = parse_policy(name);
        if (!kind) throw ConfigError("config: policies has unknown policy '" + name + "'" + where(p));
        cfg.policies.push_back(*kind);
      }
    }
    if (auto s = root["motion"]) {
      check_keys(s, "motion", {"tau", "W"});
      if (auto n = s["tau"]) cfg.motion.tau = scalar<double>(n, "motion.tau");
      if (auto n = s["W"]) cfg.motion.W = matrix(n, "motion.W", 3);
    }
    if (auto s = root["controls"]) {
      check_keys(s, "controls", {"v_min", "v_max", "omega_max"});
      if (auto n = s["v_min"]) cfg.icr.bounds.v_min = scalar<double>(n, "controls.v_min");
      if (auto n = s["v_max"]) cfg.icr.bounds.v_max = scalar<double>(n, "controls.v_max");
      if (auto n = s["omega_max"]) cfg.icr.bounds.omega_max = scalar<double>(n, "controls.omega_max");
    }
    if (auto s = root["sensor"]) load_sensor(s, cfg.sensor);
    if (auto s = root["icr"]) {
      check_keys(s, "icr", {"horizon", "iterations", "alpha", "backtracking", "max_backtracks",
                            "initial_control", "warm_start"});
      if (auto n = s["horizon"]) cfg.icr.horizon = scalar<int>(n, "icr.horizon");
      if (auto n = s["iterations"]) cfg.icr.iterations = scalar<int>(n, "icr.iterations");
      if (auto n = s["alpha"]) cfg.icr.alpha = vector(n, "icr.alpha", 2);
      if (auto n = s["backtracking"]) cfg.icr.backtracking = scalar<bool>(n, "icr.backtracking");
      if (auto n = s["max_backtracks"]) cfg.icr.max_backtracks = scalar<int>(n, "icr.max_backtracks");
      if (auto n = s["initial_control"]) {
        cfg.initial_control = ControlInput::from_vector(vector(n, "icr.initial_control", 2));
      }
      if (auto n = s["warm_start"]) cfg.warm_start = scalar<bool>(n, "icr.warm_start");
    }
    if (auto s = root["lqr"]) {
      check_keys(s, "lqr", {"q_robot", "q_landmark", "r"});
      if (auto n = s["q_robot"]) cfg.lqr.q_robot = matrix(n, "lqr.q_robot", 3);
      if (auto n = s["q_landmark"]) cfg.lqr.q_landmark = matrix(n, "lqr.q_landmark", 3);
      if (auto n = s["r"]) cfg.lqr.r = matrix(n, "lqr.r", 2);
    }
    if (auto s = root["ekf"]) {
      check_keys(s, "ekf", {"unseen_noise"});
      if (auto n = s["unseen_noise"]) {
        const std::string v = scalar<std::string>(n, "ekf.unseen_noise");
        if (v == "measured_gating") {
          cfg.ekf.unseen_noise = UnseenNoise::kMeasuredGating;
        } else if (v == "differentiable") {
          cfg.ekf.unseen_noise = UnseenNoise::kDifferentiable;
        } else {
          throw ConfigError("config: ekf.unseen_noise must be measured_gating or differentiable" +
                            where(n));
        }
      }
    }
    if (auto s = root["harness"]) {
      check_keys(s, "harness", {"bounds", "landmarks", "steps", "start", "init_variance",
                                "init_heading_noise"});
      if (auto n = s["bounds"]) {
        const Eigen::VectorXd b = vector(n, "harness.bounds", 4);
        cfg.harness.bounds = Rect{b.head<2>(), b.tail<2>()};
      }
      if (auto n = s["landmarks"]) cfg.harness.landmarks = scalar<int>(n, "harness.landmarks");
      if (auto n = s["steps"]) cfg.harness.steps = scalar<int>(n, "harness.steps");
      if (auto n = s["start"]) {
        if (n.IsNull()) {
          cfg.harness.start.reset();
        } else {
          cfg.harness.start = Pose2::from_vector(vector(n, "harness.start", 3));
        }
      }
      if (auto n = s["init_variance"]) cfg.harness.init_variance = scalar<double>(n, "harness.init_variance");
      if (auto n = s["init_heading_noise"]) {
        cfg.harness.init_heading_noise = scalar<bool>(n, "harness.init_heading_noise");
      }
    }
  }

  void load_sensor(const YAML::Node& s, SensorModel& sensor) const {
    check_keys(s, "sensor", {"gamma", "kappa", "visibility_floor", "fov"});
    if (auto n = s["gamma"]) sensor.gamma = matrix(n, "sensor.gamma", 2);
    if (auto n = s["kappa"]) sensor.kappa = scalar<double>(n, "sensor.kappa");
    if (auto n = s["visibility_floor"]) {
      sensor.visibility_floor = scalar<double>(n, "sensor.visibility_floor");
    }
    if (auto f = s["fov"]) {
      check_keys(f, "sensor.fov", {"vertices", "height", "apex_angle_deg"});
      const bool has_tri = f["height"] || f["apex_angle_deg"];
      if (f["vertices"] && has_tri) {
        throw ConfigError("config: sensor.fov takes either vertices or height/apex_angle_deg" +
                          where(f));
      }
      try {
        if (auto v = f["vertices"]) {
          if (!v.IsSequence()) throw ConfigError("config: sensor.fov.vertices must be a list" + where(v));
          std::vector<Eigen::Vector2d> pts;
          for (const auto& p : v) pts.push_back(vector(p, "sensor.fov.vertices", 2));
          sensor.fov = FovPolygon(pts);
        } else if (has_tri) {
          double height = 20.0;
          double apex_deg = 120.0;
          if (auto n = f["height"]) height = scalar<double>(n, "sensor.fov.height");
          if (auto n = f["apex_angle_deg"]) apex_deg = scalar<double>(n, "sensor.fov.apex_angle_deg");
          sensor.fov = FovPolygon::triangle(height, apex_deg * std::numbers::pi / 180.0);
        }
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: sensor.fov: ") + e.what() + where(f));
      }
    }
  }
};

inline void emit_matrix(YAML::Emitter& out, const Eigen::MatrixXd& m) {
  out << YAML::Flow << YAML::BeginSeq;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << YAML::Flow << YAML::BeginSeq;
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << format_double(m(r, c));
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq;
}

inline void emit_vector(YAML::Emitter& out, const Eigen::VectorXd& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (Eigen::Index i = 0; i < v.size(); ++i) out << format_double(v(i));
  out << YAML::EndSeq;
}

}  // namespace config_detail

/// Writes the mapping body of a config into an emitter positioned inside a map.
inline void emit_config(YAML::Emitter& out, const ExperimentConfig& cfg) {
  using config_detail::emit_matrix;
  using config_detail::emit_vector;
  out << YAML::BeginMap;
  out << YAML::Key << "seed" << YAML::Value << cfg.seed;
  out << YAML::Key << "trials" << YAML::Value << cfg.trials;
  out << YAML::Key << "policies" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (PolicyKind p : cfg.policies) out << std::string(policy_name(p));
  out << YAML::EndSeq;
  out << YAML::Key << "output_dir" << YAML::Value << YAML::DoubleQuoted << cfg.output_dir;

  out << YAML::Key << "motion" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "tau" << YAML::Value << format_double(cfg.motion.tau);
  out << YAML::Key << "W" << YAML::Value;
  emit_matrix(out, cfg.motion.W);
  out << YAML::EndMap;

  out << YAML::Key << "controls" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "v_min" << YAML::Value << format_double(cfg.icr.bounds.v_min);
  out << YAML::Key << "v_max" << YAML::Value << format_double(cfg.icr.bounds.v_max);
  out << YAML::Key << "omega_max" << YAML::Value << format_double(cfg.icr.bounds.omega_max);
  out << YAML::EndMap;

  out << YAML::Key << "sensor" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "gamma" << YAML::Value;
  emit_matrix(out, cfg.sensor.gamma);
  out << YAML::Key << "kappa" << YAML::Value << format_double(cfg.sensor.kappa);
  out << YAML::Key << "visibility_floor" << YAML::Value
      << format_double(cfg.sensor.visibility_floor);
  out << YAML::Key << "fov" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "vertices" << YAML::Value << YAML::BeginSeq;
  for (const auto& v : cfg.sensor.fov.vertices()) emit_vector(out, v);
  out << YAML::EndSeq << YAML::EndMap;
  out << YAML::EndMap;

  out << YAML::Key << "icr" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "horizon" << YAML::Value << cfg.icr.horizon;
  out << YAML::Key << "iterations" << YAML::Value << cfg.icr.iterations;
  out << YAML::Key << "alpha" << YAML::Value;
  emit_vector(out, cfg.icr.alpha);
  out << YAML::Key << "backtracking" << YAML::Value << cfg.icr.backtracking;
  out << YAML::Key << "max_backtracks" << YAML::Value << cfg.icr.max_backtracks;
  out << YAML::Key << "initial_control" << YAML::Value;
  emit_vector(out, cfg.initial_control.vector());
  out << YAML::Key << "warm_start" << YAML::Value << cfg.warm_start;
  out << YAML::EndMap;

  out << YAML::Key << "lqr" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "q_robot" << YAML::Value;
  emit_matrix(out, cfg.lqr.q_robot);
  out << YAML::Key << "q_landmark" << YAML::Value;
  emit_matrix(out, cfg.lqr.q_landmark);
  out << YAML::Key << "r" << YAML::Value;
  emit_matrix(out, cfg.lqr.r);
  out << YAML::EndMap;

  out << YAML::Key << "ekf" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "unseen_noise" << YAML::Value
      << std::string(unseen_noise_name(cfg.ekf.unseen_noise));
  out << YAML::EndMap;

  out << YAML::Key << "harness" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "bounds" << YAML::Value;
  emit_vector(out, Eigen::Vector4d(cfg.harness.bounds.lo.x(), cfg.harness.bounds.lo.y(),
                                   cfg.harness.bounds.hi.x(), cfg.harness.bounds.hi.y()));
  out << YAML::Key << "landmarks" << YAML::Value << cfg.harness.landmarks;
  out << YAML::Key << "steps" << YAML::Value << cfg.harness.steps;
  out << YAML::Key << "start" << YAML::Value;
  if (cfg.harness.start) {
    emit_vector(out, cfg.harness.start->vector());
  } else {
    out << YAML::Null;
  }
  out << YAML::Key << "init_variance" << YAML::Value << format_double(cfg.harness.init_variance);
  out << YAML::Key << "init_heading_noise" << YAML::Value << cfg.harness.init_heading_noise;
  out << YAML::EndMap;
  out << YAML::EndMap;
}

inline std::string serialize_config(const ExperimentConfig& cfg) {
  YAML::Emitter out;
  out.SetBoolFormat(YAML::TrueFalseBool);
  emit_config(out, cfg);
  return std::string(out.c_str()) + "\n";
}

/// Parses config text; `source` names the input in error messages.
inline ExperimentConfig parse_config(const std::string& text, const std::string& source = "config") {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ": parse error at line " + std::to_string(e.mark.line + 1) + ": " +
                      e.msg);
  }
  if (root.IsMap() && root["format"]) {
    const std::string fmt = root["format"].as<std::string>();
    if (fmt != kManifestFormat) throw ConfigError(source + ": unsupported manifest format '" + fmt + "'");
    root = root["config"];
    if (!root) throw ConfigError(source + ": manifest has no config section");
  }
  if (root && !root.IsNull() && !root.IsMap()) {
    throw ConfigError(source + ": top level must be a mapping");
  }
  ExperimentConfig cfg;
  try {
    config_detail::Loader{}.load(root, cfg);
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

inline void save_config(const ExperimentConfig& cfg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << serialize_config(cfg);
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace activeslam

#endif  // ACTIVESLAM_CONFIG_HPP_
