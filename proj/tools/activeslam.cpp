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

// Command-line entry point: runs reproduction experiments or the
// finite-difference derivative checks.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "activeslam/activeslam.hpp"

namespace {

constexpr const char* kOutDirEnv = "ACTIVESLAM_OUT_DIR";
constexpr const char* kDefaultOutDir = "activeslam_out";

int run_jacobian_check() {
  bool ok = true;
  for (const auto& r : activeslam::run_jacobian_checks()) {
    std::printf("%-10s samples=%d max_rel_error=%.3e tol=%.0e %s\n", r.name.c_str(), r.samples,
                r.max_error, r.tolerance, r.passed() ? "PASS" : "FAIL");
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active SLAM experiments: iCR planning with LQR feedback"};
  std::string config_path;
  std::uint64_t seed = 0;
  std::vector<std::string> policies;
  int trials = 0;
  std::string out_dir;
  int jobs = 1;
  bool trajectories = false;
  bool jacobian_check = false;
  bool print_config = false;

  app.add_option("--config,--manifest", config_path, "YAML config or manifest from a previous run")
      ->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "master seed (overrides the config)");
  app.add_option("--policy", policies, "policy to run; repeatable")
      ->check(CLI::IsMember({"random", "icr_open_loop", "icr_lqr"}));
  app.add_option("--trials", trials, "number of seeded environments")->check(CLI::PositiveNumber);
  app.add_option("--out-dir", out_dir,
                 std::string("output directory (default: config, then $") + kOutDirEnv + ", then " +
                     kDefaultOutDir + ")");
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--trajectories", trajectories, "also write ground-truth and estimated poses");
  app.add_flag("--jacobian-check", jacobian_check, "run finite-difference checks and exit");
  app.add_flag("--print-config", print_config, "print the resolved config and exit");
  CLI11_PARSE(app, argc, argv);

  if (jacobian_check) return run_jacobian_check();

  activeslam::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = activeslam::load_config(config_path);
    if (*seed_opt) cfg.seed = seed;
    if (trials > 0) cfg.trials = trials;
    if (!policies.empty()) {
      cfg.policies.clear();
      for (const auto& p : policies) cfg.policies.push_back(*activeslam::parse_policy(p));
    }
    if (!out_dir.empty()) {
      cfg.output_dir = out_dir;
    } else if (cfg.output_dir.empty()) {
      const char* env = std::getenv(kOutDirEnv);
      cfg.output_dir = (env != nullptr && *env != '\0') ? env : kDefaultOutDir;
    }
    cfg.validate();
  } catch (const activeslam::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  if (print_config) {
    std::cout << activeslam::serialize_config(cfg);
    return 0;
  }

  try {
    const auto out = activeslam::run_experiment(cfg, {jobs, trajectories});
    std::printf("%-14s %10s %10s %10s %10s\n", "policy", "lm_rmse", "lm_H_avg", "rob_rmse",
                "joint_H");
    for (auto p : cfg.policies) {
      const auto& last = out.summary.at(p).mean.back();
      std::printf("%-14s %10.4f %10.4f %10.4f %10.4f\n", std::string(activeslam::policy_name(p)).c_str(),
                  last.lm_rmse, last.lm_entropy_avg, last.robot_rmse_pos, last.joint_entropy);
    }
    std::printf("wrote %zu trial files, %s, %s\n", out.trial_files.size(),
                out.summary_file.string().c_str(), out.manifest_file.string().c_str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
