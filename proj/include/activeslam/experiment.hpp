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

// Runs trials x policies for an ExperimentConfig and writes per-trial metric
// CSVs, an aggregate summary and a manifest that reproduces the run.

#ifndef ACTIVESLAM_EXPERIMENT_HPP_
#define ACTIVESLAM_EXPERIMENT_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "activeslam/config.hpp"
#include "activeslam/sim_harness.hpp"

namespace activeslam {

inline constexpr const char* kMetricCsvHeader =
    "step,policy,seed,robot_rmse_pos,robot_rmse_theta,robot_entropy,lm_rmse,lm_entropy_avg,"
    "joint_entropy";

/// Seeds for trial `index`: the environment and the trial streams.
struct TrialSeeds {
  std::uint64_t environment = 0;
  std::uint64_t trial = 0;
};

inline TrialSeeds trial_seeds(std::uint64_t master, std::size_t index) {
  return {derive_seed(master, index, 0), derive_seed(master, index, 1)};
}

inline std::string metric_csv(const TrialResult& r) {
  std::ostringstream out;
  out << kMetricCsvHeader << '\n';
  for (std::size_t k = 0; k < r.metrics.size(); ++k) {
    out << k << ',' << policy_name(r.policy) << ',' << r.seed;
    for (double v : r.metrics[k].values()) out << ',' << format_double(v);
    out << '\n';
  }
  return out.str();
}

inline std::string trajectory_csv(const TrialResult& r) {
  std::ostringstream out;
  out << "step,true_x,true_y,true_theta,est_x,est_y,est_theta\n";
  for (std::size_t k = 0; k < r.truth.size(); ++k) {
    const Eigen::Vector3d t = r.truth[k].vector();
    const Eigen::Vector3d e = r.estimate[k].vector();
    out << k;
    for (int i = 0; i < 3; ++i) out << ',' << format_double(t(i));
    for (int i = 0; i < 3; ++i) out << ',' << format_double(e(i));
    out << '\n';
  }
  return out.str();
}

inline std::string summary_csv(const std::vector<PolicyKind>& policies,
                               const std::map<PolicyKind, AggregateSeries>& series) {
  std::ostringstream out;
  out << "step,policy,trials";
  for (auto name : kMetricNames) out << ',' << name << "_mean," << name << "_std";
  out << '\n';
  for (PolicyKind p : policies) {
    const AggregateSeries& a = series.at(p);
    for (std::size_t k = 0; k < a.mean.size(); ++k) {
      out << k << ',' << policy_name(p) << ',' << a.trials;
      const auto m = a.mean[k].values();
      const auto s = a.stddev[k].values();
      for (std::size_t i = 0; i < m.size(); ++i) {
        out << ',' << format_double(m[i]) << ',' << format_double(s[i]);
      }
      out << '\n';
    }
  }
  return out.str();
}

inline std::string trial_file_name(PolicyKind p, std::size_t index) {
  return std::string(policy_name(p)) + "_trial" + std::to_string(index) + ".csv";
}

struct ExperimentOptions {
  int jobs = 1;
  bool write_trajectories = false;
};

struct ExperimentOutput {
  std::filesystem::path directory;
  std::vector<std::filesystem::path> trial_files;
  std::filesystem::path summary_file;
  std::filesystem::path manifest_file;
  std::map<PolicyKind, std::vector<TrialResult>> results;
  std::map<PolicyKind, AggregateSeries> summary;
};

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

inline std::string manifest_text(const ExperimentConfig& cfg,
                                 const std::vector<TrialSeeds>& seeds) {
  YAML::Emitter out;
  out.SetBoolFormat(YAML::TrueFalseBool);
  out << YAML::BeginMap;
  out << YAML::Key << "format" << YAML::Value << kManifestFormat;
  out << YAML::Key << "config" << YAML::Value;
  emit_config(out, cfg);
  out << YAML::Key << "trials" << YAML::Value << YAML::BeginSeq;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    out << YAML::BeginMap;
    out << YAML::Key << "index" << YAML::Value << i;
    out << YAML::Key << "environment_seed" << YAML::Value << seeds[i].environment;
    out << YAML::Key << "trial_seed" << YAML::Value << seeds[i].trial;
    out << YAML::Key << "files" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (PolicyKind p : cfg.policies) out << trial_file_name(p, i);
    out << YAML::EndSeq;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

/// Runs every (trial, policy) pair. Results do not depend on `jobs`.
inline ExperimentOutput run_experiment(const ExperimentConfig& cfg,
                                       const ExperimentOptions& options = {}) {
  cfg.validate();
  if (cfg.output_dir.empty()) throw std::invalid_argument("run_experiment: output_dir is empty");
  ExperimentOutput result;
  result.directory = cfg.output_dir;
  std::filesystem::create_directories(result.directory);

  const auto n_trials = static_cast<std::size_t>(cfg.trials);
  std::vector<TrialSeeds> seeds(n_trials);
  std::vector<Environment> envs(n_trials);
  for (std::size_t i = 0; i < n_trials; ++i) {
    seeds[i] = trial_seeds(cfg.seed, i);
    envs[i] = generate_environment(cfg.harness.bounds, cfg.harness.landmarks, seeds[i].environment);
  }

  struct Job {
    std::size_t trial;
    PolicyKind policy;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < n_trials; ++i) {
    for (PolicyKind p : cfg.policies) jobs.push_back({i, p});
  }
  std::vector<TrialResult> done(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      try {
        done[j] = run_trial(envs[jobs[j].trial], cfg.trial_config(jobs[j].policy, seeds[jobs[j].trial].trial));
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  const int n_workers = std::max(1, std::min<int>(options.jobs, static_cast<int>(jobs.size())));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const auto path = result.directory / trial_file_name(jobs[j].policy, jobs[j].trial);
    write_text_file(path, metric_csv(done[j]));
    result.trial_files.push_back(path);
    if (options.write_trajectories) {
      auto traj = path;
      traj.replace_extension();
      write_text_file(traj.string() + "_trajectory.csv", trajectory_csv(done[j]));
    }
    result.results[jobs[j].policy].push_back(std::move(done[j]));
  }
  for (PolicyKind p : cfg.policies) result.summary[p] = aggregate(result.results[p]);

  result.summary_file = result.directory / "summary.csv";
  write_text_file(result.summary_file, summary_csv(cfg.policies, result.summary));
  result.manifest_file = result.directory / "manifest.yaml";
  write_text_file(result.manifest_file, manifest_text(cfg, seeds));
  return result;
}

}  // namespace activeslam

#endif  // ACTIVESLAM_EXPERIMENT_HPP_
