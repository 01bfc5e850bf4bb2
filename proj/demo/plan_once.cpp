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

// Plans one horizon from a fixed belief and prints the optimized controls,
// the nominal poses and the LQR feedback gains.

#include <cstdio>
#include <iostream>

#include "activeslam/activeslam.hpp"

int main() {
  using namespace activeslam;

  PlanningProblem problem;
  problem.x0 = Pose2(50.0, 35.0, 0.0);
  problem.landmarks_hat = {{62.0, 38.0}, {70.0, 20.0}, {45.0, 55.0}, {80.0, 40.0}};
  problem.sigma0 = vecbl(CovBlocks(problem.landmarks_hat.size(), 25.0 * Eigen::Matrix2d::Identity()));

  IcrConfig cfg;
  cfg.backtracking = true;
  ControlVector u_init(2 * cfg.horizon);
  for (int k = 0; k < cfg.horizon; ++k) u_init.segment<2>(2 * k) << 3.0, 0.1;

  const IcrResult icr = optimize(problem, u_init, cfg);
  std::printf("trace cost %.4f -> %.4f over %d iterations\n", icr.cost_history.front(),
              icr.cost_history.back(), cfg.iterations);
  for (std::size_t k = 0; k < icr.plan.horizon(); ++k) {
    const Pose2& x = icr.plan.x_nom[k + 1];
    std::printf("k=%zu  u=(%.4f, %.4f)  x=(%.3f, %.3f, %.4f)  tr(Sigma)=%.4f\n", k,
                icr.plan.u_nom[k].v, icr.plan.u_nom[k].omega, x.p.x(), x.p.y(), x.theta,
                cov_trace(icr.plan.sigma_nom[k + 1]));
  }

  const LqrPolicy lqr = backward_pass(linearize(icr.plan, problem),
                                      cost_expansion(icr.plan, LqrWeights{}), problem.motion.W);
  const Eigen::IOFormat row(4, 0, ", ", "\n", "  [", "]");
  std::printf("feedback gain on the robot error at k=0:\n");
  std::cout << lqr.L[0].leftCols(3).format(row) << '\n';
  return 0;
}
