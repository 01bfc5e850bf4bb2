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

// Umbrella header.

#ifndef ACTIVESLAM_ACTIVESLAM_HPP_
#define ACTIVESLAM_ACTIVESLAM_HPP_

#include "activeslam/config.hpp"
#include "activeslam/covariance_dynamics.hpp"
#include "activeslam/ekf_slam.hpp"
#include "activeslam/errors.hpp"
#include "activeslam/experiment.hpp"
#include "activeslam/fov_sensing.hpp"
#include "activeslam/geometry_se2.hpp"
#include "activeslam/icr_planner.hpp"
#include "activeslam/jacobian_check.hpp"
#include "activeslam/lqr_policy.hpp"
#include "activeslam/motion_model.hpp"
#include "activeslam/sim_harness.hpp"

#endif  // ACTIVESLAM_ACTIVESLAM_HPP_
