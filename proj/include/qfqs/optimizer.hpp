// Copyright 2026 The qfqs Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfqs/ansatz.hpp"
#include "qfqs/landscape.hpp"
#include "qfqs/objective.hpp"

namespace qfqs {

/// Stationary point of q^T J q + 2 a^T q + b on |q| = 1 with multiplier lambda.
struct SecularCandidate {
  double lambda = 0.0;
  Eigen::Vector4d q = Eigen::Vector4d::Zero();
  double value = 0.0;
  bool hard_case = false;
  /// |f(lambda)| for secular roots, 0 for hard-case points.
  double residual = 0.0;
};

struct SecularSolution {
  double lambda = 0.0;
  Quaternion q_star;
  double value = 0.0;
  bool hard_case = false;
  double residual = 0.0;
  std::size_t root_count = 0;
};

std::vector<SecularCandidate> secular_candidates(const Eigen::Matrix4d &J, const Eigen::Vector4d &a, double b);

/// Global minimizer of q^T J q + 2 a^T q + b over unit quaternions.
SecularSolution minimize_quadratic_sphere(const Eigen::Matrix4d &J, const Eigen::Vector4d &a, double b);

enum class UpdateMethod { kFqs, kCfqs, kScf };

std::string method_name(UpdateMethod method);
UpdateMethod parse_method(const std::string &text);
UpdateMethod method_for(UnitKind kind);

struct UpdateResult {
  double previous = 0.0;
  double predicted = 0.0;
  std::size_t evaluations = 0;
  std::size_t inner_solves = 0;
};

/// Tomography plus analytic minimization of one single or controlled unit.
/// `stream` seeds the shot noise of the unit's evaluations.
UpdateResult update_single_gate(Circuit &circuit, const UpdateUnit &unit, const Objective &objective,
                                UpdateMethod method, std::uint64_t stream = 0);

/// Pair tomography followed by alternating solves on the fitted model.
UpdateResult scf_update_pair(Circuit &circuit, const UpdateUnit &unit, const Objective &objective,
                             double threshold, std::uint64_t stream = 0);

struct TrajectoryRecord {
  std::size_t sweep = 0;
  long unit = -1;
  double cost = 0.0;
  std::size_t evaluations = 0;
};

/// Rows with unit = -1 are baseline evaluations after `sweep` completed
/// sweeps: the initial cost and, for compilation, the first value of the
/// switched cost.
struct Trajectory {
  std::vector<TrajectoryRecord> records;
  long switch_sweep = -1;
  std::size_t fqs_updates = 0;
  std::size_t cfqs_updates = 0;
  std::size_t scf_updates = 0;
  /// Largest cost increase seen between consecutive update records.
  double max_increase = 0.0;

  std::size_t evaluations() const { return records.empty() ? 0 : records.back().evaluations; }
  double final_cost() const { return records.back().cost; }
};

struct SweepOptions {
  double threshold = 1e-10;
  std::uint64_t seed = 0;
};

Trajectory run_sweeps(Circuit &circuit, const CostSchedule &costs, std::size_t sweeps,
                      const SweepOptions &options = {});
Trajectory run_sweeps(Circuit &circuit, const Objective &objective, std::size_t sweeps,
                      const SweepOptions &options = {});

}  // namespace qfqs
