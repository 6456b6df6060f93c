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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfqs/ansatz.hpp"
#include "qfqs/costs.hpp"
#include "qfqs/optimizer.hpp"

namespace qfqs {

enum class ExperimentKind { kVqeIsing, kVqeFile, kFidelity, kCompile };

std::string experiment_name(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kVqeIsing;
  unsigned n_qubits = 2;
  unsigned layers = 1;
  /// Derived from the method when unset.
  std::optional<BlockType> block;
  Connectivity connectivity = Connectivity::kNearestNeighbor;
  UpdateMethod method = UpdateMethod::kCfqs;
  bool final_singles = false;
  std::size_t sweeps = 10;
  std::vector<std::uint64_t> seeds{0};
  InitOptions init;
  std::optional<std::uint64_t> shots;
  double threshold = 1e-10;

  // vqe-ising
  double coupling = 1.0;
  double field = 0.70710678118654752440;
  bool periodic = true;

  // vqe-file, and the generator of a compile target
  std::string hamiltonian_path;

  // fidelity: a state file, "dicke:K", or "random:SEED"
  std::string reference;

  // compile
  double time = 0.0625;
  bool identity_target = false;
  /// "full", "weight:K", "dicke:NORB,NA,NB" or a bitstring file.
  std::string subspace = "full";
  std::size_t switch_after = 5;

  std::string output_dir = ".";
  bool expand_circuits = false;
  unsigned jobs = 1;
};

std::vector<std::uint64_t> parse_seeds(const std::string &text);

/// Throws std::invalid_argument on an inconsistent configuration.
void validate_config(const ExperimentConfig &config);
BlockType block_for(const ExperimentConfig &config);

struct SeedResult {
  std::uint64_t seed = 0;
  Trajectory trajectory;
  Circuit circuit;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<SeedResult> runs;
  std::optional<double> ground_energy;

  double mean_final() const;
  double min_final() const;
  /// Standard error of the mean final cost over seeds; 0 for one seed.
  double standard_error() const;
};

CostSpec make_cost_spec(const ExperimentConfig &config);
Circuit make_initial_circuit(const ExperimentConfig &config, std::uint64_t seed);
SeedResult run_seed(const ExperimentConfig &config, const CostSchedule &costs, std::uint64_t seed);

/// Runs every seed (up to `jobs` in parallel). No files are written.
ExperimentResult run_experiment(const ExperimentConfig &config);

/// Writes trajectory_seed{S}.csv, circuit_seed{S}.txt and summary.json.
void write_artifacts(const ExperimentResult &result);

std::string summary_json(const ExperimentResult &result);

struct DynamicsConfig {
  std::string circuit_path;
  /// Empty selects the Ising model from the fields below.
  std::string hamiltonian_path;
  unsigned n_qubits = 0;
  double coupling = 1.0;
  double field = 0.70710678118654752440;
  bool periodic = true;
  double t_max = 1.0;
  double dt = 0.0625;
  /// Bitstring of the initial basis state, or a state file. Empty means |0...0>.
  std::string initial;
  std::string output_path = "dynamics.csv";
};

std::vector<std::pair<double, double>> run_dynamics(const DynamicsConfig &config);
void write_dynamics_csv(const std::vector<std::pair<double, double>> &series, const std::string &path);

}  // namespace qfqs
