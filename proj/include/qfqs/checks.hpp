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
#include <random>
#include <string>
#include <vector>

#include "qfqs/ansatz.hpp"
#include "qfqs/hamiltonian.hpp"

namespace qfqs {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Problem sizes for the acceptance checks. `full()` is the reference size.
struct CheckScale {
  std::size_t tomography_circuits = 50;
  std::size_t tomography_points = 100;
  std::size_t secular_problems = 10000;
  std::size_t secular_samples = 100000;
  unsigned ising_qubits = 8;
  std::vector<unsigned> ising_layers{2, 3};
  std::size_t ising_sweeps = 100;
  std::size_t ising_seeds = 5;
  std::size_t compile_seeds = 5;
  std::size_t compile_sweeps = 30;
  std::size_t subspace_seeds = 5;
  std::size_t subspace_sweeps = 30;
  std::size_t sandwich_pairs = 100;
  std::size_t dynamics_steps = 200;
  std::size_t algebra_draws = 1000;
  std::size_t kernel_draws = 10000;

  static CheckScale full() { return {}; }
  static CheckScale quick();
};

// Generators shared with the unit tests.
Eigen::MatrixXcd haar_unitary(unsigned n_qubits, std::mt19937_64 &rng);
PauliSum random_pauli_sum(unsigned n_qubits, std::size_t terms, std::mt19937_64 &rng);
/// Nearest-neighbor ring 2-local terms plus 1-local terms, coefficients in [-1, 1].
PauliSum random_two_local(unsigned n_qubits, std::mt19937_64 &rng);
/// Chain circuit mixing single, controlled, pair, number-preserving and fixed gates.
/// `forced` picks the kind of the first two-qubit slot (0 controlled, 1 pair, 2 np, 3 cz).
Circuit random_test_circuit(unsigned n_qubits, std::mt19937_64 &rng, int forced = -1);
/// Particle-conserving 4-qubit target Hamiltonian that keeps the spin and
/// compact subspaces invariant.
Eigen::MatrixXcd particle_conserving_hamiltonian(std::mt19937_64 &rng);

CheckResult check_tomography(const CheckScale &scale);
CheckResult check_secular(const CheckScale &scale);
CheckResult check_monotone(const CheckScale &scale);
CheckResult check_two_qubit_ising(const CheckScale &scale);
CheckResult check_ising_ordering(const CheckScale &scale);
CheckResult check_compilation(const CheckScale &scale);
CheckResult check_subspace_ordering(const CheckScale &scale);
CheckResult check_hst_sandwich(const CheckScale &scale);
CheckResult check_dynamics(const CheckScale &scale);
CheckResult check_gate_algebra(const CheckScale &scale);

/// Runs the checks whose ids are listed (all when empty), in id order.
std::vector<CheckResult> run_checks(const CheckScale &scale, const std::vector<int> &ids = {});
std::string format_check(const CheckResult &result);

}  // namespace qfqs
