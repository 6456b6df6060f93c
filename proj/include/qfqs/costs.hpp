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
#include <utility>
#include <variant>
#include <vector>

#include "qfqs/ansatz.hpp"
#include "qfqs/hamiltonian.hpp"
#include "qfqs/objective.hpp"
#include "qfqs/simulator.hpp"

namespace qfqs {

/// Computational basis strings of an input subspace. Character k of a
/// bitstring is qubit k.
class SubspaceBasis {
 public:
  SubspaceBasis(unsigned n_qubits, std::vector<std::string> bitstrings);
  static SubspaceBasis full(unsigned n_qubits);
  static SubspaceBasis hamming_weight(unsigned n_qubits, unsigned weight);

  unsigned n_qubits() const { return n_; }
  std::size_t size() const { return bitstrings_.size(); }
  const std::vector<std::string> &bitstrings() const { return bitstrings_; }
  const std::vector<std::uint64_t> &indices() const { return indices_; }

 private:
  unsigned n_;
  std::vector<std::string> bitstrings_;
  std::vector<std::uint64_t> indices_;
};

std::uint64_t bitstring_index(const std::string &bits);
std::string index_bitstring(std::uint64_t index, unsigned n_qubits);

SubspaceBasis parse_subspace_basis(const std::string &text);
SubspaceBasis load_subspace_basis(const std::string &path);

/// Product of Hamming-weight sectors: the first n_orbitals_per_spin qubits
/// hold n_alpha ones, the next n_orbitals_per_spin hold n_beta.
SubspaceBasis dicke_basis(unsigned n_orbitals_per_spin, unsigned n_alpha, unsigned n_beta);
Statevector dicke_state(unsigned n, unsigned k);

/// Lines of `index re im`.
Statevector parse_reference_state(const std::string &text, unsigned n_qubits);
Statevector load_reference_state(const std::string &path, unsigned n_qubits);
Statevector random_state(unsigned n_qubits, std::uint64_t seed);

enum class CompileMode { kGlobal, kLocal };

struct VqeSpec {
  PauliSum hamiltonian;
  std::optional<std::uint64_t> shots;
};

struct FidelitySpec {
  Statevector reference;
  std::optional<std::uint64_t> shots;
};

struct CompileSpec {
  DenseUnitary target;
  SubspaceBasis basis;
  /// Sweeps run on the local cost before switching to the global one.
  std::size_t switch_after = 0;
};

using CostSpec = std::variant<VqeSpec, FidelitySpec, CompileSpec>;

Objective vqe_objective(const PauliSum &h, std::optional<std::uint64_t> shots = std::nullopt);
Objective fidelity_objective(const Statevector &reference, std::optional<std::uint64_t> shots = std::nullopt);

/// (1/sqrt|W|) sum_w |w>_A |w>_B on 2n qubits, A = 0..n-1, B = n..2n-1.
Statevector doubled_input_state(const SubspaceBasis &basis);
Objective compile_objective(const DenseUnitary &target, CompileMode mode, const SubspaceBasis &basis);

CostSchedule make_cost_schedule(const CostSpec &spec);

double vqe_cost(const Circuit &circuit, const PauliSum &h);
double fidelity_cost(const Circuit &circuit, const Statevector &reference);
double hst_global_cost(const Circuit &v, const DenseUnitary &target, const SubspaceBasis &basis);
double hst_global_cost(const Circuit &v, const DenseUnitary &target);
double lhst_local_cost(const Circuit &v, const DenseUnitary &target, const SubspaceBasis &basis);
double lhst_local_cost(const Circuit &v, const DenseUnitary &target);
/// 1 - |tr(V^dagger U) / d|^2 computed from the matrices.
double hst_trace_formula(const DenseUnitary &v, const DenseUnitary &target);
/// Global cost after `completed_sweeps`, local before the switch.
double compile_cost(const Circuit &circuit, const CompileSpec &spec, std::size_t completed_sweeps);

/// (t, 1 - F(t)) for t = 0, dt, ..., t_max with F(t) = |<psi|(V^dagger)^k e^{-iHt}|psi>|^2.
std::vector<std::pair<double, double>> dynamics_infidelity(const Circuit &v, const PauliSum &h, double t_max,
                                                           double dt, const Statevector &psi);
std::vector<std::pair<double, double>> dynamics_infidelity(const DenseUnitary &step, const PauliSum &h,
                                                           double t_max, double dt, const Statevector &psi);

}  // namespace qfqs
