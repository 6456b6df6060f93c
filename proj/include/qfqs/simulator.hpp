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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace qfqs {

class PauliSum;

using Complex = std::complex<double>;

/// Dense unitary acting on 2^k amplitudes. Row/column index bit j belongs to
/// the j-th qubit of the list it is applied to.
using DenseUnitary = Eigen::MatrixXcd;

/// Statevector over n qubits. Qubit k is bit k of the amplitude index.
class Statevector {
 public:
  explicit Statevector(unsigned n_qubits);
  Statevector(unsigned n_qubits, Eigen::VectorXcd amplitudes);

  static Statevector basis_state(unsigned n_qubits, std::uint64_t index);

  unsigned n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }

  const Eigen::VectorXcd &amplitudes() const { return amps_; }
  Eigen::VectorXcd &amplitudes() { return amps_; }
  Complex operator[](std::size_t index) const { return amps_[static_cast<Eigen::Index>(index)]; }

  double norm_squared() const { return amps_.squaredNorm(); }

  /// <this|other>
  Complex inner(const Statevector &other) const;

 private:
  unsigned n_qubits_;
  Eigen::VectorXcd amps_;
};

/// A one- or two-qubit operation ready for application. For two-qubit ops,
/// bit 0 of the local matrix index belongs to `q0` and bit 1 to `q1`.
struct GateOp {
  int arity = 1;
  unsigned q0 = 0;
  unsigned q1 = 0;
  Eigen::Matrix2cd m1 = Eigen::Matrix2cd::Identity();
  Eigen::Matrix4cd m2 = Eigen::Matrix4cd::Identity();
};

void apply(Statevector &state, const GateOp &op);

/// Applies a 2x2 or 4x4 matrix. Bit j of the local index belongs to qubits[j].
void apply_gate(Statevector &state, const Eigen::MatrixXcd &gate_matrix,
                const std::vector<unsigned> &qubits, bool validate = false);

/// Applies a 2^k x 2^k matrix to k listed qubits.
void apply_dense(Statevector &state, const DenseUnitary &u,
                 const std::vector<unsigned> &qubits);

double expectation(const Statevector &state, const PauliSum &observable);

/// <state|m|state> for a dense Hermitian matrix on the whole register.
double expectation_dense(const Statevector &state, const Eigen::MatrixXcd &m);

/// Per-term shot emulation: each non-identity term is estimated from `shots`
/// eigenvalue samples drawn from its exact outcome distribution.
double sampled_expectation(const Statevector &state, const PauliSum &observable,
                           std::uint64_t shots, std::uint64_t rng_seed);

bool is_unitary(const Eigen::MatrixXcd &m, double tol = 1e-10);

}  // namespace qfqs
