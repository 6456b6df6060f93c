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
#include <string>
#include <string_view>
#include <vector>

#include "qfqs/simulator.hpp"

namespace qfqs {

/// Pauli string stored as X and Z bit masks. Y sets both bits.
/// Character k of the letter form acts on qubit k.
class PauliString {
 public:
  PauliString() = default;
  PauliString(unsigned n_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  static PauliString from_letters(std::string_view letters);

  unsigned n_qubits() const { return n_qubits_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  int y_count() const;
  bool is_identity() const { return x_ == 0 && z_ == 0; }
  char letter(unsigned qubit) const;
  std::string letters() const;

  bool operator==(const PauliString &other) const = default;

 private:
  unsigned n_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

struct PauliTerm {
  double coefficient;
  PauliString string;
};

/// Real-weighted sum of Pauli strings. Terms keep first-insertion order;
/// repeated strings are merged and exact zeros dropped.
class PauliSum {
 public:
  explicit PauliSum(unsigned n_qubits);

  void add(double coefficient, const PauliString &string);
  void add(double coefficient, std::string_view letters);

  unsigned n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm> &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  double one_norm() const;

 private:
  unsigned n_qubits_;
  std::vector<PauliTerm> terms_;
};

constexpr unsigned kMaxDenseQubits = 12;
constexpr unsigned kMaxEvolutionQubits = 6;

PauliSum ising_hamiltonian(unsigned n, double coupling, double field, bool periodic);

/// Lines of `<coeff> <IXYZ string>`; `#` starts a comment.
PauliSum parse_pauli_sum(std::string_view text);
PauliSum load_pauli_sum(const std::string &path);

Eigen::MatrixXcd dense_matrix(const PauliSum &h);
double ground_energy(const PauliSum &h);

/// exp(-i H t) for a dense Hermitian H.
DenseUnitary hermitian_exponential(const Eigen::MatrixXcd &h, double t);
DenseUnitary time_evolution(const PauliSum &h, double t);

/// [prod_k exp(-i c_k P_k t/steps)]^steps in term order.
DenseUnitary trotter_product(const PauliSum &h, double t, int steps);

}  // namespace qfqs
