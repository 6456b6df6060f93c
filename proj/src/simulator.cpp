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

#include "qfqs/simulator.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>
#include <string>

#include "qfqs/hamiltonian.hpp"

namespace qfqs {

namespace {

std::size_t insert_zero_bit(std::size_t k, unsigned pos) {
  const std::size_t low = k & ((std::size_t{1} << pos) - 1);
  return ((k >> pos) << (pos + 1)) | low;
}

void check_qubits(const Statevector &state, const std::vector<unsigned> &qubits) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] >= state.n_qubits()) {
      throw std::out_of_range("qubit index " + std::to_string(qubits[i]) +
                              " out of range for " + std::to_string(state.n_qubits()) +
                              " qubits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (qubits[i] == qubits[j]) {
        throw std::invalid_argument("repeated qubit index " + std::to_string(qubits[i]));
      }
    }
  }
}

Complex pauli_term_value(const Eigen::VectorXcd &psi, const PauliString &p) {
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  Complex acc = 0.0;
  const auto dim = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    Complex t = std::conj(psi[static_cast<Eigen::Index>(i ^ x)]) * psi[static_cast<Eigen::Index>(i)];
    if (std::popcount(i & z) & 1) t = -t;
    acc += t;
  }
  static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return acc * kIPow[p.y_count() % 4];
}

}  // namespace

Statevector::Statevector(unsigned n_qubits)
    : n_qubits_(n_qubits), amps_(Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits)) {
  if (n_qubits > 30) throw std::invalid_argument("too many qubits for a dense statevector");
  amps_[0] = 1.0;
}

Statevector::Statevector(unsigned n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != (Eigen::Index{1} << n_qubits)) {
    throw std::invalid_argument("amplitude count " + std::to_string(amps_.size()) +
                                " does not match 2^" + std::to_string(n_qubits));
  }
  const double norm = amps_.norm();
  if (norm == 0.0) throw std::invalid_argument("zero statevector");
  amps_ /= norm;
}

Statevector Statevector::basis_state(unsigned n_qubits, std::uint64_t index) {
  Statevector s(n_qubits);
  if (index >= s.dim()) throw std::out_of_range("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

Complex Statevector::inner(const Statevector &other) const {
  if (other.n_qubits_ != n_qubits_) throw std::invalid_argument("qubit-count mismatch");
  return amps_.dot(other.amps_);
}

void apply(Statevector &state, const GateOp &op) {
  Complex *a = state.amplitudes().data();
  const std::size_t dim = state.dim();
  if (op.arity == 1) {
    const std::size_t stride = std::size_t{1} << op.q0;
    const Complex m00 = op.m1(0, 0), m01 = op.m1(0, 1);
    const Complex m10 = op.m1(1, 0), m11 = op.m1(1, 1);
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) {
        const Complex x0 = a[i];
        const Complex x1 = a[i + stride];
        a[i] = m00 * x0 + m01 * x1;
        a[i + stride] = m10 * x0 + m11 * x1;
      }
    }
    return;
  }
  const unsigned lo = std::min(op.q0, op.q1);
  const unsigned hi = std::max(op.q0, op.q1);
  const std::size_t b0 = std::size_t{1} << op.q0;
  const std::size_t b1 = std::size_t{1} << op.q1;
  const Eigen::Matrix4cd &m = op.m2;
  for (std::size_t k = 0; k < dim / 4; ++k) {
    const std::size_t i0 = insert_zero_bit(insert_zero_bit(k, lo), hi);
    const std::size_t idx[4] = {i0, i0 | b0, i0 | b1, i0 | b0 | b1};
    const Complex x[4] = {a[idx[0]], a[idx[1]], a[idx[2]], a[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      a[idx[r]] = m(r, 0) * x[0] + m(r, 1) * x[1] + m(r, 2) * x[2] + m(r, 3) * x[3];
    }
  }
}

bool is_unitary(const Eigen::MatrixXcd &m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).norm() < tol;
}

void apply_gate(Statevector &state, const Eigen::MatrixXcd &gate_matrix,
                const std::vector<unsigned> &qubits, bool validate) {
  if (qubits.size() != 1 && qubits.size() != 2) {
    throw std::invalid_argument("apply_gate takes one or two qubits");
  }
  const Eigen::Index want = Eigen::Index{1} << qubits.size();
  if (gate_matrix.rows() != want || gate_matrix.cols() != want) {
    throw std::invalid_argument("gate matrix size does not match qubit count");
  }
  check_qubits(state, qubits);
  if (validate && !is_unitary(gate_matrix)) throw std::invalid_argument("gate matrix is not unitary");
  GateOp op;
  op.arity = static_cast<int>(qubits.size());
  op.q0 = qubits[0];
  if (op.arity == 1) {
    op.m1 = gate_matrix;
  } else {
    op.q1 = qubits[1];
    op.m2 = gate_matrix;
  }
  apply(state, op);
}

void apply_dense(Statevector &state, const DenseUnitary &u, const std::vector<unsigned> &qubits) {
  const std::size_t k = qubits.size();
  if (k == 0 || u.rows() != (Eigen::Index{1} << k) || u.cols() != u.rows()) {
    throw std::invalid_argument("dense unitary dimension does not match 2^" + std::to_string(k));
  }
  check_qubits(state, qubits);
  if (k <= 2) {
    apply_gate(state, u, qubits);
    return;
  }
  bool natural = k == state.n_qubits();
  for (std::size_t j = 0; natural && j < k; ++j) natural = qubits[j] == j;
  if (natural) {
    state.amplitudes() = u * state.amplitudes();
    return;
  }
  std::vector<unsigned> sorted(qubits.begin(), qubits.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t local_dim = std::size_t{1} << k;
  std::vector<std::size_t> offset(local_dim, 0);
  for (std::size_t l = 0; l < local_dim; ++l) {
    for (std::size_t j = 0; j < k; ++j) {
      if ((l >> j) & 1) offset[l] |= std::size_t{1} << qubits[j];
    }
  }
  Eigen::VectorXcd gathered(static_cast<Eigen::Index>(local_dim));
  Complex *a = state.amplitudes().data();
  const std::size_t outer = state.dim() >> k;
  for (std::size_t r = 0; r < outer; ++r) {
    std::size_t base = r;
    for (unsigned pos : sorted) base = insert_zero_bit(base, pos);
    for (std::size_t l = 0; l < local_dim; ++l) gathered[static_cast<Eigen::Index>(l)] = a[base | offset[l]];
    const Eigen::VectorXcd out = u * gathered;
    for (std::size_t l = 0; l < local_dim; ++l) a[base | offset[l]] = out[static_cast<Eigen::Index>(l)];
  }
}

double expectation(const Statevector &state, const PauliSum &observable) {
  if (observable.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("observable acts on " + std::to_string(observable.n_qubits()) +
                                " qubits, state has " + std::to_string(state.n_qubits()));
  }
  double total = 0.0;
  for (const auto &term : observable.terms()) {
    total += term.coefficient * pauli_term_value(state.amplitudes(), term.string).real();
  }
  return total;
}

double expectation_dense(const Statevector &state, const Eigen::MatrixXcd &m) {
  if (m.rows() != static_cast<Eigen::Index>(state.dim()) || m.cols() != m.rows()) {
    throw std::invalid_argument("dense observable dimension mismatch");
  }
  return state.amplitudes().dot(m * state.amplitudes()).real();
}

double sampled_expectation(const Statevector &state, const PauliSum &observable,
                           std::uint64_t shots, std::uint64_t rng_seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  if (observable.n_qubits() != state.n_qubits()) throw std::invalid_argument("qubit-count mismatch");
  std::mt19937_64 rng(rng_seed);
  double total = 0.0;
  for (const auto &term : observable.terms()) {
    if (term.string.is_identity()) {
      total += term.coefficient;
      continue;
    }
    const double exact = pauli_term_value(state.amplitudes(), term.string).real();
    const double p_plus = std::clamp((1.0 + exact) / 2.0, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> draw(shots, p_plus);
    const auto plus = static_cast<double>(draw(rng));
    const auto n = static_cast<double>(shots);
    total += term.coefficient * (2.0 * plus - n) / n;
  }
  return total;
}

}  // namespace qfqs
