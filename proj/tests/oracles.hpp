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

// Independent reference constructions for the unit tests.
#pragma once

#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;

inline Eigen::Matrix2cd pauli(char letter) {
  Eigen::Matrix2cd m;
  switch (letter) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m.setIdentity(); break;
  }
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

// Character k acts on qubit k, the least significant bit.
inline Eigen::MatrixXcd pauli_string(const std::string &letters) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : letters) m = kron(pauli(c), m);
  return m;
}

// Full-register matrix of `local` acting on `qubits` (bit j of the local index is qubits[j]).
inline Eigen::MatrixXcd embed(const Eigen::MatrixXcd &local, const std::vector<unsigned> &qubits, unsigned n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index lc = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) lc |= ((col >> qubits[j]) & 1) << j;
    for (Eigen::Index lr = 0; lr < local.rows(); ++lr) {
      Eigen::Index row = col;
      for (std::size_t j = 0; j < qubits.size(); ++j) {
        row &= ~(Eigen::Index{1} << qubits[j]);
        row |= ((lr >> j) & 1) << qubits[j];
      }
      out(row, col) += local(lr, lc);
    }
  }
  return out;
}

inline Eigen::VectorXcd random_vector(Eigen::Index dim, std::mt19937_64 &rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = Complex(normal(rng), normal(rng));
  return v.normalized();
}

// exp(-i t H) by Taylor series with scaling and squaring.
inline Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd &h, double t) {
  const Eigen::MatrixXcd a = Complex(0, -t) * h;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  const Eigen::MatrixXcd b = a / std::pow(2.0, squarings);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(h.rows(), h.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

inline double max_abs(const Eigen::MatrixXcd &m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
