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

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qfqs/hamiltonian.hpp"
#include "qfqs/simulator.hpp"

using namespace qfqs;

namespace {

Eigen::Matrix2cd x_gate() { return oracle::pauli('X'); }

}  // namespace

TEST(Simulator, StartsInAllZeros) {
  Statevector s(3);
  EXPECT_EQ(s.dim(), 8u);
  EXPECT_EQ(s[0], Complex(1.0));
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
}

TEST(Simulator, IdentityLeavesStateUnchanged) {
  std::mt19937_64 rng(1);
  Statevector s(3, oracle::random_vector(8, rng));
  const Eigen::VectorXcd before = s.amplitudes();
  apply_gate(s, Eigen::Matrix2cd::Identity(), {1});
  apply_gate(s, Eigen::Matrix4cd::Identity(), {2, 0});
  EXPECT_LT((s.amplitudes() - before).norm(), 1e-15);
}

TEST(Simulator, XOnQubitZeroIsLeastSignificant) {
  Statevector s(2);
  apply_gate(s, x_gate(), {0});
  EXPECT_EQ(s[1], Complex(1.0));
  EXPECT_EQ(s[0], Complex(0.0));
}

TEST(Simulator, CzFlipsSignOfOneOne) {
  Statevector s = Statevector::basis_state(2, 3);
  apply_gate(s, Eigen::Vector4cd(1, 1, 1, -1).asDiagonal().toDenseMatrix(), {0, 1});
  EXPECT_EQ(s[3], Complex(-1.0));
}

TEST(Simulator, GateMatchesKroneckerOracle) {
  std::mt19937_64 rng(2);
  const Eigen::VectorXcd psi = oracle::random_vector(16, rng);
  Eigen::Matrix4cd m;
  for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = oracle::random_vector(1, rng)[0] * double(i + 1);
  Statevector s(4, psi);
  apply_gate(s, m, {3, 1});
  const Eigen::VectorXcd want = oracle::embed(m, {3, 1}, 4) * psi;
  EXPECT_LT((s.amplitudes() - want).norm(), 1e-12);
}

TEST(Simulator, ApplyGateValidatesUnitarity) {
  Statevector s(2);
  Eigen::Matrix2cd bad;
  bad << 1, 1, 0, 1;
  EXPECT_THROW(apply_gate(s, bad, {0}, true), std::invalid_argument);
  EXPECT_THROW(apply_gate(s, x_gate(), {2}), std::out_of_range);
  EXPECT_THROW(apply_gate(s, Eigen::Matrix4cd::Identity(), {1, 1}), std::invalid_argument);
}

TEST(Simulator, ExpectationSimpleStates) {
  PauliSum z(1);
  z.add(1.0, "Z");
  EXPECT_DOUBLE_EQ(expectation(Statevector(1), z), 1.0);
  PauliSum x(1);
  x.add(1.0, "X");
  Eigen::VectorXcd plus(2);
  plus << 1, 1;
  EXPECT_NEAR(expectation(Statevector(1, plus), x), 1.0, 1e-15);
}

TEST(Simulator, ExpectationMatchesDenseOracle) {
  std::mt19937_64 rng(3);
  const Eigen::VectorXcd psi = oracle::random_vector(8, rng);
  const std::vector<std::pair<double, std::string>> terms = {
      {0.3, "XYZ"}, {-1.2, "ZZI"}, {0.7, "IYY"}, {0.25, "XII"}, {-0.5, "YXZ"}};
  PauliSum h(3);
  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(8, 8);
  for (const auto &[c, s] : terms) {
    h.add(c, s);
    dense += c * oracle::pauli_string(s);
  }
  const double want = psi.dot(dense * psi).real();
  EXPECT_NEAR(expectation(Statevector(3, psi), h), want, 1e-12);
  EXPECT_NEAR(expectation_dense(Statevector(3, psi), dense), want, 1e-12);
}

TEST(Simulator, ApplyDenseIdentityAndSwap) {
  std::mt19937_64 rng(4);
  Statevector s(3, oracle::random_vector(8, rng));
  const Eigen::VectorXcd before = s.amplitudes();
  apply_dense(s, Eigen::MatrixXcd::Identity(8, 8), {0, 1, 2});
  EXPECT_LT((s.amplitudes() - before).norm(), 1e-15);

  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  Statevector t = Statevector::basis_state(2, 0b10);
  apply_dense(t, swap, {0, 1});
  EXPECT_EQ(t[0b01], Complex(1.0));
}

TEST(Simulator, ApplyDenseMatchesOracleOnSubset) {
  std::mt19937_64 rng(5);
  const Eigen::VectorXcd psi = oracle::random_vector(32, rng);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(8, 8);
  for (Eigen::Index c = 0; c < 8; ++c) u.col(c) = oracle::random_vector(8, rng);
  Statevector s(5, psi);
  apply_dense(s, u, {4, 0, 2});
  EXPECT_LT((s.amplitudes() - oracle::embed(u, {4, 0, 2}, 5) * psi).norm(), 1e-12);
}

TEST(Simulator, ZRotationOnPlusState) {
  const double t = 0.37;
  Eigen::VectorXcd plus(2);
  plus << 1, 1;
  Statevector s(1, plus);
  PauliSum z(1);
  z.add(1.0, "Z");
  apply_dense(s, time_evolution(z, t), {0});
  Eigen::VectorXcd minus(2);
  minus << 1, -1;
  const Eigen::VectorXcd want = std::cos(t) * plus / std::sqrt(2.0) - Complex(0, std::sin(t)) * minus / std::sqrt(2.0);
  EXPECT_LT((s.amplitudes() - want).norm(), 1e-12);
}

TEST(Simulator, SampledExpectationConvergesToExact) {
  std::mt19937_64 rng(6);
  const Statevector s(2, oracle::random_vector(4, rng));
  PauliSum h(2);
  h.add(0.8, "ZX");
  h.add(-0.4, "YI");
  const double exact = expectation(s, h);
  // variance of the per-term sample means
  double var = 0.0;
  for (const auto &term : h.terms()) {
    PauliSum one(2);
    one.add(1.0, term.string);
    const double m = expectation(s, one);
    var += term.coefficient * term.coefficient * (1.0 - m * m);
  }
  const std::uint64_t shots = 1000000;
  const double sampled = sampled_expectation(s, h, shots, 99);
  EXPECT_LT(std::abs(sampled - exact), 5.0 * std::sqrt(var / shots));
  EXPECT_EQ(sampled, sampled_expectation(s, h, shots, 99));
}

TEST(Simulator, SampledEigenstateIsExact) {
  PauliSum z(1);
  z.add(1.0, "Z");
  EXPECT_EQ(sampled_expectation(Statevector(1), z, 17, 3), 1.0);
  EXPECT_THROW(sampled_expectation(Statevector(1), z, 0, 3), std::invalid_argument);
}

TEST(Simulator, NormPreservedAfterManyGates) {
  std::mt19937_64 rng(7);
  Statevector s(4, oracle::random_vector(16, rng));
  for (int k = 0; k < 200; ++k) {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    const Eigen::MatrixXcd h = oracle::random_vector(16, rng).reshaped(4, 4);
    Eigen::MatrixXcd herm = h + h.adjoint();
    u = hermitian_exponential(herm, 1.0);
    const unsigned a = static_cast<unsigned>(k % 4);
    apply_gate(s, u, {a, (a + 1 + static_cast<unsigned>(k % 3)) % 4});
  }
  EXPECT_LT(std::abs(1.0 - s.norm_squared()), 1e-12);
}

TEST(Simulator, UnitarityCheck) {
  EXPECT_TRUE(is_unitary(x_gate()));
  Eigen::Matrix2cd bad;
  bad << 1, 0, 0, 2;
  EXPECT_FALSE(is_unitary(bad));
}
