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
#include "qfqs/ansatz.hpp"
#include "qfqs/gates.hpp"
#include "qfqs/hamiltonian.hpp"

using namespace qfqs;

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

double phase_distance(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
  const Complex overlap = (a.adjoint() * b).trace();
  return 1.0 - std::abs(overlap) / static_cast<double>(a.rows());
}

}  // namespace

TEST(Quaternion, NormalizesAndRejectsZero) {
  const Quaternion q(2.0, 0.0, 0.0, 0.0);
  EXPECT_DOUBLE_EQ(q.i, 1.0);
  EXPECT_THROW(Quaternion(0.0, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST(Quaternion, IdentityAndXGate) {
  EXPECT_LT(oracle::max_abs(su2_from_quaternion({1, 0, 0, 0}) - Eigen::Matrix2cd::Identity()), 1e-15);
  EXPECT_LT(oracle::max_abs(su2_from_quaternion({0, 1, 0, 0}) - (-kI) * oracle::pauli('X')), 1e-15);
}

TEST(Quaternion, AxisAngleMatchesExponential) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  for (int k = 0; k < 50; ++k) {
    Eigen::Vector3d n(normal(rng), normal(rng), normal(rng));
    n.normalize();
    const double theta = std::uniform_real_distribution<double>(-kPi, kPi)(rng);
    const Eigen::MatrixXcd gen = n.x() * oracle::pauli('X') + n.y() * oracle::pauli('Y') + n.z() * oracle::pauli('Z');
    const Eigen::MatrixXcd want = oracle::expm_taylor(gen, theta / 2.0);
    EXPECT_LT(oracle::max_abs(su2_from_quaternion(quaternion_from_axis_angle(n, theta)) - want), 1e-12);
  }
}

TEST(Quaternion, AxisAngleExamples) {
  const Quaternion z0 = quaternion_from_axis_angle(Eigen::Vector3d::UnitZ(), 0.0);
  EXPECT_NEAR(z0.i, 1.0, 1e-15);
  const Quaternion xpi = quaternion_from_axis_angle(Eigen::Vector3d::UnitX(), kPi);
  EXPECT_NEAR(xpi.x, 1.0, 1e-15);
  EXPECT_NEAR(xpi.i, 0.0, 1e-15);
}

TEST(Quaternion, ProductComposesGates) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 20; ++k) {
    const Quaternion a = random_quaternion(rng);
    const Quaternion b = random_quaternion(rng);
    EXPECT_LT(oracle::max_abs(su2_from_quaternion(a * b) - su2_from_quaternion(a) * su2_from_quaternion(b)), 1e-14);
  }
}

TEST(Quaternion, ConjugateMatchesElementwiseConjugate) {
  const Quaternion cx = conjugate_quaternion({0, 1, 0, 0});
  EXPECT_DOUBLE_EQ(cx.x, -1.0);
  const Quaternion one = conjugate_quaternion({1, 0, 0, 0});
  EXPECT_DOUBLE_EQ(one.i, 1.0);
  std::mt19937_64 rng(13);
  for (int k = 0; k < 50; ++k) {
    const Quaternion q = random_quaternion(rng);
    EXPECT_LT(oracle::max_abs(su2_from_quaternion(conjugate_quaternion(q)) - su2_from_quaternion(q).conjugate()), 1e-14);
  }
}

TEST(Quaternion, CanonicalFlipsSign) {
  const Quaternion q = Quaternion(-0.5, 0.5, -0.5, 0.5).canonical();
  EXPECT_GT(q.i, 0.0);
  const Quaternion z = Quaternion(0.0, -1.0, 0.0, 0.0).canonical();
  EXPECT_GT(z.x, 0.0);
}

TEST(ControlledGate, IdentityAndZ) {
  EXPECT_LT(oracle::max_abs(controlled_matrix({1, 0, 0, 0}) - Eigen::Matrix4cd::Identity()), 1e-15);
  const Eigen::Matrix4cd want = Eigen::Vector4cd(1, 1, -kI, kI).asDiagonal();
  EXPECT_LT(oracle::max_abs(controlled_matrix({0, 0, 0, 1}) - want), 1e-15);
}

TEST(ControlledGate, BlockStructure) {
  std::mt19937_64 rng(14);
  const Quaternion q = random_quaternion(rng);
  const Eigen::Matrix4cd on1 = controlled_matrix(q);
  EXPECT_LT(oracle::max_abs(on1.topLeftCorner<2, 2>() - Eigen::Matrix2cd::Identity()), 1e-15);
  EXPECT_LT(oracle::max_abs(on1.bottomRightCorner<2, 2>() - su2_from_quaternion(q)), 1e-15);
  EXPECT_LT(oracle::max_abs(on1.topRightCorner<2, 2>()), 1e-15);
  const Eigen::Matrix4cd on0 = controlled_matrix(q, Polarity::kControlOnZero);
  EXPECT_LT(oracle::max_abs(on0.topLeftCorner<2, 2>() - su2_from_quaternion(q)), 1e-15);
  EXPECT_LT(oracle::max_abs(on0.bottomRightCorner<2, 2>() - Eigen::Matrix2cd::Identity()), 1e-15);
}

TEST(NumberPreserving, IdentityAndSupport) {
  EXPECT_LT(oracle::max_abs(number_preserving_matrix({1, 0, 0, 0}) - Eigen::Matrix4cd::Identity()), 1e-15);
  std::mt19937_64 rng(15);
  // Z(x)I + I(x)Z counts particles; the gate must commute with it
  const Eigen::MatrixXcd number = oracle::kron(oracle::pauli('Z'), Eigen::Matrix2cd::Identity()) +
                                  oracle::kron(Eigen::Matrix2cd::Identity(), oracle::pauli('Z'));
  for (int k = 0; k < 100; ++k) {
    const Eigen::Matrix4cd u = number_preserving_matrix(random_quaternion(rng));
    EXPECT_LT(oracle::max_abs(u * number - number * u), 1e-14);
    EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(u(3, 3)), 1.0, 1e-14);
  }
}

TEST(NumberPreserving, EqualsCnotControlledCnot) {
  std::mt19937_64 rng(16);
  for (int k = 0; k < 20; ++k) {
    const Quaternion q = random_quaternion(rng);
    Circuit np(2);
    np.add_gate(make_number_preserving(0, 1, q, false));
    // full-register oracle: CNOT(1 -> 0), CU(0 -> 1), CNOT(1 -> 0)
    Eigen::MatrixXcd cnot10 = Eigen::MatrixXcd::Zero(4, 4);
    for (int i = 0; i < 4; ++i) cnot10(i & 2 ? i ^ 1 : i, i) = 1.0;
    Eigen::MatrixXcd cu = Eigen::MatrixXcd::Zero(4, 4);
    const Eigen::Matrix2cd r = su2_from_quaternion(q);
    for (int t = 0; t < 2; ++t) cu(t << 1, t << 1) = 1.0;  // control qubit 0 clear
    for (int tr = 0; tr < 2; ++tr)
      for (int tc = 0; tc < 2; ++tc) cu((tr << 1) | 1, (tc << 1) | 1) = r(tr, tc);
    const Eigen::MatrixXcd want = cnot10 * cu * cnot10;
    EXPECT_LT(oracle::max_abs(circuit_unitary(np) - want), 1e-12);
  }
}

TEST(Decomposition, IdentityGivesZeroAngles) {
  const ControlledAngles a = decompose_controlled({1, 0, 0, 0});
  EXPECT_NEAR(a.beta, 0.0, 1e-15);
  EXPECT_NEAR(a.gamma, 0.0, 1e-15);
  EXPECT_NEAR(a.delta, 0.0, 1e-15);
}

TEST(Decomposition, ZQuaternionFamily) {
  const ControlledAngles a = decompose_controlled({0, 0, 0, 1});
  EXPECT_NEAR(a.gamma, 0.0, 1e-15);
  EXPECT_NEAR(a.beta + a.delta, kPi, 1e-14);
  const Quaternion back = quaternion_from_angles(a.beta, a.gamma, a.delta);
  EXPECT_NEAR(back.z, 1.0, 1e-14);
}

TEST(Decomposition, RotationProductRecomposes) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 200; ++k) {
    const Quaternion q = random_quaternion(rng);
    const ControlledAngles a = decompose_controlled(q);
    const Eigen::Matrix2cd rec = rz_matrix(a.delta) * ry_matrix(a.gamma) * rz_matrix(a.beta);
    const Eigen::Matrix2cd u = su2_from_quaternion(q);
    EXPECT_GT(std::abs((rec.adjoint() * u).trace()) / 2.0, 1.0 - 1e-10);
    EXPECT_LT(oracle::max_abs(rec - u), 1e-12);
  }
}

TEST(GateKinds, EveryMatrixIsUnitary) {
  std::mt19937_64 rng(18);
  const Quaternion q = random_quaternion(rng);
  std::vector<GateInstance> gates = {make_single(0, q), make_controlled(0, 1, q),
                                     make_controlled(0, 1, q, true, Polarity::kControlOnZero),
                                     make_number_preserving(0, 1, q)};
  for (GateKind k : {GateKind::kFixedCZ, GateKind::kFixedNegCZ, GateKind::kFixedCNOT}) gates.push_back(make_fixed(k, {0, 1}));
  for (GateKind k : {GateKind::kFixedH, GateKind::kFixedRz, GateKind::kFixedRy}) gates.push_back(make_fixed(k, {0}, 0.3));
  for (const auto &g : gates) EXPECT_TRUE(is_unitary(gate_matrix(g))) << gate_kind_name(g.kind);
}

TEST(GateKinds, LoweringConjugateIsElementwise) {
  std::mt19937_64 rng(19);
  const Quaternion q = random_quaternion(rng);
  GateInstance cu = make_controlled(1, 0, q);
  cu.angle = 0.7;
  std::vector<GateInstance> gates = {make_single(1, q), cu, make_controlled(0, 1, q, true, Polarity::kControlOnZero),
                                     make_number_preserving(1, 0, q), make_fixed(GateKind::kFixedCNOT, {1, 0}),
                                     make_fixed(GateKind::kFixedRz, {0}, 0.4), make_fixed(GateKind::kFixedRy, {1}, -0.9)};
  for (const auto &g : gates) {
    Circuit c(2);
    c.add_gate(g);
    c.gates[0].trainable = false;
    EXPECT_LT(oracle::max_abs(circuit_unitary(c, true) - circuit_unitary(c).conjugate()), 1e-14) << gate_kind_name(g.kind);
  }
}

TEST(GateKinds, ControlledGateWithPhaseIsCz) {
  GateInstance g = make_controlled(0, 1, {0, 0, 0, 1});
  g.angle = kPi / 2.0;
  const Eigen::Matrix4cd cz = Eigen::Vector4cd(1, 1, 1, -1).asDiagonal();
  EXPECT_LT(phase_distance(gate_matrix(g), cz), 1e-14);
}

TEST(GateKinds, ControlledGateQubitOrder) {
  // control is qubits[0]; acting on |control=1, target=0> flips the target for an X-type gate
  Circuit c(2);
  c.add_gate(make_controlled(1, 0, {0, 1, 0, 0}, false));
  Statevector s = Statevector::basis_state(2, 0b10);
  apply_circuit(s, c, 0, 1);
  EXPECT_NEAR(std::abs(s[0b11]), 1.0, 1e-15);
}

TEST(GateKinds, ValidationErrors) {
  EXPECT_THROW(make_fixed(GateKind::kSingle, {0}), std::invalid_argument);
  EXPECT_THROW(make_controlled(0, 0).validate(2), std::invalid_argument);
  EXPECT_THROW(make_single(3).validate(2), std::out_of_range);
}
