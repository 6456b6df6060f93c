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

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfqs/simulator.hpp"

namespace qfqs {

/// Unit quaternion (q_i, q_x, q_y, q_z) parameterizing
/// R(q) = q_i I - i q_x X - i q_y Y - i q_z Z.
struct Quaternion {
  double i = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Quaternion() = default;
  /// Normalizes the input; throws on a zero vector.
  Quaternion(double qi, double qx, double qy, double qz);
  static Quaternion from_vector(const Eigen::Vector4d &v);

  Eigen::Vector4d vector() const { return {i, x, y, z}; }

  /// Sign flipped so the first nonzero component is positive. Only a valid
  /// substitute where the gate enters without a reference phase, i.e. for
  /// single-qubit gates.
  Quaternion canonical() const;

  /// Hamilton product; R(a) R(b) = R(a * b).
  Quaternion operator*(const Quaternion &other) const;
};

Quaternion quaternion_from_axis_angle(const Eigen::Vector3d &axis, double angle);

/// (q_i, -q_x, q_y, -q_z): R of the result is the element-wise conjugate of R(q).
Quaternion conjugate_quaternion(const Quaternion &q);

Eigen::Matrix2cd su2_from_quaternion(const Quaternion &q);

enum class Polarity { kControlOnOne, kControlOnZero };

/// 4x4 matrix in control-major order: index = 2 * control_bit + target_bit.
Eigen::Matrix4cd controlled_matrix(const Quaternion &q, Polarity polarity = Polarity::kControlOnOne);

/// Acts as R(q) on span{|01>, |10>}; index = bit(first) + 2 * bit(second).
Eigen::Matrix4cd number_preserving_matrix(const Quaternion &q);

Eigen::Matrix2cd rz_matrix(double theta);
Eigen::Matrix2cd ry_matrix(double theta);

/// Angles of the two-CNOT realization of a controlled-R(q):
/// target sees Rz(beta) Ry(gamma/2) CNOT Ry(-gamma/2) Rz(-(delta+beta)/2) CNOT Rz((delta-beta)/2),
/// and the control receives Rz(theta).
struct ControlledAngles {
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double theta = 0.0;
};

ControlledAngles decompose_controlled(const Quaternion &q, double theta = 0.0);
Quaternion quaternion_from_angles(double beta, double gamma, double delta);

enum class GateKind {
  kSingle,
  kControlled,
  kNegControlled,
  kNumberPreserving,
  kFixedCZ,
  kFixedNegCZ,
  kFixedCNOT,
  kFixedH,
  kFixedRz,
  kFixedRy,
};

bool is_parameterized(GateKind kind);
bool is_controlled(GateKind kind);
int gate_arity(GateKind kind);
std::string gate_kind_name(GateKind kind);

/// Controlled kinds list the control first. For controlled kinds `angle` is
/// the frozen phase Rz(angle) applied to the control after the gate; for
/// FixedRz/FixedRy it is the rotation angle.
struct GateInstance {
  GateKind kind = GateKind::kSingle;
  std::vector<unsigned> qubits;
  Quaternion params;
  double angle = 0.0;
  bool trainable = false;

  void validate(unsigned n_qubits) const;
};

GateInstance make_single(unsigned qubit, const Quaternion &q = {}, bool trainable = true);
GateInstance make_controlled(unsigned control, unsigned target, const Quaternion &q = {},
                             bool trainable = true, Polarity polarity = Polarity::kControlOnOne);
GateInstance make_number_preserving(unsigned first, unsigned second, const Quaternion &q = {},
                                    bool trainable = true);
GateInstance make_fixed(GateKind kind, std::vector<unsigned> qubits, double angle = 0.0);

/// Matrix on the gate's own qubit list, control-major for controlled kinds.
Eigen::MatrixXcd gate_matrix(const GateInstance &gate);

/// Lowers a gate to a simulator op. Qubit k maps to register qubit offset + k;
/// `conjugate` builds the element-wise complex conjugate.
GateOp lower_gate(const GateInstance &gate, unsigned offset = 0, bool conjugate = false);

}  // namespace qfqs
