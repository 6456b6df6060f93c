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

#include "qfqs/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace qfqs {

namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
  Eigen::Matrix4cd out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

Eigen::MatrixXcd matrix_with(const GateInstance &gate, const Quaternion &q, double angle) {
  switch (gate.kind) {
    case GateKind::kSingle:
      return su2_from_quaternion(q);
    case GateKind::kControlled:
    case GateKind::kNegControlled: {
      const Polarity pol = gate.kind == GateKind::kControlled ? Polarity::kControlOnOne
                                                               : Polarity::kControlOnZero;
      Eigen::Matrix4cd m = controlled_matrix(q, pol);
      if (angle != 0.0) m = kron2(rz_matrix(angle), Eigen::Matrix2cd::Identity()) * m;
      return m;
    }
    case GateKind::kNumberPreserving:
      return number_preserving_matrix(q);
    case GateKind::kFixedCZ:
      return Eigen::Vector4cd(1, 1, 1, -1).asDiagonal();
    case GateKind::kFixedNegCZ:
      return Eigen::Vector4cd(1, -1, 1, 1).asDiagonal();
    case GateKind::kFixedCNOT: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
      return m;
    }
    case GateKind::kFixedH: {
      Eigen::Matrix2cd m;
      m << 1, 1, 1, -1;
      return m / std::sqrt(2.0);
    }
    case GateKind::kFixedRz:
      return rz_matrix(angle);
    case GateKind::kFixedRy:
      return ry_matrix(angle);
  }
  throw std::logic_error("unknown gate kind");
}

}  // namespace

Quaternion::Quaternion(double qi, double qx, double qy, double qz) {
  const double norm = std::sqrt(qi * qi + qx * qx + qy * qy + qz * qz);
  if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("quaternion must be nonzero and finite");
  i = qi / norm;
  x = qx / norm;
  y = qy / norm;
  z = qz / norm;
}

Quaternion Quaternion::from_vector(const Eigen::Vector4d &v) { return {v[0], v[1], v[2], v[3]}; }

Quaternion Quaternion::canonical() const {
  const double comps[4] = {i, x, y, z};
  for (double c : comps) {
    if (c > 0.0) return *this;
    if (c < 0.0) {
      Quaternion out = *this;
      out.i = -i;
      out.x = -x;
      out.y = -y;
      out.z = -z;
      return out;
    }
  }
  return *this;
}

Quaternion Quaternion::operator*(const Quaternion &o) const {
  return {i * o.i - x * o.x - y * o.y - z * o.z,
          i * o.x + x * o.i + y * o.z - z * o.y,
          i * o.y - x * o.z + y * o.i + z * o.x,
          i * o.z + x * o.y - y * o.x + z * o.i};
}

Quaternion quaternion_from_axis_angle(const Eigen::Vector3d &axis, double angle) {
  const double norm = axis.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("rotation axis must be nonzero");
  const Eigen::Vector3d n = axis / norm;
  const double s = std::sin(angle / 2.0);
  return {std::cos(angle / 2.0), s * n[0], s * n[1], s * n[2]};
}

Quaternion conjugate_quaternion(const Quaternion &q) {
  Quaternion out = q;
  out.x = -q.x;
  out.z = -q.z;
  return out;
}

Eigen::Matrix2cd su2_from_quaternion(const Quaternion &q) {
  Eigen::Matrix2cd m;
  m << Complex(q.i, -q.z), Complex(-q.y, -q.x),
       Complex(q.y, -q.x), Complex(q.i, q.z);
  return m;
}

Eigen::Matrix4cd controlled_matrix(const Quaternion &q, Polarity polarity) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  const int corner = polarity == Polarity::kControlOnOne ? 2 : 0;
  m.block<2, 2>(corner, corner) = su2_from_quaternion(q);
  return m;
}

Eigen::Matrix4cd number_preserving_matrix(const Quaternion &q) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  m.block<2, 2>(1, 1) = su2_from_quaternion(q);
  return m;
}

Eigen::Matrix2cd rz_matrix(double theta) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::exp(-kI * (theta / 2.0));
  m(1, 1) = std::exp(kI * (theta / 2.0));
  return m;
}

Eigen::Matrix2cd ry_matrix(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Eigen::Matrix2cd m;
  m << c, -s, s, c;
  return m;
}

ControlledAngles decompose_controlled(const Quaternion &q, double theta) {
  ControlledAngles out;
  out.gamma = 2.0 * std::atan2(std::hypot(q.x, q.y), std::hypot(q.i, q.z));
  const double sum_half = std::atan2(q.z, q.i);   // (beta + delta) / 2
  const double diff_half = std::atan2(q.x, q.y);  // (beta - delta) / 2
  out.beta = sum_half + diff_half;
  out.delta = sum_half - diff_half;
  out.theta = theta;
  return out;
}

Quaternion quaternion_from_angles(double beta, double gamma, double delta) {
  const double cg = std::cos(gamma / 2.0);
  const double sg = std::sin(gamma / 2.0);
  return {std::cos((beta + delta) / 2.0) * cg, std::sin((beta - delta) / 2.0) * sg,
          std::cos((beta - delta) / 2.0) * sg, std::sin((beta + delta) / 2.0) * cg};
}

bool is_parameterized(GateKind kind) {
  return kind == GateKind::kSingle || kind == GateKind::kControlled ||
         kind == GateKind::kNegControlled || kind == GateKind::kNumberPreserving;
}

bool is_controlled(GateKind kind) {
  return kind == GateKind::kControlled || kind == GateKind::kNegControlled;
}

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::kSingle:
    case GateKind::kFixedH:
    case GateKind::kFixedRz:
    case GateKind::kFixedRy:
      return 1;
    default:
      return 2;
  }
}

std::string gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::kSingle: return "single";
    case GateKind::kControlled: return "controlled";
    case GateKind::kNegControlled: return "neg-controlled";
    case GateKind::kNumberPreserving: return "number-preserving";
    case GateKind::kFixedCZ: return "cz";
    case GateKind::kFixedNegCZ: return "neg-cz";
    case GateKind::kFixedCNOT: return "cnot";
    case GateKind::kFixedH: return "h";
    case GateKind::kFixedRz: return "rz";
    case GateKind::kFixedRy: return "ry";
  }
  return "?";
}

void GateInstance::validate(unsigned n_qubits) const {
  if (static_cast<int>(qubits.size()) != gate_arity(kind)) {
    throw std::invalid_argument(gate_kind_name(kind) + " gate needs " +
                                std::to_string(gate_arity(kind)) + " qubit(s)");
  }
  for (unsigned q : qubits) {
    if (q >= n_qubits) throw std::out_of_range("gate qubit " + std::to_string(q) + " out of range");
  }
  if (qubits.size() == 2 && qubits[0] == qubits[1]) throw std::invalid_argument("gate qubits must differ");
  if (trainable && !is_parameterized(kind)) throw std::invalid_argument("fixed gates cannot be trainable");
}

GateInstance make_single(unsigned qubit, const Quaternion &q, bool trainable) {
  return {GateKind::kSingle, {qubit}, q, 0.0, trainable};
}

GateInstance make_controlled(unsigned control, unsigned target, const Quaternion &q, bool trainable,
                             Polarity polarity) {
  const GateKind kind = polarity == Polarity::kControlOnOne ? GateKind::kControlled : GateKind::kNegControlled;
  return {kind, {control, target}, q, 0.0, trainable};
}

GateInstance make_number_preserving(unsigned first, unsigned second, const Quaternion &q, bool trainable) {
  return {GateKind::kNumberPreserving, {first, second}, q, 0.0, trainable};
}

GateInstance make_fixed(GateKind kind, std::vector<unsigned> qubits, double angle) {
  if (is_parameterized(kind)) throw std::invalid_argument("make_fixed needs a fixed gate kind");
  return {kind, std::move(qubits), Quaternion{}, angle, false};
}

Eigen::MatrixXcd gate_matrix(const GateInstance &gate) { return matrix_with(gate, gate.params, gate.angle); }

GateOp lower_gate(const GateInstance &gate, unsigned offset, bool conjugate) {
  Eigen::MatrixXcd m;
  if (is_parameterized(gate.kind)) {
    m = conjugate ? matrix_with(gate, conjugate_quaternion(gate.params), -gate.angle) : gate_matrix(gate);
  } else {
    m = gate_matrix(gate);
    if (conjugate) m = m.conjugate().eval();
  }
  GateOp op;
  op.arity = gate_arity(gate.kind);
  if (op.arity == 1) {
    op.q0 = gate.qubits[0] + offset;
    op.m1 = m;
    return op;
  }
  op.m2 = m;
  if (gate.kind == GateKind::kNumberPreserving || gate.kind == GateKind::kFixedCZ) {
    op.q0 = gate.qubits[0] + offset;
    op.q1 = gate.qubits[1] + offset;
  } else {
    op.q0 = gate.qubits[1] + offset;
    op.q1 = gate.qubits[0] + offset;
  }
  return op;
}

}  // namespace qfqs
