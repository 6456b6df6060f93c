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

#include <iosfwd>
#include <string>

#include "qfqs/ansatz.hpp"
#include "qfqs/optimizer.hpp"

namespace qfqs {

void write_trajectory_csv(std::ostream &out, const Trajectory &trajectory);
void export_trajectory(const Trajectory &trajectory, const std::string &path);

/// Text circuit format, one gate per line:
///   QUBITS n
///   R q qi qx qy qz [fixed]
///   CU c t beta gamma delta theta [fixed]     (NCU for the negative control)
///   NP a b qi qx qy qz [fixed]
///   CZ a b | NCZ c t | CNOT c t | H q | RZ q angle | RY q angle
///   UNIT single|controlled|pair g... ; SCHEDULE u...
/// With `expand` the parameterized gates are written as RZ/RY/CNOT sequences
/// and the result has no trainable gates.
void write_circuit(std::ostream &out, const Circuit &circuit, bool expand = false);
std::string circuit_to_string(const Circuit &circuit, bool expand = false);
void export_circuit(const Circuit &circuit, const std::string &path, bool expand = false);

Circuit parse_circuit(const std::string &text);
Circuit import_circuit(const std::string &path);

/// Parameterized gates rewritten as fixed RZ/RY/CNOT gates.
Circuit expand_circuit(const Circuit &circuit);

}  // namespace qfqs
