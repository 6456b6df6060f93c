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

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qfqs/gates.hpp"
#include "qfqs/simulator.hpp"

namespace qfqs {

enum class BlockType { kFqs, kCfqs, kScf, kNumberPreserving };
enum class Connectivity { kNearestNeighbor, kAllToAll, kSpinPreserving };

/// kControlled also covers number-preserving gates. Pair units list the
/// negative-controlled gate first, then the controlled gate.
enum class UnitKind { kSingle, kControlled, kPair };

struct UpdateUnit {
  UnitKind kind = UnitKind::kSingle;
  std::vector<std::size_t> gates;
  int block = -1;
};

/// Builder metadata for one two-qubit block (or the trailing single-gate layer).
struct BlockInfo {
  unsigned layer = 0;
  unsigned rank = 0;
  unsigned first = 0;
  unsigned second = 0;
  std::vector<std::size_t> units;
};

struct Circuit {
  unsigned n_qubits = 0;
  std::vector<GateInstance> gates;
  std::vector<UpdateUnit> units;
  std::vector<std::size_t> schedule;
  std::vector<BlockInfo> blocks;

  explicit Circuit(unsigned n = 0) : n_qubits(n) {}

  std::size_t add_gate(GateInstance gate);
  /// Adds a trainable gate together with its own update unit.
  std::size_t add_unit_gate(GateInstance gate);
  std::size_t add_pair(GateInstance negative, GateInstance positive);

  std::size_t trainable_count() const;
  void validate() const;
};

std::string block_type_name(BlockType block);
std::string connectivity_name(Connectivity connectivity);
BlockType parse_block_type(const std::string &text);
Connectivity parse_connectivity(const std::string &text);

/// 1-based qubit pairs of one layer for the given connectivity.
std::vector<std::pair<unsigned, unsigned>> layer_pairs(unsigned n, Connectivity connectivity);

/// Alternating layered ansatz. `final_singles` appends one trainable single
/// gate per qubit after the last layer; FqsBlock circuits always get it.
Circuit build_alt_ansatz(unsigned n, unsigned layers, BlockType block, Connectivity connectivity,
                         bool final_singles = false);

std::vector<std::size_t> zipping_schedule(const Circuit &circuit);
std::vector<std::size_t> ascending_schedule(const Circuit &circuit);

enum class InitPolicy { kRandom, kCzInit, kWarmStart };

struct InitOptions {
  InitPolicy policy = InitPolicy::kRandom;
  double angle_max = 3.14159265358979323846 / 18.0;
};

InitPolicy parse_init_policy(const std::string &text);

Quaternion random_quaternion(std::mt19937_64 &rng);
Circuit initialize(Circuit circuit, const InitOptions &options, std::uint64_t rng_seed);

/// Runs gates [begin, end) on `state`, circuit qubit k acting on register
/// qubit offset + k.
void apply_circuit(Statevector &state, const Circuit &circuit, std::size_t begin, std::size_t end,
                   unsigned offset = 0, bool conjugate = false);
Statevector run_circuit(const Circuit &circuit);

constexpr unsigned kMaxUnitaryQubits = 12;
DenseUnitary circuit_unitary(const Circuit &circuit, bool conjugate = false);

}  // namespace qfqs
