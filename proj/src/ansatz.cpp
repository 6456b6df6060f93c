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

#include "qfqs/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qfqs {

namespace {

constexpr double kPi = 3.14159265358979323846;

const Quaternion kCzQuaternion{0.0, 0.0, 0.0, 1.0};

struct PairSpec {
  unsigned first;
  unsigned second;
  unsigned rank;
};

std::vector<PairSpec> ranked_layer(unsigned n, Connectivity connectivity) {
  const auto pairs = layer_pairs(n, connectivity);
  std::vector<PairSpec> out;
  if (connectivity == Connectivity::kNearestNeighbor && n > 2) {
    // columns alternate down the register: (1,2) (2,3) (3,4) ... (n,1)
    for (const auto &[a, b] : pairs) out.push_back({a, b, a - 1});
  } else {
    for (unsigned k = 0; k < pairs.size(); ++k) out.push_back({pairs[k].first, pairs[k].second, k});
  }
  return out;
}

std::vector<std::size_t> ordered_units(const Circuit &circuit, bool by_rank) {
  if (circuit.blocks.empty()) throw std::invalid_argument("circuit has no block structure");
  std::vector<std::size_t> order(circuit.blocks.size());
  std::iota(order.begin(), order.end(), 0);
  if (by_rank) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const BlockInfo &x = circuit.blocks[a];
      const BlockInfo &y = circuit.blocks[b];
      return x.layer != y.layer ? x.layer < y.layer : x.rank < y.rank;
    });
  }
  std::vector<std::size_t> schedule;
  for (std::size_t b : order) {
    for (std::size_t u : circuit.blocks[b].units) schedule.push_back(u);
  }
  if (schedule.size() != circuit.units.size()) throw std::invalid_argument("blocks do not cover all units");
  return schedule;
}

}  // namespace

std::size_t Circuit::add_gate(GateInstance gate) {
  gate.validate(n_qubits);
  gates.push_back(std::move(gate));
  return gates.size() - 1;
}

std::size_t Circuit::add_unit_gate(GateInstance gate) {
  if (!gate.trainable) throw std::invalid_argument("update units need trainable gates");
  const UnitKind kind = gate.kind == GateKind::kSingle ? UnitKind::kSingle : UnitKind::kControlled;
  if (gate.kind == GateKind::kNegControlled) throw std::invalid_argument("negative-controlled gates form pairs");
  const std::size_t g = add_gate(std::move(gate));
  units.push_back({kind, {g}, -1});
  schedule.push_back(units.size() - 1);
  return units.size() - 1;
}

std::size_t Circuit::add_pair(GateInstance negative, GateInstance positive) {
  if (negative.kind != GateKind::kNegControlled || positive.kind != GateKind::kControlled ||
      negative.qubits != positive.qubits || !negative.trainable || !positive.trainable) {
    throw std::invalid_argument("a pair needs trainable negative and positive controlled gates on the same qubits");
  }
  const std::size_t gp = add_gate(std::move(positive));
  const std::size_t gn = add_gate(std::move(negative));
  units.push_back({UnitKind::kPair, {gn, gp}, -1});
  schedule.push_back(units.size() - 1);
  return units.size() - 1;
}

std::size_t Circuit::trainable_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const GateInstance &g) { return g.trainable; }));
}

void Circuit::validate() const {
  for (const auto &g : gates) g.validate(n_qubits);
  std::vector<int> owner(gates.size(), -1);
  for (std::size_t u = 0; u < units.size(); ++u) {
    const UpdateUnit &unit = units[u];
    const std::size_t want = unit.kind == UnitKind::kPair ? 2 : 1;
    if (unit.gates.size() != want) throw std::invalid_argument("update unit has wrong gate count");
    for (std::size_t g : unit.gates) {
      if (g >= gates.size()) throw std::out_of_range("update unit references a missing gate");
      if (!gates[g].trainable) throw std::invalid_argument("update unit references a fixed gate");
      if (owner[g] != -1) throw std::invalid_argument("gate appears in two update units");
      owner[g] = static_cast<int>(u);
    }
    const GateKind k0 = gates[unit.gates[0]].kind;
    switch (unit.kind) {
      case UnitKind::kSingle:
        if (k0 != GateKind::kSingle) throw std::invalid_argument("single unit holds a non-single gate");
        break;
      case UnitKind::kControlled:
        if (k0 != GateKind::kControlled && k0 != GateKind::kNumberPreserving) {
          throw std::invalid_argument("controlled unit holds an unsupported gate");
        }
        break;
      case UnitKind::kPair: {
        const GateInstance &neg = gates[unit.gates[0]];
        const GateInstance &pos = gates[unit.gates[1]];
        if (neg.kind != GateKind::kNegControlled || pos.kind != GateKind::kControlled || neg.qubits != pos.qubits) {
          throw std::invalid_argument("pair unit must be a negative/positive controlled pair on one qubit pair");
        }
        const auto [lo, hi] = std::minmax(unit.gates[0], unit.gates[1]);
        for (std::size_t g = lo + 1; g < hi; ++g) {
          for (unsigned q : gates[g].qubits) {
            if (std::find(neg.qubits.begin(), neg.qubits.end(), q) != neg.qubits.end()) {
              throw std::invalid_argument("pair gates must be adjacent on their qubits");
            }
          }
        }
        break;
      }
    }
  }
  for (std::size_t g = 0; g < gates.size(); ++g) {
    if (gates[g].trainable && owner[g] == -1) throw std::invalid_argument("trainable gate without update unit");
  }
  std::vector<int> seen(units.size(), 0);
  for (std::size_t u : schedule) {
    if (u >= units.size() || seen[u]++) throw std::invalid_argument("schedule is not a permutation of the units");
  }
  if (schedule.size() != units.size()) throw std::invalid_argument("schedule does not cover every unit");
}

std::string block_type_name(BlockType block) {
  switch (block) {
    case BlockType::kFqs: return "fqs";
    case BlockType::kCfqs: return "cfqs";
    case BlockType::kScf: return "scf";
    case BlockType::kNumberPreserving: return "np";
  }
  return "?";
}

std::string connectivity_name(Connectivity connectivity) {
  switch (connectivity) {
    case Connectivity::kNearestNeighbor: return "nn";
    case Connectivity::kAllToAll: return "all";
    case Connectivity::kSpinPreserving: return "spin";
  }
  return "?";
}

BlockType parse_block_type(const std::string &text) {
  if (text == "fqs") return BlockType::kFqs;
  if (text == "cfqs") return BlockType::kCfqs;
  if (text == "scf" || text == "scf-cfqs") return BlockType::kScf;
  if (text == "np" || text == "number-preserving") return BlockType::kNumberPreserving;
  throw std::invalid_argument("unknown block type '" + text + "'");
}

Connectivity parse_connectivity(const std::string &text) {
  if (text == "nn" || text == "nearest-neighbor") return Connectivity::kNearestNeighbor;
  if (text == "all" || text == "all-to-all") return Connectivity::kAllToAll;
  if (text == "spin" || text == "spin-preserving") return Connectivity::kSpinPreserving;
  throw std::invalid_argument("unknown connectivity '" + text + "'");
}

std::vector<std::pair<unsigned, unsigned>> layer_pairs(unsigned n, Connectivity connectivity) {
  switch (connectivity) {
    case Connectivity::kNearestNeighbor: {
      if (n < 2 || n % 2 != 0) throw std::invalid_argument("nearest-neighbor bricks need an even n >= 2");
      if (n == 2) return {{1, 2}};
      std::vector<std::pair<unsigned, unsigned>> out;
      for (unsigned a = 1; a < n; a += 2) out.emplace_back(a, a + 1);
      for (unsigned a = 2; a <= n; a += 2) out.emplace_back(a, a == n ? 1 : a + 1);
      return out;
    }
    case Connectivity::kAllToAll:
      if (n == 4) return {{1, 2}, {3, 4}, {1, 4}, {2, 3}, {1, 3}, {2, 4}};
      if (n == 6) {
        return {{1, 2}, {3, 5}, {4, 6}, {1, 3}, {2, 6}, {4, 5}, {1, 4}, {2, 3},
                {5, 6}, {1, 5}, {2, 4}, {3, 6}, {1, 6}, {2, 5}, {3, 4}};
      }
      break;
    case Connectivity::kSpinPreserving:
      if (n == 4) return {{1, 2}, {3, 4}};
      if (n == 6) return {{1, 2}, {4, 5}, {2, 3}, {5, 6}, {1, 3}, {4, 6}};
      break;
  }
  throw std::invalid_argument(connectivity_name(connectivity) + " connectivity is defined for n = 4 or 6, got " +
                              std::to_string(n));
}

Circuit build_alt_ansatz(unsigned n, unsigned layers, BlockType block, Connectivity connectivity,
                         bool final_singles) {
  if (layers == 0) throw std::invalid_argument("layers must be >= 1");
  const auto layer = ranked_layer(n, connectivity);
  Circuit c(n);
  c.schedule.clear();
  for (unsigned l = 0; l < layers; ++l) {
    if (l > 0 && connectivity == Connectivity::kSpinPreserving) {
      const unsigned control = n == 4 ? 1 : 2;
      c.add_gate(make_fixed(GateKind::kFixedNegCZ, {control, control + 1}));
    }
    for (const PairSpec &p : layer) {
      const unsigned a = p.first - 1;
      const unsigned b = p.second - 1;
      BlockInfo info{l, p.rank, a, b, {}};
      switch (block) {
        case BlockType::kFqs:
          info.units.push_back(c.add_unit_gate(make_single(a)));
          info.units.push_back(c.add_unit_gate(make_single(b)));
          c.add_gate(make_fixed(GateKind::kFixedCZ, {a, b}));
          break;
        case BlockType::kCfqs:
          info.units.push_back(c.add_unit_gate(make_single(a)));
          info.units.push_back(c.add_unit_gate(make_single(b)));
          info.units.push_back(c.add_unit_gate(make_controlled(a, b)));
          break;
        case BlockType::kScf:
          info.units.push_back(c.add_unit_gate(make_single(a)));
          info.units.push_back(c.add_pair(make_controlled(a, b, {}, true, Polarity::kControlOnZero),
                                          make_controlled(a, b)));
          break;
        case BlockType::kNumberPreserving:
          info.units.push_back(c.add_unit_gate(make_number_preserving(a, b)));
          break;
      }
      for (std::size_t u : info.units) c.units[u].block = static_cast<int>(c.blocks.size());
      c.blocks.push_back(std::move(info));
    }
  }
  if (final_singles || block == BlockType::kFqs) {
    BlockInfo tail{layers, 0, 0, 0, {}};
    for (unsigned q = 0; q < n; ++q) {
      const std::size_t u = c.add_unit_gate(make_single(q));
      c.units[u].block = static_cast<int>(c.blocks.size());
      tail.units.push_back(u);
    }
    c.blocks.push_back(std::move(tail));
  }
  c.schedule = zipping_schedule(c);
  c.validate();
  return c;
}

std::vector<std::size_t> zipping_schedule(const Circuit &circuit) { return ordered_units(circuit, true); }

std::vector<std::size_t> ascending_schedule(const Circuit &circuit) {
  std::vector<std::size_t> order(circuit.units.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return circuit.units[a].gates.front() < circuit.units[b].gates.front();
  });
  return order;
}

InitPolicy parse_init_policy(const std::string &text) {
  if (text == "random") return InitPolicy::kRandom;
  if (text == "cz" || text == "cz-init") return InitPolicy::kCzInit;
  if (text == "warm" || text == "warm-start") return InitPolicy::kWarmStart;
  throw std::invalid_argument("unknown init policy '" + text + "'");
}

Quaternion random_quaternion(std::mt19937_64 &rng) {
  std::normal_distribution<double> normal;
  for (;;) {
    const double a = normal(rng), b = normal(rng), c = normal(rng), d = normal(rng);
    if (a * a + b * b + c * c + d * d > 1e-24) return {a, b, c, d};
  }
}

Circuit initialize(Circuit circuit, const InitOptions &options, std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  auto near_identity = [&]() {
    Eigen::Vector3d axis;
    do {
      axis = {normal(rng), normal(rng), normal(rng)};
    } while (axis.norm() < 1e-12);
    return quaternion_from_axis_angle(axis, options.angle_max * uniform(rng));
  };
  std::vector<bool> paired_negative(circuit.gates.size(), false);
  for (const auto &unit : circuit.units) {
    if (unit.kind == UnitKind::kPair) paired_negative[unit.gates[0]] = true;
  }
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    GateInstance &gate = circuit.gates[g];
    if (!gate.trainable) continue;
    const bool controlled = is_controlled(gate.kind);
    if (options.policy == InitPolicy::kRandom || (!controlled && options.policy == InitPolicy::kCzInit)) {
      gate.params = random_quaternion(rng);
      gate.angle = 0.0;
    } else if (!controlled) {
      gate.params = near_identity();
      gate.angle = 0.0;
    } else if (paired_negative[g]) {
      gate.params = Quaternion{};
      gate.angle = 0.0;
    } else {
      gate.params = kCzQuaternion;
      gate.angle = kPi / 2.0;
    }
  }
  return circuit;
}

void apply_circuit(Statevector &state, const Circuit &circuit, std::size_t begin, std::size_t end,
                   unsigned offset, bool conjugate) {
  if (offset + circuit.n_qubits > state.n_qubits()) throw std::invalid_argument("circuit does not fit the register");
  for (std::size_t g = begin; g < end; ++g) apply(state, lower_gate(circuit.gates[g], offset, conjugate));
}

Statevector run_circuit(const Circuit &circuit) {
  Statevector state(circuit.n_qubits);
  apply_circuit(state, circuit, 0, circuit.gates.size());
  return state;
}

DenseUnitary circuit_unitary(const Circuit &circuit, bool conjugate) {
  if (circuit.n_qubits > kMaxUnitaryQubits) throw std::invalid_argument("circuit too large for a dense unitary");
  const std::size_t dim = std::size_t{1} << circuit.n_qubits;
  DenseUnitary u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    Statevector s = Statevector::basis_state(circuit.n_qubits, col);
    apply_circuit(s, circuit, 0, circuit.gates.size(), 0, conjugate);
    u.col(static_cast<Eigen::Index>(col)) = s.amplitudes();
  }
  return u;
}

}  // namespace qfqs
