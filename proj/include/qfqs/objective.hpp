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
#include <functional>

#include "qfqs/ansatz.hpp"
#include "qfqs/simulator.hpp"

namespace qfqs {

/// A cost as a function of a circuit: the circuit runs on `initial` (its
/// qubits shifted by `offset`, gates optionally conjugated) and `exact`
/// reads the cost off the final state. `sampled`, when set, is used for
/// tomography evaluations instead of `exact`.
struct Objective {
  Statevector initial{1};
  unsigned offset = 0;
  bool conjugate = false;
  std::function<double(const Statevector &)> exact;
  std::function<double(const Statevector &, std::uint64_t stream)> sampled;

  Statevector final_state(const Circuit &circuit) const;
  double evaluate(const Circuit &circuit) const;
  bool has_shot_noise() const { return static_cast<bool>(sampled); }
};

/// Cost switch used by compilation: `before` for the first `switch_after`
/// sweeps, `after` from then on.
struct CostSchedule {
  Objective before;
  Objective after;
  std::size_t switch_after = 0;

  static CostSchedule constant(Objective objective);
  const Objective &at(std::size_t completed_sweeps) const;
  bool switches_within(std::size_t sweeps) const { return switch_after > 0 && switch_after < sweeps; }
};

}  // namespace qfqs
