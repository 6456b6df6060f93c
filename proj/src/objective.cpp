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

#include "qfqs/objective.hpp"

#include <stdexcept>

namespace qfqs {

Statevector Objective::final_state(const Circuit &circuit) const {
  Statevector state = initial;
  apply_circuit(state, circuit, 0, circuit.gates.size(), offset, conjugate);
  return state;
}

double Objective::evaluate(const Circuit &circuit) const {
  if (!exact) throw std::logic_error("objective has no cost function");
  return exact(final_state(circuit));
}

CostSchedule CostSchedule::constant(Objective objective) {
  CostSchedule s;
  s.before = objective;
  s.after = std::move(objective);
  s.switch_after = 0;
  return s;
}

const Objective &CostSchedule::at(std::size_t completed_sweeps) const {
  return completed_sweeps < switch_after ? before : after;
}

}  // namespace qfqs
