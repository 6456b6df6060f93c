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

#include "qfqs/checks.hpp"
#include "qfqs/costs.hpp"
#include "qfqs/optimizer.hpp"

using namespace qfqs;

namespace {

double sampled_minimum(const Eigen::Matrix4d &J, const Eigen::Vector4d &a, double b, int draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double best = 1e300;
  for (int k = 0; k < draws; ++k) {
    const Eigen::Vector4d q = random_quaternion(rng).vector();
    best = std::min(best, q.dot(J * q) + 2.0 * a.dot(q) + b);
  }
  return best;
}

// Best of the sampled points, then projected gradient descent from it.
double polished_minimum(const Eigen::Matrix4d &J, const Eigen::Vector4d &a, int draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto value = [&](const Eigen::Vector4d &q) { return q.dot(J * q) + 2.0 * a.dot(q); };
  Eigen::Vector4d best = random_quaternion(rng).vector();
  for (int k = 1; k < draws; ++k) {
    const Eigen::Vector4d q = random_quaternion(rng).vector();
    if (value(q) < value(best)) best = q;
  }
  const double step = 0.5 / (J.norm() + a.norm() + 1.0);
  for (int it = 0; it < 100000; ++it) best = (best - step * 2.0 * (J * best + a)).normalized();
  return value(best);
}

Objective energy(const PauliSum &h) { return vqe_objective(h); }

PauliSum single_term(double c, const std::string &letters) {
  PauliSum h(static_cast<unsigned>(letters.size()));
  h.add(c, letters);
  return h;
}

}  // namespace

TEST(Secular, NoLinearTermGivesLowestEigenvector) {
  Eigen::Matrix4d J = Eigen::Vector4d(3, -2, 1, 5).asDiagonal();
  const SecularSolution s = minimize_quadratic_sphere(J, Eigen::Vector4d::Zero(), 0.0);
  EXPECT_NEAR(s.value, -2.0, 1e-12);
  EXPECT_NEAR(std::abs(s.q_star.x), 1.0, 1e-12);
}

// Brute-force reference: 10^6 uniform unit vectors. Raw sampling only resolves
// the minimum to about 1e-3 on the 3-sphere, so the best sample is polished by
// projected gradient descent before the 1e-6 comparison.
TEST(Secular, DiagonalMatchesBruteForce) {
  const Eigen::Matrix4d J = Eigen::Vector4d(1, 2, 3, 4).asDiagonal();
  const Eigen::Vector4d a = Eigen::Vector4d::Constant(0.5);
  const SecularSolution s = minimize_quadratic_sphere(J, a, 0.0);
  EXPECT_LE(s.value, sampled_minimum(J, a, 0.0, 1000000, 41) + 1e-12);
  const double polished = polished_minimum(J, a, 1000000, 41);
  EXPECT_LE(s.value, polished + 1e-12);
  EXPECT_NEAR(s.value, polished, 1e-6);
  EXPECT_NEAR(s.q_star.vector().norm(), 1.0, 1e-10);
  const Eigen::Vector4d q = s.q_star.vector();
  EXPECT_NEAR(q.dot(J * q) + 2.0 * a.dot(q), s.value, 1e-10);
  EXPECT_LT(s.residual, 1e-10);
}

TEST(Secular, DegenerateHardCase) {
  const Eigen::Matrix4d J = Eigen::Vector4d(0, 0, 0, 1).asDiagonal();
  const Eigen::Vector4d a(0, 0, 0, 0.5);
  const SecularSolution s = minimize_quadratic_sphere(J, a, 0.0);
  EXPECT_LE(s.value, sampled_minimum(J, a, 0.0, 200000, 42) + 1e-12);
  EXPECT_TRUE(s.hard_case);
  EXPECT_NEAR(s.value, -0.25, 1e-12);
  EXPECT_NEAR(s.q_star.z, -0.5, 1e-10);
}

TEST(Secular, CandidateBoundsOnRandomProblems) {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Matrix4d m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = normal(rng);
    const Eigen::Matrix4d J = m + m.transpose();
    const Eigen::Vector4d a(normal(rng), normal(rng), normal(rng), normal(rng));
    const auto cands = secular_candidates(J, a, 0.3);
    std::size_t roots = 0;
    for (const auto &c : cands) {
      if (c.hard_case) continue;
      ++roots;
      EXPECT_LT(c.residual, 1e-10);
    }
    EXPECT_LE(roots, 8u);
    const SecularSolution s = minimize_quadratic_sphere(J, a, 0.3);
    EXPECT_LE(s.value, sampled_minimum(J, a, 0.3, 5000, 1000 + trial) + 1e-9);
  }
}

TEST(Update, SingleQubitReachesGroundState) {
  Circuit c(1);
  c.add_unit_gate(make_single(0, Quaternion(0.3, 0.1, 0.7, -0.2)));
  c.schedule = {0};
  const Objective obj = energy(single_term(1.0, "Z"));
  const UpdateResult r = update_single_gate(c, c.units[0], obj, UpdateMethod::kFqs);
  EXPECT_EQ(r.evaluations, 10u);
  EXPECT_NEAR(r.predicted, -1.0, 1e-12);
  EXPECT_NEAR(obj.evaluate(c), -1.0, 1e-12);
}

TEST(Update, ControlledGateOnPlusState) {
  Circuit c(2);
  c.add_gate(make_fixed(GateKind::kFixedH, {0}));
  c.add_unit_gate(make_controlled(0, 1, Quaternion(0.9, 0.2, 0.1, 0.3)));
  c.schedule = {0};
  const Objective obj = energy(single_term(1.0, "IZ"));
  const double before = obj.evaluate(c);
  const UpdateResult r = update_single_gate(c, c.units[0], obj, UpdateMethod::kCfqs);
  EXPECT_EQ(r.evaluations, 14u);
  EXPECT_NEAR(r.previous, before, 1e-10);
  EXPECT_NEAR(r.predicted, 0.0, 1e-10);
  EXPECT_NEAR(obj.evaluate(c), r.predicted, 1e-9);
  // 10^5 sampled gate parameters never do better.
  std::mt19937_64 rng(44);
  double best = 1e300;
  for (int k = 0; k < 100000; ++k) {
    Circuit trial = c;
    trial.gates[1].params = random_quaternion(rng);
    best = std::min(best, obj.evaluate(trial));
  }
  EXPECT_LE(r.predicted, best + 1e-9);
}

TEST(Update, ControlInZeroLeavesCostUnchanged) {
  Circuit c(2);
  c.add_unit_gate(make_controlled(0, 1, Quaternion(0.5, 0.5, 0.5, 0.5)));
  c.schedule = {0};
  const Objective obj = energy(single_term(0.7, "ZZ"));
  const double before = obj.evaluate(c);
  update_single_gate(c, c.units[0], obj, UpdateMethod::kCfqs);
  EXPECT_NEAR(obj.evaluate(c), before, 1e-10);
}

TEST(Update, MethodMismatchThrows) {
  Circuit c = build_alt_ansatz(2, 1, BlockType::kScf, Connectivity::kNearestNeighbor);
  const Objective obj = energy(single_term(1.0, "ZZ"));
  EXPECT_THROW(update_single_gate(c, c.units[0], obj, UpdateMethod::kCfqs), std::invalid_argument);
  EXPECT_THROW(update_single_gate(c, c.units[1], obj, UpdateMethod::kCfqs), std::invalid_argument);
  EXPECT_THROW(scf_update_pair(c, c.units[0], obj, 1e-10), std::invalid_argument);
  EXPECT_EQ(parse_method("scf"), UpdateMethod::kScf);
  EXPECT_THROW(parse_method("newton"), std::invalid_argument);
}

TEST(Scf, SeparableCostTakesTwoSolves) {
  // Observables diagonal on the shared control split into independent branches.
  Circuit c = initialize(build_alt_ansatz(2, 1, BlockType::kScf, Connectivity::kNearestNeighbor), {}, 45);
  PauliSum h(2);
  h.add(0.8, "IX");
  h.add(-0.6, "ZY");
  h.add(0.3, "ZI");
  const Objective obj = energy(h);
  update_single_gate(c, c.units[0], obj, UpdateMethod::kFqs);
  const UpdateResult r = scf_update_pair(c, c.units[1], obj, 1e-10);
  EXPECT_EQ(r.evaluations, 35u);
  EXPECT_EQ(r.inner_solves, 2u);
  EXPECT_NEAR(obj.evaluate(c), r.predicted, 1e-9);
  Statevector control(2);
  apply(control, lower_gate(c.gates[0]));
  const double w1 = std::norm(control[1]) + std::norm(control[3]);
  EXPECT_NEAR(r.predicted, (1.0 - w1) * (0.3 - 1.0) + w1 * (-0.3 - 1.0), 1e-9);
}

TEST(Scf, FixedPointAndPredictionOnRandomCircuit) {
  std::mt19937_64 rng(46);
  const PauliSum h = random_pauli_sum(3, 10, rng);
  Circuit c = initialize(build_alt_ansatz(2, 1, BlockType::kScf, Connectivity::kNearestNeighbor), {}, 47);
  Circuit wide(3);
  wide.add_gate(make_fixed(GateKind::kFixedH, {2}));
  wide.add_gate(make_fixed(GateKind::kFixedCNOT, {2, 0}));
  for (const auto &g : c.gates) wide.add_gate(g);
  wide.units = c.units;
  for (auto &u : wide.units)
    for (auto &g : u.gates) g += 2;
  wide.schedule = c.schedule;
  wide.validate();
  const Objective obj = energy(h);
  const double before = obj.evaluate(wide);
  const UpdateResult r = scf_update_pair(wide, wide.units[1], obj, 1e-12);
  const double after = obj.evaluate(wide);
  EXPECT_NEAR(after, r.predicted, 1e-9);
  EXPECT_LE(after, before + 1e-10);
  const UpdateResult again = scf_update_pair(wide, wide.units[1], obj, 1e-12);
  EXPECT_LT(r.predicted - again.predicted, 1e-8);
  EXPECT_GE(again.predicted, r.predicted - 1e-8);
}

TEST(Sweeps, ZeroSweepsRecordsInitialCost) {
  Circuit c = initialize(build_alt_ansatz(2, 1, BlockType::kCfqs, Connectivity::kNearestNeighbor), {}, 48);
  const Objective obj = energy(ising_hamiltonian(2, 1.0, 1.0 / std::sqrt(2.0), false));
  const Trajectory t = run_sweeps(c, obj, 0);
  ASSERT_EQ(t.records.size(), 1u);
  EXPECT_EQ(t.records[0].unit, -1);
  EXPECT_EQ(t.evaluations(), 0u);
  EXPECT_NEAR(t.final_cost(), obj.evaluate(c), 1e-15);
}

TEST(Sweeps, EvaluationCountsAndMonotonicity) {
  const Objective obj = energy(ising_hamiltonian(4, 1.0, 1.0 / std::sqrt(2.0), true));
  struct Case {
    BlockType block;
    std::size_t per_sweep;
  };
  for (const Case &k : {Case{BlockType::kFqs, 12 * 10}, Case{BlockType::kCfqs, 4 * (2 * 10 + 14)},
                        Case{BlockType::kScf, 4 * (10 + 35)}}) {
    Circuit c = initialize(build_alt_ansatz(4, 1, k.block, Connectivity::kNearestNeighbor), {}, 49);
    const Trajectory t = run_sweeps(c, obj, 3);
    EXPECT_EQ(t.records.size(), 1 + 3 * c.schedule.size());
    EXPECT_EQ(t.evaluations(), 3 * k.per_sweep);
    EXPECT_LE(t.max_increase, 1e-10);
    EXPECT_NEAR(t.final_cost(), obj.evaluate(c), 1e-12);
    for (std::size_t i = 1; i < t.records.size(); ++i) EXPECT_LE(t.records[i].cost, t.records[i - 1].cost + 1e-10);
  }
}

TEST(Sweeps, TwoQubitIsingApproachesGroundEnergy) {
  const PauliSum h = ising_hamiltonian(2, 1.0, 1.0 / std::sqrt(2.0), false);
  Circuit c = initialize(build_alt_ansatz(2, 1, BlockType::kCfqs, Connectivity::kNearestNeighbor), {}, 50);
  const Trajectory t = run_sweeps(c, energy(h), 60);
  EXPECT_NEAR(t.final_cost(), ground_energy(h), 1e-6);
}

TEST(Sweeps, EmptyScheduleThrows) {
  Circuit c(1);
  EXPECT_THROW(run_sweeps(c, energy(single_term(1.0, "Z")), 1), std::invalid_argument);
}
