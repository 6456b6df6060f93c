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

#include "qfqs/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "qfqs/costs.hpp"
#include "qfqs/experiment.hpp"
#include "qfqs/io.hpp"
#include "qfqs/landscape.hpp"
#include "qfqs/optimizer.hpp"

namespace qfqs {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::uint64_t kTargetSeed = 20260;

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

double uniform(std::mt19937_64 &rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Circuit with_params(Circuit c, std::size_t gate, const Quaternion &q) {
  c.gates[gate].params = q;
  return c;
}

struct TimedCheck {
  CheckResult result;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  TimedCheck(int id, std::string name) {
    result.id = id;
    result.name = std::move(name);
  }
  CheckResult finish(bool passed, std::string detail) {
    result.passed = passed;
    result.detail = std::move(detail);
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
  }
};

Objective random_objective(unsigned n, std::mt19937_64 &rng, int kind) {
  switch (kind) {
    case 0:
      return vqe_objective(random_pauli_sum(n, 6, rng));
    case 1:
      return fidelity_objective(random_state(n, rng()));
    case 2:
      return compile_objective(haar_unitary(n, rng), CompileMode::kGlobal, SubspaceBasis::full(n));
    default:
      return compile_objective(haar_unitary(n, rng), CompileMode::kLocal, SubspaceBasis::full(n));
  }
}

bool non_increasing(const Trajectory &t, double tol, double &worst) {
  bool ok = true;
  for (std::size_t k = 1; k < t.records.size(); ++k) {
    const auto &r = t.records[k];
    if (r.unit < 0) continue;
    const double step = r.cost - t.records[k - 1].cost;
    worst = std::max(worst, step);
    if (step > tol) ok = false;
  }
  return ok;
}

struct MethodSetup {
  UpdateMethod method;
  BlockType block;
  InitPolicy init;
};

ExperimentConfig ising_config(unsigned n, unsigned layers, const MethodSetup &m, std::size_t sweeps) {
  ExperimentConfig c;
  c.experiment = ExperimentKind::kVqeIsing;
  c.n_qubits = n;
  c.layers = layers;
  c.method = m.method;
  c.block = m.block;
  c.init.policy = m.init;
  c.sweeps = sweeps;
  c.periodic = true;
  return c;
}

struct CompileOutcome {
  PauliSum hamiltonian{4};
  std::vector<double> finals;
  std::vector<Circuit> circuits;
  std::size_t best = 0;
};

ExperimentConfig compile_config(std::size_t sweeps) {
  ExperimentConfig c;
  c.experiment = ExperimentKind::kCompile;
  c.n_qubits = 4;
  c.layers = 1;
  c.method = UpdateMethod::kCfqs;
  c.block = BlockType::kCfqs;
  c.final_singles = true;
  c.init.policy = InitPolicy::kWarmStart;
  c.init.angle_max = kPi / 18.0;
  c.sweeps = sweeps;
  c.switch_after = 5;
  c.time = 1.0 / 16.0;
  return c;
}

const CompileOutcome &near_identity_compilation(const CheckScale &scale) {
  static std::map<std::pair<std::size_t, std::size_t>, CompileOutcome> cache;
  const auto key = std::make_pair(scale.compile_seeds, scale.compile_sweeps);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  CompileOutcome out;
  std::mt19937_64 rng(kTargetSeed);
  out.hamiltonian = random_two_local(4, rng);
  const ExperimentConfig cfg = compile_config(scale.compile_sweeps);
  const CostSchedule costs = make_cost_schedule(
      CompileSpec{time_evolution(out.hamiltonian, cfg.time), SubspaceBasis::full(4), cfg.switch_after});
  for (std::size_t s = 0; s < scale.compile_seeds; ++s) {
    SeedResult r = run_seed(cfg, costs, s);
    out.finals.push_back(r.trajectory.final_cost());
    out.circuits.push_back(std::move(r.circuit));
    if (out.finals.back() < out.finals[out.best]) out.best = out.finals.size() - 1;
  }
  return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace

CheckScale CheckScale::quick() {
  CheckScale s;
  s.tomography_circuits = 10;
  s.tomography_points = 20;
  s.secular_problems = 500;
  s.secular_samples = 20000;
  s.ising_qubits = 6;
  s.ising_layers = {2};
  s.ising_sweeps = 30;
  s.ising_seeds = 3;
  s.compile_seeds = 2;
  s.compile_sweeps = 15;
  s.subspace_seeds = 2;
  s.subspace_sweeps = 12;
  s.sandwich_pairs = 20;
  s.dynamics_steps = 50;
  s.algebra_draws = 100;
  s.kernel_draws = 1000;
  return s;
}

Eigen::MatrixXcd haar_unitary(unsigned n_qubits, std::mt19937_64 &rng) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd z(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) z(r, c) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < dim; ++k) q.col(k) *= r(k, k) / std::abs(r(k, k));
  return q;
}

PauliSum random_pauli_sum(unsigned n_qubits, std::size_t terms, std::mt19937_64 &rng) {
  static const char kLetters[] = "IXYZ";
  PauliSum h(n_qubits);
  std::uniform_int_distribution<int> letter(0, 3);
  for (std::size_t t = 0; t < terms; ++t) {
    std::string s(n_qubits, 'I');
    for (char &ch : s) ch = kLetters[letter(rng)];
    h.add(uniform(rng, -1.0, 1.0), s);
  }
  return h;
}

PauliSum random_two_local(unsigned n_qubits, std::mt19937_64 &rng) {
  static const char kAxes[] = "XYZ";
  PauliSum h(n_qubits);
  const unsigned edges = n_qubits == 2 ? 1 : n_qubits;
  for (unsigned e = 0; e < edges; ++e) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        std::string s(n_qubits, 'I');
        s[e] = kAxes[a];
        s[(e + 1) % n_qubits] = kAxes[b];
        h.add(uniform(rng, -1.0, 1.0), s);
      }
    }
  }
  for (unsigned q = 0; q < n_qubits; ++q) {
    for (int a = 0; a < 3; ++a) {
      std::string s(n_qubits, 'I');
      s[q] = kAxes[a];
      h.add(uniform(rng, -1.0, 1.0), s);
    }
  }
  return h;
}

Circuit random_test_circuit(unsigned n_qubits, std::mt19937_64 &rng, int forced) {
  Circuit c(n_qubits);
  std::uniform_int_distribution<int> pick(0, 3);
  for (unsigned layer = 0; layer < 2; ++layer) {
    for (unsigned q = 0; q < n_qubits; ++q) c.add_unit_gate(make_single(q, random_quaternion(rng)));
    for (unsigned a = 0; a + 1 < n_qubits; ++a) {
      const int kind = layer == 0 && a == 0 && forced >= 0 ? forced : pick(rng);
      const bool flip = pick(rng) % 2 == 1;
      const unsigned x = flip ? a + 1 : a;
      const unsigned y = flip ? a : a + 1;
      switch (kind) {
        case 0: {
          GateInstance g = make_controlled(x, y, random_quaternion(rng));
          g.angle = uniform(rng, -kPi, kPi);
          c.add_unit_gate(std::move(g));
          break;
        }
        case 1:
          c.add_pair(make_controlled(x, y, random_quaternion(rng), true, Polarity::kControlOnZero),
                     make_controlled(x, y, random_quaternion(rng)));
          break;
        case 2:
          c.add_unit_gate(make_number_preserving(x, y, random_quaternion(rng)));
          break;
        default:
          c.add_gate(make_fixed(GateKind::kFixedCZ, {x, y}));
          break;
      }
    }
  }
  c.validate();
  return c;
}

Eigen::MatrixXcd particle_conserving_hamiltonian(std::mt19937_64 &rng) {
  const PauliSum diag = [&] {
    PauliSum h(4);
    for (unsigned q = 0; q < 4; ++q) {
      std::string s(4, 'I');
      s[q] = 'Z';
      h.add(uniform(rng, -1.0, 1.0), s);
    }
    for (unsigned a = 0; a < 4; ++a) {
      for (unsigned b = a + 1; b < 4; ++b) {
        std::string s(4, 'I');
        s[a] = s[b] = 'Z';
        h.add(uniform(rng, -1.0, 1.0), s);
      }
    }
    return h;
  }();
  Eigen::MatrixXcd m = dense_matrix(diag);
  const std::pair<const char *, const char *> exchanges[] = {{"0101", "1010"}, {"0110", "1001"}, {"0011", "1100"}};
  for (const auto &[u, v] : exchanges) {
    const auto i = static_cast<Eigen::Index>(bitstring_index(u));
    const auto j = static_cast<Eigen::Index>(bitstring_index(v));
    const Complex w(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
    m(i, j) += w;
    m(j, i) += std::conj(w);
  }
  return m;
}

CheckResult check_tomography(const CheckScale &scale) {
  TimedCheck timer(1, "tomography exactness");
  std::mt19937_64 rng(101);
  double worst = 0.0;
  std::size_t fits = 0;
  for (std::size_t k = 0; k < scale.tomography_circuits; ++k) {
    const unsigned n = 2 + static_cast<unsigned>(k % 3);
    const Circuit circuit = random_test_circuit(n, rng, static_cast<int>(k % 3));
    const Objective objective = random_objective(n, rng, static_cast<int>(k % 4));
    std::map<UnitKind, std::vector<std::size_t>> by_kind;
    for (std::size_t u = 0; u < circuit.units.size(); ++u) by_kind[circuit.units[u].kind].push_back(u);
    for (const auto &[kind, list] : by_kind) {
      const UpdateUnit &unit = circuit.units[list[std::uniform_int_distribution<std::size_t>(0, list.size() - 1)(rng)]];
      ++fits;
      if (kind == UnitKind::kPair) {
        const std::size_t gp = unit.gates[0];
        const std::size_t gq = unit.gates[1];
        auto cost = [&](const Quaternion &p, const Quaternion &q) {
          return objective.evaluate(with_params(with_params(circuit, gp, p), gq, q));
        };
        const PairModel model = estimate_pair(cost);
        for (std::size_t t = 0; t < scale.tomography_points; ++t) {
          const Quaternion p = random_quaternion(rng);
          const Quaternion q = random_quaternion(rng);
          worst = std::max(worst, std::abs(model.predict(p, q) - cost(p, q)));
        }
        continue;
      }
      const std::size_t g = unit.gates[0];
      auto cost = [&](const Quaternion &q) { return objective.evaluate(with_params(circuit, g, q)); };
      std::function<double(const Quaternion &)> predict;
      if (kind == UnitKind::kSingle) {
        const SingleModel model = estimate_single(cost);
        predict = [model](const Quaternion &q) { return model.predict(q); };
      } else {
        const ControlledModel model = estimate_controlled(cost);
        predict = [model](const Quaternion &q) { return model.predict(q); };
      }
      for (std::size_t t = 0; t < scale.tomography_points; ++t) {
        const Quaternion q = random_quaternion(rng);
        worst = std::max(worst, std::abs(predict(q) - cost(q)));
      }
    }
  }
  return timer.finish(worst < 1e-9, std::to_string(scale.tomography_circuits) + " circuits, " +
                                        std::to_string(fits) + " fits, max error " + fmt(worst));
}

CheckResult check_secular(const CheckScale &scale) {
  TimedCheck timer(2, "secular-solver optimality");
  std::mt19937_64 rng(202);
  std::normal_distribution<double> normal;
  constexpr int kPools = 8;
  std::vector<Eigen::Matrix4Xd> pools;
  for (int p = 0; p < kPools; ++p) {
    Eigen::Matrix4Xd pool(4, static_cast<Eigen::Index>(scale.secular_samples));
    for (Eigen::Index c = 0; c < pool.cols(); ++c) pool.col(c) = random_quaternion(rng).vector();
    pools.push_back(std::move(pool));
  }
  double worst_gap = -1e300;
  double worst_residual = 0.0;
  double worst_value_error = 0.0;
  std::size_t max_roots = 0;
  std::size_t hard = 0;
  for (std::size_t k = 0; k < scale.secular_problems; ++k) {
    Eigen::Matrix4d basis;
    for (int i = 0; i < 16; ++i) basis(i / 4, i % 4) = normal(rng);
    const Eigen::Matrix4d rot = Eigen::HouseholderQR<Eigen::Matrix4d>(basis).householderQ();
    Eigen::Vector4d r;
    for (int i = 0; i < 4; ++i) r[i] = normal(rng);
    Eigen::Vector4d a;
    for (int i = 0; i < 4; ++i) a[i] = normal(rng);
    switch (k % 6) {
      case 1:
        r[1] = r[0];
        break;
      case 2:
        r[1] = r[2] = r[0];
        break;
      case 3: {
        // degenerate lowest pair with the linear term orthogonal to it
        std::sort(r.data(), r.data() + 4);
        r[1] = r[0];
        a = rot * Eigen::Vector4d(0.0, 0.0, normal(rng), normal(rng)) * 0.1;
        break;
      }
      case 4:
        std::sort(r.data(), r.data() + 4);
        a = rot * Eigen::Vector4d(0.0, normal(rng), normal(rng), normal(rng)) * 0.05;
        break;
      case 5:
        a.setZero();
        break;
      default:
        a = rot * a * std::exp(uniform(rng, -3.0, 2.0));
        break;
    }
    if (k % 6 != 0 && k % 6 != 3 && k % 6 != 4) a = rot * a;
    const Eigen::Matrix4d J = rot * r.asDiagonal() * rot.transpose();
    const double b = normal(rng);
    const SecularSolution sol = minimize_quadratic_sphere(J, a, b);
    const Eigen::Matrix4Xd &pool = pools[k % kPools];
    const double brute = ((pool.array() * (J * pool).array()).colwise().sum() +
                          2.0 * (a.transpose() * pool).array())
                             .minCoeff() +
                         b;
    const Eigen::Vector4d q = sol.q_star.vector();
    worst_value_error = std::max(worst_value_error, std::abs(q.dot(J * q) + 2.0 * a.dot(q) + b - sol.value));
    worst_gap = std::max(worst_gap, sol.value - brute);
    for (const auto &cand : secular_candidates(J, a, b)) {
      if (!cand.hard_case) worst_residual = std::max(worst_residual, cand.residual);
    }
    if (!sol.hard_case) worst_residual = std::max(worst_residual, sol.residual);
    if (sol.hard_case) ++hard;
    max_roots = std::max(max_roots, sol.root_count);
  }
  const bool ok = worst_gap <= 1e-9 && worst_residual < 1e-10 && worst_value_error < 1e-9 && max_roots <= 8;
  return timer.finish(ok, std::to_string(scale.secular_problems) + " problems (" + std::to_string(hard) +
                              " hard case), max(analytic - brute) " + fmt(worst_gap) + ", max |f| " +
                              fmt(worst_residual) + ", value error " + fmt(worst_value_error) + ", max roots " +
                              std::to_string(max_roots));
}

CheckResult check_monotone(const CheckScale &scale) {
  TimedCheck timer(3, "monotone descent");
  std::mt19937_64 rng(303);
  double worst = -1e300;
  std::size_t runs = 0;
  bool ok = true;
  auto record = [&](const Trajectory &t) {
    ++runs;
    if (!non_increasing(t, 1e-10, worst)) ok = false;
  };
  const std::size_t sweeps = 3;
  const MethodSetup setups[] = {{UpdateMethod::kFqs, BlockType::kFqs, InitPolicy::kRandom},
                                {UpdateMethod::kCfqs, BlockType::kCfqs, InitPolicy::kRandom},
                                {UpdateMethod::kCfqs, BlockType::kCfqs, InitPolicy::kCzInit},
                                {UpdateMethod::kCfqs, BlockType::kNumberPreserving, InitPolicy::kWarmStart},
                                {UpdateMethod::kScf, BlockType::kScf, InitPolicy::kRandom},
                                {UpdateMethod::kScf, BlockType::kScf, InitPolicy::kCzInit}};
  for (unsigned n : {2u, 4u}) {
    for (const auto &m : setups) {
      for (int cost_kind = 0; cost_kind < 5; ++cost_kind) {
        Circuit c = initialize(build_alt_ansatz(n, 2, m.block, Connectivity::kNearestNeighbor),
                               InitOptions{m.init, kPi / 18.0}, rng());
        CostSchedule costs;
        if (cost_kind == 0) {
          costs = CostSchedule::constant(vqe_objective(ising_hamiltonian(n, 1.0, 1.0 / std::sqrt(2.0), true)));
        } else if (cost_kind == 4) {
          costs = make_cost_schedule(CompileSpec{haar_unitary(n, rng), SubspaceBasis::full(n), 2});
        } else {
          costs = CostSchedule::constant(random_objective(n, rng, cost_kind - 1));
        }
        record(run_sweeps(c, costs, sweeps, {1e-10, rng()}));
      }
    }
  }
  for (Connectivity conn : {Connectivity::kAllToAll, Connectivity::kSpinPreserving}) {
    Circuit c = initialize(build_alt_ansatz(4, 1, BlockType::kNumberPreserving, conn), {}, rng());
    record(run_sweeps(c, fidelity_objective(dicke_state(4, 2)), sweeps, {1e-10, rng()}));
  }
  for (unsigned n : {2u, 3u, 4u}) {
    for (int cost_kind = 0; cost_kind < 4; ++cost_kind) {
      Circuit c = random_test_circuit(n, rng);
      record(run_sweeps(c, random_objective(n, rng, cost_kind), sweeps, {1e-10, rng()}));
    }
  }
  return timer.finish(ok, std::to_string(runs) + " trajectories, largest step increase " + fmt(worst));
}

CheckResult check_two_qubit_ising(const CheckScale &) {
  TimedCheck timer(4, "2-qubit Ising VQE");
  const PauliSum h = ising_hamiltonian(2, 1.0, 1.0 / std::sqrt(2.0), false);
  const double e0 = ground_energy(h);
  const Objective obj = vqe_objective(h);
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Circuit c = initialize(build_alt_ansatz(2, 1, BlockType::kCfqs, Connectivity::kNearestNeighbor), {}, seed);
    const Trajectory t = run_sweeps(c, obj, 5, {1e-10, seed});
    worst = std::max(worst, t.final_cost() - e0);
  }
  return timer.finish(std::abs(worst) < 1e-8,
                      "5 seeds, 5 sweeps, E0 " + std::to_string(e0) + ", worst gap " + fmt(worst));
}

CheckResult check_ising_ordering(const CheckScale &scale) {
  TimedCheck timer(5, "Ising method ordering");
  const MethodSetup fqs{UpdateMethod::kFqs, BlockType::kFqs, InitPolicy::kRandom};
  const MethodSetup cfqs{UpdateMethod::kCfqs, BlockType::kCfqs, InitPolicy::kRandom};
  const MethodSetup scf{UpdateMethod::kScf, BlockType::kScf, InitPolicy::kRandom};
  bool ok = true;
  std::ostringstream detail;
  for (unsigned layers : scale.ising_layers) {
    std::vector<ExperimentResult> res;
    for (const auto &m : {fqs, cfqs, scf}) {
      ExperimentConfig cfg = ising_config(scale.ising_qubits, layers, m, scale.ising_sweeps);
      cfg.seeds.clear();
      for (std::size_t s = 0; s < scale.ising_seeds; ++s) cfg.seeds.push_back(s);
      res.push_back(run_experiment(cfg));
    }
    auto gap_ok = [](const ExperimentResult &lower, const ExperimentResult &upper, double &gap, double &se) {
      gap = lower.mean_final() - upper.mean_final();
      se = std::hypot(lower.standard_error(), upper.standard_error());
      return gap <= se;
    };
    double g1, s1, g2, s2;
    const bool a = gap_ok(res[1], res[0], g1, s1);
    const bool b = gap_ok(res[2], res[1], g2, s2);
    ok = ok && a && b;
    detail << "L=" << layers << ": FQS " << res[0].mean_final() << ", cFQS " << res[1].mean_final() << ", SCF "
           << res[2].mean_final() << " (cFQS-FQS " << fmt(g1) << " vs SE " << fmt(s1) << ", SCF-cFQS " << fmt(g2)
           << " vs SE " << fmt(s2) << "); ";
  }
  detail << "E0 " << ground_energy(ising_hamiltonian(scale.ising_qubits, 1.0, 1.0 / std::sqrt(2.0), true));
  return timer.finish(ok, detail.str());
}

CheckResult check_compilation(const CheckScale &scale) {
  TimedCheck timer(6, "near-identity compilation");
  const CompileOutcome &out = near_identity_compilation(scale);
  const double best = out.finals[out.best];

  ExperimentConfig cfg = compile_config(3);
  cfg.switch_after = 0;
  const CostSchedule identity = make_cost_schedule(
      CompileSpec{DenseUnitary::Identity(16, 16), SubspaceBasis::full(4), 0});
  double worst_identity = 0.0;
  for (std::size_t s = 0; s < scale.compile_seeds; ++s) {
    worst_identity = std::max(worst_identity, run_seed(cfg, identity, s).trajectory.final_cost());
  }
  return timer.finish(best < 1e-3 && worst_identity < 1e-10,
                      "best C_HST " + fmt(best) + " over " + std::to_string(out.finals.size()) + " seeds after " +
                          std::to_string(scale.compile_sweeps) + " sweeps; identity target worst " +
                          fmt(worst_identity) + " after 3 sweeps");
}

CheckResult check_subspace_ordering(const CheckScale &scale) {
  TimedCheck timer(7, "subspace ordering");
  std::mt19937_64 rng(kTargetSeed + 7);
  const DenseUnitary target = hermitian_exponential(particle_conserving_hamiltonian(rng), 1.0);
  const std::vector<SubspaceBasis> bases = {SubspaceBasis::full(4), SubspaceBasis::hamming_weight(4, 2),
                                            dicke_basis(2, 1, 1), SubspaceBasis(4, {"0101", "1010"})};
  ExperimentConfig cfg;
  cfg.n_qubits = 4;
  cfg.layers = 2;
  cfg.method = UpdateMethod::kCfqs;
  cfg.block = BlockType::kCfqs;
  cfg.final_singles = true;
  cfg.sweeps = scale.subspace_sweeps;
  std::vector<double> means;
  for (const auto &basis : bases) {
    const CostSchedule costs = make_cost_schedule(CompileSpec{target, basis, 5});
    double sum = 0.0;
    for (std::size_t s = 0; s < scale.subspace_seeds; ++s) sum += run_seed(cfg, costs, s).trajectory.final_cost();
    means.push_back(sum / static_cast<double>(scale.subspace_seeds));
  }
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t k = 0; k < means.size(); ++k) {
    if (k > 0 && means[k] > means[k - 1] + 1e-10) ok = false;
    detail << "|W|=" << bases[k].size() << ": " << fmt(means[k]) << (k + 1 < means.size() ? ", " : "");
  }
  return timer.finish(ok, detail.str());
}

CheckResult check_hst_sandwich(const CheckScale &scale) {
  TimedCheck timer(8, "HST sandwich");
  std::mt19937_64 rng(808);
  double worst = -1e300;
  for (std::size_t k = 0; k < scale.sandwich_pairs; ++k) {
    const unsigned n = 2 + static_cast<unsigned>(k % 2);
    const Circuit v = random_test_circuit(n, rng);
    const DenseUnitary u = haar_unitary(n, rng);
    const double global = hst_global_cost(v, u);
    const double local = lhst_local_cost(v, u);
    worst = std::max({worst, local - global, global - n * local});
  }
  return timer.finish(worst <= 1e-10, std::to_string(scale.sandwich_pairs) + " pairs, max violation " + fmt(worst));
}

CheckResult check_dynamics(const CheckScale &scale) {
  TimedCheck timer(9, "dynamics consistency");
  const CompileOutcome &out = near_identity_compilation(scale);
  const double dt = 1.0 / 16.0;
  const double t_max = dt * static_cast<double>(scale.dynamics_steps);
  const Statevector psi = Statevector::basis_state(4, bitstring_index("0101"));
  const auto exact = dynamics_infidelity(time_evolution(out.hamiltonian, dt), out.hamiltonian, t_max, dt, psi);
  double worst = 0.0;
  for (const auto &p : exact) worst = std::max(worst, std::abs(p.second));
  const auto compiled = dynamics_infidelity(out.circuits[out.best], out.hamiltonian, t_max, dt, psi);
  double last = compiled.back().second;
  const bool series_ok = compiled.size() == scale.dynamics_steps + 1 && compiled.front().first == 0.0 &&
                         compiled.front().second == 0.0;
  return timer.finish(worst < 1e-10 && exact.size() == scale.dynamics_steps + 1 && series_ok,
                      std::to_string(scale.dynamics_steps) + " steps, exact-step max infidelity " + fmt(worst) +
                          "; compiled series " + std::to_string(compiled.size()) + " points, 1-F(0) = " +
                          fmt(compiled.front().second) + ", 1-F(t_max) = " + fmt(last));
}

CheckResult check_gate_algebra(const CheckScale &scale) {
  TimedCheck timer(10, "gate algebra");
  std::mt19937_64 rng(1010);
  double np_err = 0.0;
  double decomp_err = 0.0;
  double angle_err = 0.0;
  for (std::size_t k = 0; k < scale.algebra_draws; ++k) {
    const Quaternion q = random_quaternion(rng);
    const unsigned n = 2 + static_cast<unsigned>(k % 2);
    const unsigned a = static_cast<unsigned>(k % n);
    const unsigned b = (a + 1 + static_cast<unsigned>((k / 2) % (n - 1))) % n;

    Circuit np(n);
    np.add_gate(make_number_preserving(a, b, q, false));
    Circuit sandwich(n);
    sandwich.add_gate(make_fixed(GateKind::kFixedCNOT, {b, a}));
    sandwich.add_gate(make_controlled(a, b, q, false));
    sandwich.add_gate(make_fixed(GateKind::kFixedCNOT, {b, a}));
    np_err = std::max(np_err, (circuit_unitary(np) - circuit_unitary(sandwich)).cwiseAbs().maxCoeff());

    Circuit gates(n);
    GateInstance cu = make_controlled(a, b, q, false);
    cu.angle = uniform(rng, -kPi, kPi);
    gates.add_gate(cu);
    gates.add_gate(make_controlled(b, a, random_quaternion(rng), false, Polarity::kControlOnZero));
    gates.add_gate(make_single(a, q, false));
    decomp_err = std::max(decomp_err, (circuit_unitary(gates) - circuit_unitary(expand_circuit(gates))).cwiseAbs().maxCoeff());

    const ControlledAngles ang = decompose_controlled(q);
    angle_err = std::max(angle_err, (quaternion_from_angles(ang.beta, ang.gamma, ang.delta).vector() - q.vector()).cwiseAbs().maxCoeff());
  }
  double kernel = 0.0;
  const Vector15d k15 = controlled_kernel_row();
  const Vector36d k36 = pair_kernel_row();
  for (std::size_t k = 0; k < scale.kernel_draws; ++k) {
    const Quaternion p = random_quaternion(rng);
    const Quaternion q = random_quaternion(rng);
    kernel = std::max({kernel, std::abs(k15.dot(embed_controlled(q))), std::abs(k36.dot(embed_pair(p, q)))});
  }
  const bool ok = np_err < 1e-10 && decomp_err < 1e-10 && angle_err < 1e-10 && kernel < 1e-12;
  return timer.finish(ok, "U_NP vs CNOT-CU-CNOT " + fmt(np_err) + ", decomposition " + fmt(decomp_err) +
                              ", angle roundtrip " + fmt(angle_err) + " (" + std::to_string(scale.algebra_draws) +
                              " draws); kernel rows " + fmt(kernel) + " (" + std::to_string(scale.kernel_draws) +
                              " draws)");
}

std::vector<CheckResult> run_checks(const CheckScale &scale, const std::vector<int> &ids) {
  using Fn = CheckResult (*)(const CheckScale &);
  static const Fn kChecks[] = {check_tomography,        check_secular,     check_monotone,       check_two_qubit_ising,
                               check_ising_ordering,    check_compilation, check_subspace_ordering,
                               check_hst_sandwich,      check_dynamics,    check_gate_algebra};
  std::vector<CheckResult> out;
  for (int id = 1; id <= 10; ++id) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), id) == ids.end()) continue;
    out.push_back(kChecks[id - 1](scale));
  }
  return out;
}

std::string format_check(const CheckResult &r) {
  std::ostringstream s;
  s << "CRITERION " << r.id << ' ' << (r.passed ? "PASS" : "FAIL") << ": " << r.name << " | " << r.detail << " | "
    << std::fixed;
  s.precision(1);
  s << r.seconds << " s";
  return s.str();
}

}  // namespace qfqs
