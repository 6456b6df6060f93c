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

#include "qfqs/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace qfqs {

namespace {

constexpr double kClusterTolerance = 1e-10;
constexpr double kDegenerateTolerance = 1e-12;
constexpr double kTernaryWidth = 1e-13;
constexpr double kRootTolerance = 1e-12;
constexpr int kMaxBisection = 200;
constexpr int kMaxInnerIterations = 1000;

struct Group {
  double r = 0.0;
  double w = 0.0;
  Eigen::Vector4d u = Eigen::Vector4d::Zero();
  Eigen::Vector4d first = Eigen::Vector4d::Zero();
  bool active = false;
};

// Secular function with poles at the active eigenvalues; a point is stored as
// an offset from one pole so that roots close to it keep full precision.
class Secular {
 public:
  explicit Secular(std::vector<Group> poles) : poles_(std::move(poles)) {}

  std::size_t size() const { return poles_.size(); }
  const Group &pole(std::size_t k) const { return poles_[k]; }

  double f(std::size_t anchor, double delta) const {
    double s = -1.0;
    for (std::size_t j = 0; j < poles_.size(); ++j) {
      const double d = j == anchor ? delta : delta + (poles_[anchor].r - poles_[j].r);
      s += poles_[j].w / (d * d);
    }
    return s;
  }

  Eigen::Vector4d point(std::size_t anchor, double delta) const {
    Eigen::Vector4d q = Eigen::Vector4d::Zero();
    for (std::size_t j = 0; j < poles_.size(); ++j) {
      const double d = j == anchor ? delta : delta + (poles_[anchor].r - poles_[j].r);
      q += poles_[j].u / d;
    }
    return q;
  }

  // Root of a monotone branch on (lo, hi); `rising` gives the branch direction.
  double bisect(std::size_t anchor, double lo, double hi, bool rising) const {
    double best = 0.5 * (lo + hi);
    double best_abs = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kMaxBisection; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      const double fm = f(anchor, mid);
      if (std::abs(fm) < best_abs) {
        best_abs = std::abs(fm);
        best = mid;
      }
      if (best_abs < kRootTolerance) break;
      if ((fm < 0.0) == rising) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return best;
  }

  double interior_minimum(std::size_t k) const {
    const double gap = poles_[k + 1].r - poles_[k].r;
    double lo = 0.0, hi = gap;
    for (int it = 0; it < kMaxBisection && hi - lo > kTernaryWidth * gap; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (f(k, m1) < f(k, m2)) {
        hi = m2;
      } else {
        lo = m1;
      }
    }
    return 0.5 * (lo + hi);
  }

 private:
  std::vector<Group> poles_;
};

std::vector<Group> eigen_groups(const Eigen::Matrix4d &J, const Eigen::Vector4d &a) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(J);
  const Eigen::Vector4d r = solver.eigenvalues();
  const Eigen::Matrix4d n = solver.eigenvectors();
  const Eigen::Vector4d g = n.transpose() * a;
  const double cluster = kClusterTolerance * r.cwiseAbs().maxCoeff();
  const double eps_deg = kDegenerateTolerance * (1.0 + a.norm());
  std::vector<Group> groups;
  int members = 0;
  for (int i = 0; i < 4; ++i) {
    if (i == 0 || r[i] - r[i - 1] > cluster) {
      groups.emplace_back();
      groups.back().first = n.col(i);
      members = 0;
    }
    Group &grp = groups.back();
    grp.r = (grp.r * members + r[i]) / (members + 1);
    ++members;
    grp.w += g[i] * g[i];
    grp.u += g[i] * n.col(i);
  }
  for (auto &grp : groups) grp.active = std::sqrt(grp.w) > eps_deg;
  return groups;
}

struct Probe {
  Probe(const Circuit &c, const UpdateUnit &unit, const Objective &obj, std::uint64_t stream)
      : circuit(c), objective(obj), unit_gates(unit.gates), stream(stream), prefix(obj.initial) {
    first = *std::min_element(unit_gates.begin(), unit_gates.end());
    apply_circuit(prefix, circuit, 0, first, objective.offset, objective.conjugate);
    for (std::size_t g = first; g < circuit.gates.size(); ++g) {
      ops.push_back(lower_gate(circuit.gates[g], objective.offset, objective.conjugate));
    }
  }

  double run(const std::vector<Quaternion> &params) {
    Statevector state = prefix;
    for (std::size_t g = first; g < circuit.gates.size(); ++g) {
      const auto hit = std::find(unit_gates.begin(), unit_gates.end(), g);
      if (hit == unit_gates.end()) {
        apply(state, ops[g - first]);
        continue;
      }
      GateInstance trial = circuit.gates[g];
      trial.params = params[static_cast<std::size_t>(hit - unit_gates.begin())];
      apply(state, lower_gate(trial, objective.offset, objective.conjugate));
    }
    ++count;
    if (objective.sampled) return objective.sampled(state, stream * 1000003ULL + count);
    return objective.exact(state);
  }

  const Circuit &circuit;
  const Objective &objective;
  std::vector<std::size_t> unit_gates;
  std::uint64_t stream;
  Statevector prefix;
  std::size_t first = 0;
  std::vector<GateOp> ops;
  std::size_t count = 0;
};

}  // namespace

std::vector<SecularCandidate> secular_candidates(const Eigen::Matrix4d &J, const Eigen::Vector4d &a, double b) {
  const Eigen::Matrix4d js = 0.5 * (J + J.transpose());
  auto model = [&](const Eigen::Vector4d &q) { return q.dot(js * q) + 2.0 * a.dot(q) + b; };
  const std::vector<Group> groups = eigen_groups(js, a);
  std::vector<Group> active;
  for (const auto &grp : groups) {
    if (grp.active) active.push_back(grp);
  }
  const Secular sec(active);
  std::vector<SecularCandidate> out;

  auto add_root = [&](std::size_t anchor, double delta) {
    SecularCandidate c;
    c.lambda = sec.pole(anchor).r + delta;
    c.q = sec.point(anchor, delta).normalized();
    c.value = model(c.q);
    c.residual = std::abs(sec.f(anchor, delta));
    out.push_back(c);
  };

  const std::size_t m = sec.size();
  if (m > 0) {
    const double reach = a.norm() + 1.0;
    add_root(0, sec.bisect(0, -reach, 0.0, true));
    for (std::size_t k = 0; k + 1 < m; ++k) {
      const double gap = sec.pole(k + 1).r - sec.pole(k).r;
      const double s = sec.interior_minimum(k);
      const double fs = sec.f(k, s);
      if (std::abs(fs) < kRootTolerance) {
        add_root(k, s);
      } else if (fs < 0.0) {
        add_root(k, sec.bisect(k, 0.0, s, false));
        add_root(k + 1, sec.bisect(k + 1, s - gap, 0.0, true));
      }
    }
    add_root(m - 1, sec.bisect(m - 1, 0.0, reach, false));
  }

  for (const auto &grp : groups) {
    if (grp.active) continue;
    Eigen::Vector4d base = Eigen::Vector4d::Zero();
    for (const auto &pole : active) base += pole.u / (grp.r - pole.r);
    const double radicand = 1.0 - base.squaredNorm();
    if (radicand < -kRootTolerance) continue;
    const double t = std::sqrt(std::max(radicand, 0.0));
    const Eigen::Vector4d dir = grp.u.norm() > 0.0 ? Eigen::Vector4d(grp.u.normalized()) : grp.first;
    for (double sign : {1.0, -1.0}) {
      Eigen::Vector4d q = base + sign * t * dir;
      if (q.norm() == 0.0) continue;
      SecularCandidate c;
      c.lambda = grp.r;
      c.q = q.normalized();
      c.value = model(c.q);
      c.hard_case = true;
      out.push_back(c);
      if (t == 0.0) break;
    }
  }
  return out;
}

SecularSolution minimize_quadratic_sphere(const Eigen::Matrix4d &J, const Eigen::Vector4d &a, double b) {
  const auto candidates = secular_candidates(J, a, b);
  if (candidates.empty()) throw std::logic_error("secular solver produced no candidates");
  const SecularCandidate *best = &candidates.front();
  for (const auto &c : candidates) {
    const double tie = 1e-12 * (1.0 + std::abs(best->value));
    if (c.value < best->value - tie || (std::abs(c.value - best->value) <= tie && c.lambda < best->lambda)) {
      best = &c;
    }
  }
  SecularSolution sol;
  sol.lambda = best->lambda;
  sol.q_star = Quaternion::from_vector(best->q);
  sol.value = best->value;
  sol.hard_case = best->hard_case;
  sol.residual = best->residual;
  sol.root_count = static_cast<std::size_t>(
      std::count_if(candidates.begin(), candidates.end(), [](const SecularCandidate &c) { return !c.hard_case; }));
  return sol;
}

std::string method_name(UpdateMethod method) {
  switch (method) {
    case UpdateMethod::kFqs: return "fqs";
    case UpdateMethod::kCfqs: return "cfqs";
    case UpdateMethod::kScf: return "scf-cfqs";
  }
  return "?";
}

UpdateMethod parse_method(const std::string &text) {
  if (text == "fqs") return UpdateMethod::kFqs;
  if (text == "cfqs") return UpdateMethod::kCfqs;
  if (text == "scf-cfqs" || text == "scf") return UpdateMethod::kScf;
  throw std::invalid_argument("unknown method '" + text + "'");
}

UpdateMethod method_for(UnitKind kind) {
  switch (kind) {
    case UnitKind::kSingle: return UpdateMethod::kFqs;
    case UnitKind::kControlled: return UpdateMethod::kCfqs;
    case UnitKind::kPair: return UpdateMethod::kScf;
  }
  return UpdateMethod::kFqs;
}

UpdateResult update_single_gate(Circuit &circuit, const UpdateUnit &unit, const Objective &objective,
                                UpdateMethod method, std::uint64_t stream) {
  if (unit.kind == UnitKind::kPair || method == UpdateMethod::kScf || method_for(unit.kind) != method) {
    throw std::invalid_argument("unit kind does not match update method " + method_name(method));
  }
  Probe probe(circuit, unit, objective, stream);
  auto evaluator = [&](const Quaternion &q) { return probe.run({q}); };
  GateInstance &gate = circuit.gates[unit.gates[0]];
  UpdateResult result;
  SecularSolution sol;
  if (method == UpdateMethod::kFqs) {
    const SingleModel model = estimate_single(evaluator);
    result.previous = model.predict(gate.params);
    sol = minimize_quadratic_sphere(model.J, Eigen::Vector4d::Zero(), 0.0);
    sol.q_star = sol.q_star.canonical();
  } else {
    const ControlledModel model = estimate_controlled(evaluator);
    result.previous = model.predict(gate.params);
    sol = minimize_quadratic_sphere(model.J, model.a, model.b);
  }
  result.evaluations = probe.count;
  result.inner_solves = 1;
  if (sol.value <= result.previous) {
    gate.params = sol.q_star;
    result.predicted = sol.value;
  } else {
    result.predicted = result.previous;
  }
  return result;
}

UpdateResult scf_update_pair(Circuit &circuit, const UpdateUnit &unit, const Objective &objective,
                             double threshold, std::uint64_t stream) {
  if (unit.kind != UnitKind::kPair) throw std::invalid_argument("scf_update_pair needs a pair unit");
  Probe probe(circuit, unit, objective, stream);
  const PairModel model = estimate_pair([&](const Quaternion &p, const Quaternion &q) { return probe.run({p, q}); });
  Quaternion p = circuit.gates[unit.gates[0]].params;
  Quaternion q = circuit.gates[unit.gates[1]].params;
  UpdateResult result;
  result.evaluations = probe.count;
  result.previous = model.predict(p, q);
  double y = result.previous;
  std::optional<Eigen::Vector4d> last_linear[2];
  int side = 0;
  int stalled = 0;
  for (int it = 0; it < kMaxInnerIterations && stalled < 2; ++it, side ^= 1) {
    const ControlledModel slice = side == 0 ? model.p_slice(q) : model.q_slice(p);
    // Same linear term as this side's last solve: its argmin is already in place.
    if (last_linear[side] && (slice.a - *last_linear[side]).norm() <= 1e-15 * (1.0 + slice.a.norm())) {
      ++stalled;
      continue;
    }
    last_linear[side] = slice.a;
    ++result.inner_solves;
    const SecularSolution sol = minimize_quadratic_sphere(slice.J, slice.a, slice.b);
    double improvement = 0.0;
    if (sol.value < y) {
      improvement = y - sol.value;
      y = sol.value;
      (side == 0 ? p : q) = sol.q_star;
    }
    stalled = improvement > threshold ? 0 : stalled + 1;
  }
  circuit.gates[unit.gates[0]].params = p;
  circuit.gates[unit.gates[1]].params = q;
  result.predicted = y;
  return result;
}

Trajectory run_sweeps(Circuit &circuit, const CostSchedule &costs, std::size_t sweeps, const SweepOptions &options) {
  if (circuit.schedule.empty()) throw std::invalid_argument("circuit has an empty update schedule");
  Trajectory traj;
  std::size_t evaluations = 0;
  double last = costs.at(0).evaluate(circuit);
  traj.records.push_back({0, -1, last, 0});
  std::uint64_t update_index = 0;
  for (std::size_t s = 0; s < sweeps; ++s) {
    const Objective &objective = costs.at(s);
    if (s > 0 && s == costs.switch_after) {
      last = objective.evaluate(circuit);
      traj.records.push_back({s, -1, last, evaluations});
      traj.switch_sweep = static_cast<long>(s);
    }
    for (std::size_t pos = 0; pos < circuit.schedule.size(); ++pos) {
      const UpdateUnit unit = circuit.units[circuit.schedule[pos]];
      const std::uint64_t stream = options.seed * 0x9E3779B97F4A7C15ULL + (++update_index);
      UpdateResult r;
      switch (unit.kind) {
        case UnitKind::kSingle:
          r = update_single_gate(circuit, unit, objective, UpdateMethod::kFqs, stream);
          ++traj.fqs_updates;
          break;
        case UnitKind::kControlled:
          r = update_single_gate(circuit, unit, objective, UpdateMethod::kCfqs, stream);
          ++traj.cfqs_updates;
          break;
        case UnitKind::kPair:
          r = scf_update_pair(circuit, unit, objective, options.threshold, stream);
          ++traj.scf_updates;
          break;
      }
      evaluations += r.evaluations;
      const double cost = objective.evaluate(circuit);
      traj.max_increase = std::max(traj.max_increase, cost - last);
      last = cost;
      traj.records.push_back({s + 1, static_cast<long>(pos), cost, evaluations});
    }
  }
  return traj;
}

Trajectory run_sweeps(Circuit &circuit, const Objective &objective, std::size_t sweeps, const SweepOptions &options) {
  return run_sweeps(circuit, CostSchedule::constant(objective), sweeps, options);
}

}  // namespace qfqs
