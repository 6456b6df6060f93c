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

#include "qfqs/costs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qfqs {

namespace {

std::string read_file(const std::string &path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

std::vector<unsigned> register_a(unsigned n) {
  std::vector<unsigned> q(n);
  for (unsigned k = 0; k < n; ++k) q[k] = k;
  return q;
}

void check_target(const DenseUnitary &target, unsigned n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (target.rows() != dim || target.cols() != dim) {
    throw std::invalid_argument("target unitary dimension " + std::to_string(target.rows()) +
                                " does not match 2^" + std::to_string(n));
  }
}

double local_fidelity_mean(const Statevector &state, unsigned n) {
  const auto &psi = state.amplitudes();
  const std::size_t dim = state.dim();
  double total = 0.0;
  for (unsigned j = 0; j < n; ++j) {
    const std::size_t ja = std::size_t{1} << j;
    const std::size_t jb = std::size_t{1} << (n + j);
    double f = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & (ja | jb)) continue;
      f += std::norm(psi[static_cast<Eigen::Index>(i)] + psi[static_cast<Eigen::Index>(i | ja | jb)]);
    }
    total += 0.5 * f;
  }
  return total / n;
}

std::size_t step_count(double t_max, double dt) {
  if (!(dt > 0.0) || t_max < 0.0) throw std::invalid_argument("dynamics needs dt > 0 and t_max >= 0");
  const double ratio = t_max / dt;
  const double k = std::round(ratio);
  if (std::abs(ratio - k) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("t_max is not an integer multiple of dt");
  }
  return static_cast<std::size_t>(k);
}

template <typename Step>
std::vector<std::pair<double, double>> dynamics_series(Step &&step, const PauliSum &h, double t_max, double dt,
                                                       const Statevector &psi) {
  if (psi.n_qubits() != h.n_qubits()) throw std::invalid_argument("initial state and Hamiltonian differ in size");
  const std::size_t steps = step_count(t_max, dt);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_matrix(h));
  const Eigen::MatrixXcd &vecs = solver.eigenvectors();
  const Eigen::VectorXd &vals = solver.eigenvalues();
  const Eigen::VectorXcd coeffs = vecs.adjoint() * psi.amplitudes();
  const double norm2 = psi.amplitudes().dot(psi.amplitudes()).real();
  Statevector approx = psi;
  std::vector<std::pair<double, double>> out;
  out.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (k > 0) step(approx);
    Eigen::VectorXcd evolved(coeffs.size());
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) evolved[i] = std::polar(1.0, -vals[i] * t) * coeffs[i];
    const Eigen::VectorXcd exact = k == 0 ? psi.amplitudes() : Eigen::VectorXcd(vecs * evolved);
    out.emplace_back(t, 1.0 - std::norm(approx.amplitudes().dot(exact)) / (norm2 * norm2));
  }
  return out;
}

}  // namespace

std::uint64_t bitstring_index(const std::string &bits) {
  if (bits.empty() || bits.size() > 63) throw std::invalid_argument("bitstring length must be 1..63");
  std::uint64_t index = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1') {
      index |= std::uint64_t{1} << k;
    } else if (bits[k] != '0') {
      throw std::invalid_argument("invalid bitstring '" + bits + "'");
    }
  }
  return index;
}

std::string index_bitstring(std::uint64_t index, unsigned n_qubits) {
  std::string s(n_qubits, '0');
  for (unsigned k = 0; k < n_qubits; ++k) {
    if ((index >> k) & 1) s[k] = '1';
  }
  return s;
}

SubspaceBasis::SubspaceBasis(unsigned n_qubits, std::vector<std::string> bitstrings)
    : n_(n_qubits), bitstrings_(std::move(bitstrings)) {
  if (bitstrings_.empty()) throw std::invalid_argument("subspace basis is empty");
  std::set<std::uint64_t> seen;
  for (const auto &b : bitstrings_) {
    if (b.size() != n_) throw std::invalid_argument("bitstring '" + b + "' does not have length " + std::to_string(n_));
    const std::uint64_t idx = bitstring_index(b);
    if (!seen.insert(idx).second) throw std::invalid_argument("duplicate bitstring '" + b + "'");
    indices_.push_back(idx);
  }
}

SubspaceBasis SubspaceBasis::full(unsigned n_qubits) {
  std::vector<std::string> all;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n_qubits); ++i) all.push_back(index_bitstring(i, n_qubits));
  return {n_qubits, all};
}

SubspaceBasis SubspaceBasis::hamming_weight(unsigned n_qubits, unsigned weight) {
  if (weight > n_qubits) throw std::invalid_argument("Hamming weight exceeds qubit count");
  std::vector<std::string> out;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n_qubits); ++i) {
    if (static_cast<unsigned>(__builtin_popcountll(i)) == weight) out.push_back(index_bitstring(i, n_qubits));
  }
  return {n_qubits, out};
}

SubspaceBasis parse_subspace_basis(const std::string &text) {
  std::istringstream in(text);
  std::vector<std::string> bits;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string token;
    if (fields >> token) bits.push_back(token);
  }
  if (bits.empty()) throw std::invalid_argument("subspace basis file has no bitstrings");
  return {static_cast<unsigned>(bits.front().size()), bits};
}

SubspaceBasis load_subspace_basis(const std::string &path) { return parse_subspace_basis(read_file(path)); }

SubspaceBasis dicke_basis(unsigned n_orbitals_per_spin, unsigned n_alpha, unsigned n_beta) {
  const SubspaceBasis alpha = SubspaceBasis::hamming_weight(n_orbitals_per_spin, n_alpha);
  const SubspaceBasis beta = SubspaceBasis::hamming_weight(n_orbitals_per_spin, n_beta);
  std::vector<std::string> out;
  for (const auto &a : alpha.bitstrings())
    for (const auto &b : beta.bitstrings()) out.push_back(a + b);
  return {2 * n_orbitals_per_spin, out};
}

Statevector dicke_state(unsigned n, unsigned k) {
  if (k > n) throw std::invalid_argument("Dicke weight out of range");
  const SubspaceBasis basis = SubspaceBasis::hamming_weight(n, k);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(basis.size()));
  for (std::uint64_t idx : basis.indices()) amps[static_cast<Eigen::Index>(idx)] = amp;
  return {n, amps};
}

Statevector parse_reference_state(const std::string &text, unsigned n_qubits) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::uint64_t index;
    double re, im;
    if (!(fields >> index)) continue;
    if (!(fields >> re >> im)) throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'index re im'");
    if (index >= static_cast<std::uint64_t>(amps.size())) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": index out of range");
    }
    amps[static_cast<Eigen::Index>(index)] += Complex(re, im);
  }
  return {n_qubits, amps};
}

Statevector load_reference_state(const std::string &path, unsigned n_qubits) {
  return parse_reference_state(read_file(path), n_qubits);
}

Statevector random_state(unsigned n_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd amps(Eigen::Index{1} << n_qubits);
  for (Eigen::Index i = 0; i < amps.size(); ++i) amps[i] = Complex(normal(rng), normal(rng));
  return {n_qubits, amps};
}

Objective vqe_objective(const PauliSum &h, std::optional<std::uint64_t> shots) {
  Objective obj;
  obj.initial = Statevector(h.n_qubits());
  obj.exact = [h](const Statevector &s) { return expectation(s, h); };
  if (shots) {
    const std::uint64_t n = *shots;
    if (n == 0) throw std::invalid_argument("shots must be positive");
    obj.sampled = [h, n](const Statevector &s, std::uint64_t stream) { return sampled_expectation(s, h, n, stream); };
  }
  return obj;
}

Objective fidelity_objective(const Statevector &reference, std::optional<std::uint64_t> shots) {
  Objective obj;
  obj.initial = Statevector(reference.n_qubits());
  obj.exact = [reference](const Statevector &s) { return 1.0 - std::norm(reference.inner(s)); };
  if (shots) {
    const std::uint64_t n = *shots;
    if (n == 0) throw std::invalid_argument("shots must be positive");
    obj.sampled = [reference, n](const Statevector &s, std::uint64_t stream) {
      std::mt19937_64 rng(stream);
      std::binomial_distribution<std::uint64_t> draw(n, std::clamp(std::norm(reference.inner(s)), 0.0, 1.0));
      return 1.0 - static_cast<double>(draw(rng)) / static_cast<double>(n);
    };
  }
  return obj;
}

Statevector doubled_input_state(const SubspaceBasis &basis) {
  const unsigned n = basis.n_qubits();
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << (2 * n));
  const double amp = 1.0 / std::sqrt(static_cast<double>(basis.size()));
  for (std::uint64_t w : basis.indices()) amps[static_cast<Eigen::Index>(w | (w << n))] = amp;
  return {2 * n, amps};
}

Objective compile_objective(const DenseUnitary &target, CompileMode mode, const SubspaceBasis &basis) {
  const unsigned n = basis.n_qubits();
  check_target(target, n);
  Objective obj;
  const Statevector input = doubled_input_state(basis);
  obj.initial = input;
  apply_dense(obj.initial, target, register_a(n));
  obj.offset = n;
  obj.conjugate = true;
  if (mode == CompileMode::kGlobal) {
    obj.exact = [input](const Statevector &s) { return 1.0 - std::norm(input.inner(s)); };
  } else {
    obj.exact = [n](const Statevector &s) { return 1.0 - local_fidelity_mean(s, n); };
  }
  return obj;
}

CostSchedule make_cost_schedule(const CostSpec &spec) {
  if (const auto *v = std::get_if<VqeSpec>(&spec)) return CostSchedule::constant(vqe_objective(v->hamiltonian, v->shots));
  if (const auto *f = std::get_if<FidelitySpec>(&spec)) {
    return CostSchedule::constant(fidelity_objective(f->reference, f->shots));
  }
  const auto &c = std::get<CompileSpec>(spec);
  CostSchedule s;
  s.before = compile_objective(c.target, CompileMode::kLocal, c.basis);
  s.after = compile_objective(c.target, CompileMode::kGlobal, c.basis);
  s.switch_after = c.switch_after;
  return s;
}

double vqe_cost(const Circuit &circuit, const PauliSum &h) {
  if (circuit.n_qubits != h.n_qubits()) throw std::invalid_argument("circuit and Hamiltonian differ in size");
  return vqe_objective(h).evaluate(circuit);
}

double fidelity_cost(const Circuit &circuit, const Statevector &reference) {
  if (circuit.n_qubits != reference.n_qubits()) throw std::invalid_argument("circuit and reference differ in size");
  return fidelity_objective(reference).evaluate(circuit);
}

double hst_global_cost(const Circuit &v, const DenseUnitary &target, const SubspaceBasis &basis) {
  if (basis.n_qubits() != v.n_qubits) throw std::invalid_argument("basis and circuit differ in size");
  return compile_objective(target, CompileMode::kGlobal, basis).evaluate(v);
}

double hst_global_cost(const Circuit &v, const DenseUnitary &target) {
  return hst_global_cost(v, target, SubspaceBasis::full(v.n_qubits));
}

double lhst_local_cost(const Circuit &v, const DenseUnitary &target, const SubspaceBasis &basis) {
  if (basis.n_qubits() != v.n_qubits) throw std::invalid_argument("basis and circuit differ in size");
  return compile_objective(target, CompileMode::kLocal, basis).evaluate(v);
}

double lhst_local_cost(const Circuit &v, const DenseUnitary &target) {
  return lhst_local_cost(v, target, SubspaceBasis::full(v.n_qubits));
}

double hst_trace_formula(const DenseUnitary &v, const DenseUnitary &target) {
  if (v.rows() != target.rows() || v.cols() != target.cols()) throw std::invalid_argument("dimension mismatch");
  const Complex tr = (v.adjoint() * target).trace();
  return 1.0 - std::norm(tr / static_cast<double>(v.rows()));
}

double compile_cost(const Circuit &circuit, const CompileSpec &spec, std::size_t completed_sweeps) {
  if (spec.basis.n_qubits() != circuit.n_qubits) throw std::invalid_argument("basis and circuit differ in size");
  return make_cost_schedule(spec).at(completed_sweeps).evaluate(circuit);
}

std::vector<std::pair<double, double>> dynamics_infidelity(const Circuit &v, const PauliSum &h, double t_max,
                                                           double dt, const Statevector &psi) {
  if (v.n_qubits != h.n_qubits()) throw std::invalid_argument("circuit and Hamiltonian differ in size");
  return dynamics_series([&](Statevector &s) { apply_circuit(s, v, 0, v.gates.size()); }, h, t_max, dt, psi);
}

std::vector<std::pair<double, double>> dynamics_infidelity(const DenseUnitary &step, const PauliSum &h,
                                                           double t_max, double dt, const Statevector &psi) {
  check_target(step, h.n_qubits());
  const auto qubits = register_a(h.n_qubits());
  return dynamics_series([&](Statevector &s) { apply_dense(s, step, qubits); }, h, t_max, dt, psi);
}

}  // namespace qfqs
