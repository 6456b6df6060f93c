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

#include "qfqs/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "qfqs/hamiltonian.hpp"
#include "qfqs/io.hpp"

namespace qfqs {

namespace {

std::uint64_t parse_u64(const std::string &text, const std::string &what) {
  std::uint64_t v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("invalid " + what + " '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string &text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

bool starts_with(const std::string &s, const std::string &prefix) { return s.rfind(prefix, 0) == 0; }

bool is_bitstring(const std::string &s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

SubspaceBasis make_basis(const std::string &spec, unsigned n) {
  if (spec.empty() || spec == "full") return SubspaceBasis::full(n);
  if (starts_with(spec, "weight:")) {
    return SubspaceBasis::hamming_weight(n, static_cast<unsigned>(parse_u64(spec.substr(7), "Hamming weight")));
  }
  if (starts_with(spec, "dicke:")) {
    const auto parts = split(spec.substr(6), ',');
    if (parts.size() != 3) throw std::invalid_argument("dicke subspace needs NORB,NA,NB");
    const auto norb = static_cast<unsigned>(parse_u64(parts[0], "orbital count"));
    SubspaceBasis basis = dicke_basis(norb, static_cast<unsigned>(parse_u64(parts[1], "alpha count")),
                                      static_cast<unsigned>(parse_u64(parts[2], "beta count")));
    if (basis.n_qubits() != n) throw std::invalid_argument("dicke subspace does not match the qubit count");
    return basis;
  }
  SubspaceBasis basis = load_subspace_basis(spec);
  if (basis.n_qubits() != n) throw std::invalid_argument("subspace file does not match the qubit count");
  return basis;
}

Statevector make_reference(const std::string &spec, unsigned n) {
  if (starts_with(spec, "dicke:")) return dicke_state(n, static_cast<unsigned>(parse_u64(spec.substr(6), "Dicke weight")));
  if (starts_with(spec, "random:")) return random_state(n, parse_u64(spec.substr(7), "state seed"));
  return load_reference_state(spec, n);
}

PauliSum config_hamiltonian(const ExperimentConfig &c) {
  if (!c.hamiltonian_path.empty()) {
    PauliSum h = load_pauli_sum(c.hamiltonian_path);
    if (h.n_qubits() != c.n_qubits) {
      throw std::invalid_argument("Hamiltonian has " + std::to_string(h.n_qubits()) + " qubits, config has " +
                                  std::to_string(c.n_qubits));
    }
    return h;
  }
  return ising_hamiltonian(c.n_qubits, c.coupling, c.field, c.periodic);
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kVqeIsing: return "vqe-ising";
    case ExperimentKind::kVqeFile: return "vqe-file";
    case ExperimentKind::kFidelity: return "fidelity";
    case ExperimentKind::kCompile: return "compile";
  }
  return "?";
}

std::vector<std::uint64_t> parse_seeds(const std::string &text) {
  std::vector<std::uint64_t> seeds;
  for (const std::string &part : split(text, ',')) {
    if (const auto dots = part.find(".."); dots != std::string::npos) {
      const std::uint64_t lo = parse_u64(part.substr(0, dots), "seed");
      const std::uint64_t hi = parse_u64(part.substr(dots + 2), "seed");
      if (hi < lo) throw std::invalid_argument("empty seed range '" + part + "'");
      if (hi - lo >= 100000) throw std::invalid_argument("seed range too large");
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(parse_u64(part, "seed"));
    }
  }
  return seeds;
}

BlockType block_for(const ExperimentConfig &config) {
  if (config.block) return *config.block;
  switch (config.method) {
    case UpdateMethod::kFqs: return BlockType::kFqs;
    case UpdateMethod::kCfqs: return BlockType::kCfqs;
    case UpdateMethod::kScf: return BlockType::kScf;
  }
  return BlockType::kCfqs;
}

void validate_config(const ExperimentConfig &c) {
  if (c.n_qubits < 2) throw std::invalid_argument("the layered ansatz needs at least 2 qubits");
  if (c.layers < 1) throw std::invalid_argument("layers must be at least 1");
  if (c.seeds.empty()) throw std::invalid_argument("no seeds given");
  if (c.jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  if (c.shots && *c.shots == 0) throw std::invalid_argument("shots must be positive");
  if (!(c.init.angle_max >= 0.0)) throw std::invalid_argument("warm-start angle must be non-negative");
  const BlockType block = block_for(c);
  const bool ok = (c.method == UpdateMethod::kFqs && block == BlockType::kFqs) ||
                  (c.method == UpdateMethod::kCfqs && (block == BlockType::kCfqs || block == BlockType::kNumberPreserving)) ||
                  (c.method == UpdateMethod::kScf && block == BlockType::kScf);
  if (!ok) {
    throw std::invalid_argument("method " + method_name(c.method) + " is incompatible with block " +
                                block_type_name(block));
  }
  switch (c.experiment) {
    case ExperimentKind::kVqeIsing:
      break;
    case ExperimentKind::kVqeFile:
      if (c.hamiltonian_path.empty()) throw std::invalid_argument("vqe-file needs a Hamiltonian file");
      break;
    case ExperimentKind::kFidelity:
      if (c.reference.empty()) throw std::invalid_argument("fidelity needs a reference state");
      break;
    case ExperimentKind::kCompile:
      if (c.n_qubits > kMaxEvolutionQubits) {
        throw std::invalid_argument("compilation is limited to " + std::to_string(kMaxEvolutionQubits) + " qubits");
      }
      if (c.shots) throw std::invalid_argument("shot noise is not supported for compilation costs");
      break;
  }
}

CostSpec make_cost_spec(const ExperimentConfig &c) {
  switch (c.experiment) {
    case ExperimentKind::kVqeIsing:
    case ExperimentKind::kVqeFile:
      return VqeSpec{config_hamiltonian(c), c.shots};
    case ExperimentKind::kFidelity:
      return FidelitySpec{make_reference(c.reference, c.n_qubits), c.shots};
    case ExperimentKind::kCompile: {
      const Eigen::Index dim = Eigen::Index{1} << c.n_qubits;
      DenseUnitary target = c.identity_target ? DenseUnitary(DenseUnitary::Identity(dim, dim))
                                              : time_evolution(config_hamiltonian(c), c.time);
      return CompileSpec{std::move(target), make_basis(c.subspace, c.n_qubits), c.switch_after};
    }
  }
  throw std::logic_error("unknown experiment");
}

Circuit make_initial_circuit(const ExperimentConfig &c, std::uint64_t seed) {
  return initialize(build_alt_ansatz(c.n_qubits, c.layers, block_for(c), c.connectivity, c.final_singles), c.init,
                    seed);
}

SeedResult run_seed(const ExperimentConfig &c, const CostSchedule &costs, std::uint64_t seed) {
  SeedResult r;
  r.seed = seed;
  r.circuit = make_initial_circuit(c, seed);
  SweepOptions opts;
  opts.threshold = c.threshold;
  opts.seed = seed;
  r.trajectory = run_sweeps(r.circuit, costs, c.sweeps, opts);
  return r;
}

double ExperimentResult::mean_final() const {
  double sum = 0.0;
  for (const auto &r : runs) sum += r.trajectory.final_cost();
  return sum / static_cast<double>(runs.size());
}

double ExperimentResult::min_final() const {
  double best = runs.front().trajectory.final_cost();
  for (const auto &r : runs) best = std::min(best, r.trajectory.final_cost());
  return best;
}

double ExperimentResult::standard_error() const {
  const std::size_t k = runs.size();
  if (k < 2) return 0.0;
  const double mean = mean_final();
  double ss = 0.0;
  for (const auto &r : runs) ss += std::pow(r.trajectory.final_cost() - mean, 2);
  return std::sqrt(ss / static_cast<double>(k - 1) / static_cast<double>(k));
}

ExperimentResult run_experiment(const ExperimentConfig &config) {
  validate_config(config);
  ExperimentResult result;
  result.config = config;
  const CostSpec spec = make_cost_spec(config);
  const CostSchedule costs = make_cost_schedule(spec);
  if (const auto *v = std::get_if<VqeSpec>(&spec); v && config.n_qubits <= kMaxDenseQubits) {
    result.ground_energy = ground_energy(v->hamiltonian);
  }

  result.runs.resize(config.seeds.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < config.seeds.size(); k = next++) {
      try {
        result.runs[k] = run_seed(config, costs, config.seeds[k]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned threads = std::min<unsigned>(config.jobs, static_cast<unsigned>(config.seeds.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  if (result.ground_energy && !config.shots) {
    const double floor = *result.ground_energy - 1e-8 * (1.0 + std::abs(*result.ground_energy));
    for (const auto &r : result.runs) {
      for (const auto &rec : r.trajectory.records) {
        if (rec.cost < floor) throw std::logic_error("energy below the exact ground energy");
      }
    }
  }
  return result;
}

std::string summary_json(const ExperimentResult &result) {
  const ExperimentConfig &c = result.config;
  nlohmann::json j;
  j["experiment"] = experiment_name(c.experiment);
  j["method"] = method_name(c.method);
  j["block"] = block_type_name(block_for(c));
  j["connectivity"] = connectivity_name(c.connectivity);
  j["n_qubits"] = c.n_qubits;
  j["layers"] = c.layers;
  j["sweeps"] = c.sweeps;
  j["shots"] = c.shots ? nlohmann::json(*c.shots) : nlohmann::json(nullptr);
  nlohmann::json runs = nlohmann::json::array();
  for (const auto &r : result.runs) {
    const Trajectory &t = r.trajectory;
    runs.push_back({{"seed", r.seed},
                    {"final_cost", t.final_cost()},
                    {"evaluations", t.evaluations()},
                    {"fqs_updates", t.fqs_updates},
                    {"cfqs_updates", t.cfqs_updates},
                    {"scf_updates", t.scf_updates},
                    {"switch_sweep", t.switch_sweep},
                    {"max_increase", t.max_increase}});
  }
  j["runs"] = runs;
  j["mean_final_cost"] = result.mean_final();
  j["min_final_cost"] = result.min_final();
  j["standard_error"] = result.standard_error();
  j["ground_energy"] = result.ground_energy ? nlohmann::json(*result.ground_energy) : nlohmann::json(nullptr);
  return j.dump(2) + "\n";
}

void write_artifacts(const ExperimentResult &result) {
  const std::filesystem::path dir(result.config.output_dir);
  std::filesystem::create_directories(dir);
  for (const auto &r : result.runs) {
    const std::string tag = "seed" + std::to_string(r.seed);
    export_trajectory(r.trajectory, (dir / ("trajectory_" + tag + ".csv")).string());
    export_circuit(r.circuit, (dir / ("circuit_" + tag + ".txt")).string(), result.config.expand_circuits);
  }
  std::ofstream out(dir / "summary.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write summary.json");
  out << summary_json(result);
}

std::vector<std::pair<double, double>> run_dynamics(const DynamicsConfig &config) {
  const Circuit circuit = import_circuit(config.circuit_path);
  const unsigned n = circuit.n_qubits;
  if (config.n_qubits != 0 && config.n_qubits != n) throw std::invalid_argument("circuit size does not match --n");
  if (n > kMaxEvolutionQubits) throw std::invalid_argument("dynamics is limited to 6 qubits");
  const PauliSum h = config.hamiltonian_path.empty() ? ising_hamiltonian(n, config.coupling, config.field, config.periodic)
                                                     : load_pauli_sum(config.hamiltonian_path);
  Statevector psi(n);
  if (is_bitstring(config.initial)) {
    if (config.initial.size() != n) throw std::invalid_argument("initial bitstring length does not match the circuit");
    psi = Statevector::basis_state(n, bitstring_index(config.initial));
  } else if (!config.initial.empty()) {
    psi = load_reference_state(config.initial, n);
  }
  return dynamics_infidelity(circuit, h, config.t_max, config.dt, psi);
}

void write_dynamics_csv(const std::vector<std::pair<double, double>> &series, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,infidelity\n";
  char buf[40];
  for (const auto &[t, inf] : series) {
    auto a = std::to_chars(buf, buf + sizeof buf, t, std::chars_format::general, 17);
    out << std::string(buf, a.ptr) << ',';
    auto b = std::to_chars(buf, buf + sizeof buf, inf, std::chars_format::general, 17);
    out << std::string(buf, b.ptr) << '\n';
  }
}

}  // namespace qfqs
