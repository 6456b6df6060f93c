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

// Command-line driver for the qfqs experiments.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfqs/checks.hpp"
#include "qfqs/experiment.hpp"

namespace {

using namespace qfqs;

struct CommonFlags {
  std::string block;
  std::string connectivity = "nn";
  std::string method = "cfqs";
  std::string init = "random";
  std::string seeds = "0";
  std::uint64_t shots = 0;
};

unsigned default_jobs() {
  if (const char *env = std::getenv("QFQS_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception &) {
    }
    std::cerr << "warning: ignoring invalid QFQS_JOBS='" << env << "'\n";
  }
  return 1;
}

// Reads key=value lines and files them under the selected subcommand.
class FlatConfig : public CLI::ConfigINI {
 public:
  explicit FlatConfig(const CLI::App *app) : app_(app) {}

  std::vector<CLI::ConfigItem> from_config(std::istream &input) const override {
    auto items = CLI::ConfigINI::from_config(input);
    const auto chosen = app_->get_subcommands();
    if (chosen.empty()) return items;
    for (auto &item : items) {
      if (item.parents.empty() && !item.name.empty() && item.name != "++" && item.name != "--") {
        item.parents = {chosen.front()->get_name()};
      }
    }
    return items;
  }

 private:
  const CLI::App *app_;
};

void add_ansatz_flags(CLI::App *cmd, ExperimentConfig &cfg, CommonFlags &flags) {
  cmd->add_option("--n", cfg.n_qubits, "Number of qubits")->capture_default_str();
  cmd->add_option("--layers,-L", cfg.layers, "Ansatz layers")->capture_default_str();
  cmd->add_option("--block", flags.block, "fqs | cfqs | scf | np (default follows --method)");
  cmd->add_option("--connectivity", flags.connectivity, "nn | all-to-all | spin-preserving")->capture_default_str();
  cmd->add_option("--method", flags.method, "fqs | cfqs | scf-cfqs")->capture_default_str();
  cmd->add_flag("--final-singles", cfg.final_singles, "Append one trainable single-qubit gate per qubit");
  cmd->add_option("--sweeps", cfg.sweeps, "Number of sweeps")->capture_default_str();
  cmd->add_option("--seeds", flags.seeds, "Seed list, e.g. 0..4 or 1,5,9")->capture_default_str();
  cmd->add_option("--init", flags.init, "random | cz | warm")->capture_default_str();
  cmd->add_option("--angle-max", cfg.init.angle_max, "Warm-start maximum rotation angle")->capture_default_str();
  cmd->add_option("--shots", flags.shots, "Shots per cost evaluation (0 = exact)");
  cmd->add_option("--threshold", cfg.threshold, "SCF inner-loop improvement threshold")->capture_default_str();
  cmd->add_option("--out", cfg.output_dir, "Output directory")->capture_default_str();
  cmd->add_option("--jobs,-j", cfg.jobs, "Seeds run in parallel (default $QFQS_JOBS or 1)");
  cmd->add_flag("--expand", cfg.expand_circuits, "Write circuits as RZ/RY/CNOT sequences");
}

void add_ising_flags(CLI::App *cmd, ExperimentConfig &cfg, bool &open) {
  cmd->add_option("--coupling", cfg.coupling, "Ising coupling")->capture_default_str();
  cmd->add_option("--field", cfg.field, "Ising field (applied along X and Z)")->capture_default_str();
  cmd->add_flag("--open", open, "Open boundary instead of periodic");
}

void finish_config(ExperimentConfig &cfg, const CommonFlags &flags, bool open) {
  cfg.method = parse_method(flags.method);
  if (!flags.block.empty()) cfg.block = parse_block_type(flags.block);
  cfg.connectivity = parse_connectivity(flags.connectivity);
  cfg.init.policy = parse_init_policy(flags.init);
  cfg.seeds = parse_seeds(flags.seeds);
  if (flags.shots > 0) cfg.shots = flags.shots;
  cfg.periodic = !open;
}

int run_and_report(const ExperimentConfig &cfg) {
  const ExperimentResult result = run_experiment(cfg);
  write_artifacts(result);
  for (const auto &r : result.runs) {
    std::cout << "seed " << r.seed << ": final cost " << r.trajectory.final_cost() << ", evaluations "
              << r.trajectory.evaluations() << '\n';
  }
  std::cout << "mean " << result.mean_final() << ", min " << result.min_final() << ", standard error "
            << result.standard_error();
  if (result.ground_energy) std::cout << ", exact ground energy " << *result.ground_energy;
  std::cout << "\nwrote " << cfg.output_dir << "/summary.json\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Quaternion-based sequential optimization of parameterized circuits"};
  app.set_config("--config", "", "key=value file of subcommand flags; command-line flags take precedence");
  app.config_formatter(std::make_shared<FlatConfig>(&app));
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  ExperimentConfig cfg;
  cfg.jobs = default_jobs();
  CommonFlags flags;
  bool open = false;

  auto *vqe_ising = app.add_subcommand("vqe-ising", "VQE on the mixed-field Ising ring");
  add_ansatz_flags(vqe_ising, cfg, flags);
  add_ising_flags(vqe_ising, cfg, open);

  auto *vqe_file = app.add_subcommand("vqe-file", "VQE on a Pauli-sum Hamiltonian file");
  add_ansatz_flags(vqe_file, cfg, flags);
  vqe_file->add_option("--hamiltonian", cfg.hamiltonian_path, "Pauli-sum file")->required();

  auto *fidelity = app.add_subcommand("fidelity", "Maximize the overlap with a reference state");
  add_ansatz_flags(fidelity, cfg, flags);
  fidelity->add_option("--reference", cfg.reference, "State file, dicke:K or random:SEED")->required();

  auto *compile = app.add_subcommand("compile", "Compile exp(-iHt) with the Hilbert-Schmidt test costs");
  add_ansatz_flags(compile, cfg, flags);
  add_ising_flags(compile, cfg, open);
  compile->add_option("--hamiltonian", cfg.hamiltonian_path, "Pauli-sum file (default: Ising model)");
  compile->add_option("--t", cfg.time, "Evolution time")->capture_default_str();
  compile->add_flag("--identity", cfg.identity_target, "Compile the identity instead");
  compile->add_option("--subspace", cfg.subspace, "full | weight:K | dicke:NORB,NA,NB | bitstring file")
      ->capture_default_str();
  compile->add_option("--switch", cfg.switch_after, "Sweeps on the local cost before the global one")
      ->capture_default_str();

  DynamicsConfig dyn;
  auto *dynamics = app.add_subcommand("dynamics", "Infidelity of a compiled step against exact evolution");
  dynamics->add_option("--compiled", dyn.circuit_path, "Circuit file")->required();
  dynamics->add_option("--hamiltonian", dyn.hamiltonian_path, "Pauli-sum file (default: Ising model)");
  dynamics->add_option("--coupling", dyn.coupling, "Ising coupling")->capture_default_str();
  dynamics->add_option("--field", dyn.field, "Ising field")->capture_default_str();
  bool dyn_open = false;
  dynamics->add_flag("--open", dyn_open, "Open boundary instead of periodic");
  dynamics->add_option("--t-max", dyn.t_max, "Final time")->capture_default_str();
  dynamics->add_option("--dt", dyn.dt, "Time step of the compiled circuit")->capture_default_str();
  dynamics->add_option("--initial", dyn.initial, "Initial bitstring or state file (default all zeros)");
  dynamics->add_option("--out", dyn.output_path, "Output CSV")->capture_default_str();

  bool full = false;
  std::vector<int> only;
  auto *selftest = app.add_subcommand("selftest", "Run the invariant checks");
  selftest->add_flag("--full", full, "Use the reference problem sizes (slow)");
  selftest->add_option("--only", only, "Criterion ids to run")->check(CLI::Range(1, 10));

  for (auto *cmd : {vqe_ising, vqe_file, fidelity, compile, dynamics, selftest}) cmd->configurable();
  CLI11_PARSE(app, argc, argv);

  try {
    if (*dynamics) {
      dyn.periodic = !dyn_open;
      const auto series = run_dynamics(dyn);
      write_dynamics_csv(series, dyn.output_path);
      std::cout << "wrote " << series.size() << " points to " << dyn.output_path << ", final infidelity "
                << series.back().second << '\n';
      return 0;
    }
    if (*selftest) {
      bool ok = true;
      for (const auto &r : run_checks(full ? CheckScale::full() : CheckScale::quick(), only)) {
        std::cout << format_check(r) << std::endl;
        ok = ok && r.passed;
      }
      return ok ? 0 : 1;
    }
    finish_config(cfg, flags, open);
    if (*vqe_ising) cfg.experiment = ExperimentKind::kVqeIsing;
    if (*vqe_file) cfg.experiment = ExperimentKind::kVqeFile;
    if (*fidelity) cfg.experiment = ExperimentKind::kFidelity;
    if (*compile) cfg.experiment = ExperimentKind::kCompile;
    return run_and_report(cfg);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
