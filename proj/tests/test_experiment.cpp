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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "qfqs/experiment.hpp"
#include "qfqs/io.hpp"

using namespace qfqs;
namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path &path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string &name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("qfqs_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string &args) {
  const std::string command = std::string(QFQS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t line_count(const std::string &text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

}  // namespace

TEST(Seeds, Parsing) {
  EXPECT_EQ(parse_seeds("0..4"), (std::vector<std::uint64_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(parse_seeds("1,5,9"), (std::vector<std::uint64_t>{1, 5, 9}));
  EXPECT_EQ(parse_seeds("2..3,7"), (std::vector<std::uint64_t>{2, 3, 7}));
  EXPECT_THROW(parse_seeds("4..2"), std::invalid_argument);
  EXPECT_THROW(parse_seeds("x"), std::invalid_argument);
  EXPECT_THROW(parse_seeds("-1"), std::invalid_argument);
}

TEST(Config, Validation) {
  ExperimentConfig c;
  EXPECT_NO_THROW(validate_config(c));
  c.method = UpdateMethod::kScf;
  c.block = BlockType::kCfqs;
  EXPECT_THROW(validate_config(c), std::invalid_argument);
  c.block.reset();
  EXPECT_EQ(block_for(c), BlockType::kScf);
  EXPECT_NO_THROW(validate_config(c));
  c.experiment = ExperimentKind::kCompile;
  c.n_qubits = 8;
  EXPECT_THROW(validate_config(c), std::invalid_argument);
  c.n_qubits = 2;
  c.shots = 100;
  EXPECT_THROW(validate_config(c), std::invalid_argument);
  ExperimentConfig f;
  f.experiment = ExperimentKind::kFidelity;
  EXPECT_THROW(validate_config(f), std::invalid_argument);
  ExperimentConfig v;
  v.experiment = ExperimentKind::kVqeFile;
  EXPECT_THROW(validate_config(v), std::invalid_argument);
  ExperimentConfig np;
  np.block = BlockType::kNumberPreserving;
  EXPECT_NO_THROW(validate_config(np));
}

TEST(Experiment, SeedsAreIndependentAndDeterministic) {
  ExperimentConfig c;
  c.n_qubits = 4;
  c.sweeps = 2;
  c.seeds = {3, 4};
  c.jobs = 2;
  const ExperimentResult a = run_experiment(c);
  c.jobs = 1;
  const ExperimentResult b = run_experiment(c);
  ASSERT_EQ(a.runs.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(a.runs[k].seed, c.seeds[k]);
    EXPECT_EQ(a.runs[k].trajectory.final_cost(), b.runs[k].trajectory.final_cost());
  }
  EXPECT_NE(a.runs[0].trajectory.final_cost(), a.runs[1].trajectory.final_cost());
  ASSERT_TRUE(a.ground_energy.has_value());
  EXPECT_GE(a.min_final(), *a.ground_energy - 1e-9);
  EXPECT_GT(a.standard_error(), 0.0);
}

TEST(Experiment, SummaryJson) {
  ExperimentConfig c;
  c.sweeps = 1;
  c.seeds = {0, 1};
  const ExperimentResult r = run_experiment(c);
  const auto j = nlohmann::json::parse(summary_json(r));
  EXPECT_EQ(j["experiment"], "vqe-ising");
  EXPECT_EQ(j["runs"].size(), 2u);
  EXPECT_DOUBLE_EQ(j["mean_final_cost"].get<double>(), r.mean_final());
  EXPECT_EQ(j["runs"][0]["evaluations"], 34);
}

TEST(Experiment, CompileSwitchAddsBaselineRecord) {
  ExperimentConfig c;
  c.experiment = ExperimentKind::kCompile;
  c.sweeps = 3;
  c.switch_after = 1;
  c.time = 0.1;
  const ExperimentResult r = run_experiment(c);
  const Trajectory &t = r.runs[0].trajectory;
  EXPECT_EQ(t.switch_sweep, 1);
  EXPECT_EQ(t.records.size(), 3 * 3 + 2u);
  EXPECT_GE(t.final_cost(), -1e-12);
  EXPECT_LE(t.final_cost(), 1.0);
}

TEST(Cli, VqeIsingWritesArtifacts) {
  const fs::path dir = fresh_dir("cli_vqe");
  ASSERT_EQ(run_cli("vqe-ising --n 2 --open --sweeps 3 --seeds 0..1 --out " + dir.string()), 0);
  EXPECT_TRUE(fs::exists(dir / "summary.json"));
  EXPECT_TRUE(fs::exists(dir / "circuit_seed1.txt"));
  EXPECT_EQ(line_count(read_text(dir / "trajectory_seed0.csv")), 2 + 3 * 3u);
  const Circuit c = import_circuit((dir / "circuit_seed0.txt").string());
  EXPECT_EQ(c.n_qubits, 2u);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const fs::path dir = fresh_dir("cli_config");
  std::ofstream(dir / "run.conf") << "n=4\nsweeps=2\nmethod=scf-cfqs\n";
  ASSERT_EQ(run_cli("--config " + (dir / "run.conf").string() + " vqe-ising --sweeps 1 --out " + dir.string()), 0);
  const auto j = nlohmann::json::parse(read_text(dir / "summary.json"));
  EXPECT_EQ(j["n_qubits"], 4);
  EXPECT_EQ(j["sweeps"], 1);
  EXPECT_EQ(j["method"], "scf-cfqs");
  std::ofstream(dir / "bad.conf") << "nonsense=1\n";
  EXPECT_NE(run_cli("--config " + (dir / "bad.conf").string() + " vqe-ising --out " + dir.string()), 0);
}

TEST(Cli, CompileThenDynamics) {
  const fs::path dir = fresh_dir("cli_dyn");
  ASSERT_EQ(run_cli("compile --n 2 --sweeps 2 --switch 1 --final-singles --out " + dir.string()), 0);
  const std::string csv = (dir / "dyn.csv").string();
  ASSERT_EQ(run_cli("dynamics --compiled " + (dir / "circuit_seed0.txt").string() +
                    " --t-max 0.25 --dt 0.0625 --initial 01 --out " + csv),
            0);
  const std::string text = read_text(csv);
  EXPECT_EQ(text.rfind("t,infidelity\n0,0\n", 0), 0u);
  EXPECT_EQ(line_count(text), 6u);
}

TEST(Cli, FidelityAndHamiltonianFile) {
  const fs::path dir = fresh_dir("cli_misc");
  ASSERT_EQ(run_cli("fidelity --n 4 --reference dicke:2 --sweeps 2 --out " + dir.string()), 0);
  std::ofstream(dir / "h.txt") << "0.5 ZZ\n-0.3 XI\n";
  ASSERT_EQ(run_cli("vqe-file --hamiltonian " + (dir / "h.txt").string() + " --sweeps 2 --out " + dir.string()), 0);
  const auto j = nlohmann::json::parse(read_text(dir / "summary.json"));
  EXPECT_EQ(j["experiment"], "vqe-file");
}

TEST(Cli, RejectsBadInput) {
  EXPECT_NE(run_cli("vqe-ising --method newton"), 0);
  EXPECT_NE(run_cli("vqe-ising --n 3 --sweeps 1 --out /tmp"), 0);
  EXPECT_NE(run_cli("compile --n 8"), 0);
  EXPECT_NE(run_cli("nosuchcommand"), 0);
  EXPECT_NE(run_cli("selftest --only 11"), 0);
}
