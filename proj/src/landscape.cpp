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

#include "qfqs/landscape.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qfqs {

namespace {

constexpr int kQuadIndex[10][2] = {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1},
                                   {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
constexpr double kMaxCondition = 1e12;
constexpr double kResidualTolerance = 1e-8;

Eigen::Matrix<double, 10, 1> quadratic_part(const Eigen::Vector4d &v) {
  Eigen::Matrix<double, 10, 1> out;
  for (int k = 0; k < 10; ++k) {
    const int a = kQuadIndex[k][0], b = kQuadIndex[k][1];
    out[k] = (a == b ? 1.0 : 2.0) * v[a] * v[b];
  }
  return out;
}

Eigen::Matrix4d symmetric_from(const Eigen::VectorXd &e, int start) {
  Eigen::Matrix4d m;
  for (int k = 0; k < 10; ++k) {
    const int a = kQuadIndex[k][0], b = kQuadIndex[k][1];
    m(a, b) = m(b, a) = e[start + k];
  }
  return m;
}

Quaternion normalized(const Eigen::Vector4d &row) {
  if (row.norm() == 0.0) throw std::invalid_argument("configuration row has a zero quaternion");
  return Quaternion::from_vector(row);
}

}  // namespace

Vector15d embed_controlled(const Quaternion &q) {
  const Eigen::Vector4d v = q.vector();
  Vector15d h;
  h.head<10>() = quadratic_part(v);
  h.segment<4>(10) = 2.0 * v;
  h[14] = 1.0;
  return h;
}

Vector36d embed_pair(const Quaternion &p, const Quaternion &q) {
  const Eigen::Vector4d pv = p.vector();
  const Eigen::Vector4d qv = q.vector();
  Vector36d h;
  h.head<10>() = quadratic_part(pv);
  h.segment<10>(10) = quadratic_part(qv);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) h[20 + 4 * mu + nu] = 2.0 * pv[mu] * qv[nu];
  return h;
}

Vector15d controlled_kernel_row() {
  Vector15d k = Vector15d::Zero();
  k.head<4>().setConstant(-1.0);
  k[14] = 1.0;
  return k;
}

Vector36d pair_kernel_row() {
  Vector36d k = Vector36d::Zero();
  k.head<4>().setConstant(-0.25);
  k.segment<4>(10).setConstant(0.25);
  return k;
}

ParameterConfiguration ParameterConfiguration::single(const std::vector<Eigen::Vector4d> &rows) {
  ParameterConfiguration c;
  c.kind_ = ConfigurationKind::kSingle;
  for (const auto &r : rows) c.first_.push_back(normalized(r));
  c.factorize();
  return c;
}

ParameterConfiguration ParameterConfiguration::controlled(const std::vector<Eigen::Vector4d> &rows) {
  ParameterConfiguration c;
  c.kind_ = ConfigurationKind::kControlled;
  for (const auto &r : rows) c.first_.push_back(normalized(r));
  c.factorize();
  return c;
}

ParameterConfiguration ParameterConfiguration::pair(const std::vector<Eigen::Matrix<double, 8, 1>> &rows) {
  ParameterConfiguration c;
  c.kind_ = ConfigurationKind::kPair;
  for (const auto &r : rows) {
    c.first_.push_back(normalized(r.head<4>()));
    c.second_.push_back(normalized(r.tail<4>()));
  }
  c.factorize();
  return c;
}

void ParameterConfiguration::factorize() {
  const std::size_t rows = first_.size();
  int unknowns = 0;
  switch (kind_) {
    case ConfigurationKind::kSingle: unknowns = 10; break;
    case ConfigurationKind::kControlled: unknowns = 15; break;
    case ConfigurationKind::kPair: unknowns = 36; break;
  }
  const std::size_t expected = kind_ == ConfigurationKind::kSingle ? 10 : static_cast<std::size_t>(unknowns - 1);
  if (rows != expected) {
    throw std::invalid_argument("configuration needs " + std::to_string(expected) + " rows, got " +
                                std::to_string(rows));
  }
  design_.resize(unknowns, unknowns);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto i = static_cast<Eigen::Index>(r);
    switch (kind_) {
      case ConfigurationKind::kSingle: design_.row(i) = embed_controlled(first_[r]).head<10>().transpose(); break;
      case ConfigurationKind::kControlled: design_.row(i) = embed_controlled(first_[r]).transpose(); break;
      case ConfigurationKind::kPair: design_.row(i) = embed_pair(first_[r], second_[r]).transpose(); break;
    }
  }
  if (kind_ == ConfigurationKind::kControlled) design_.row(unknowns - 1) = controlled_kernel_row().transpose();
  if (kind_ == ConfigurationKind::kPair) design_.row(unknowns - 1) = pair_kernel_row().transpose();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(design_);
  const auto &s = svd.singularValues();
  condition_ = s[s.size() - 1] > 0.0 ? s[0] / s[s.size() - 1] : std::numeric_limits<double>::infinity();
  if (!(condition_ < kMaxCondition)) {
    throw std::invalid_argument("parameter configuration is singular (condition number " +
                                std::to_string(condition_) + ")");
  }
  lu_.compute(design_);
}

Eigen::VectorXd ParameterConfiguration::solve(const Eigen::VectorXd &measured) const {
  if (static_cast<std::size_t>(measured.size()) != size()) throw std::invalid_argument("measurement count mismatch");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(design_.rows());
  rhs.head(measured.size()) = measured;
  Eigen::VectorXd e = lu_.solve(rhs);
  const double scale = 1.0 + measured.cwiseAbs().maxCoeff();
  const double residual = (design_ * e - rhs).cwiseAbs().maxCoeff();
  if (!(residual <= kResidualTolerance * scale)) {
    throw std::runtime_error("tomography fit residual " + std::to_string(residual) + " exceeds tolerance");
  }
  return e;
}

std::vector<Eigen::Vector4d> default_controlled_stencil() {
  return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1},
          {0, 1, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}, {1, 1, 1, 0}, {1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 1}};
}

std::vector<Eigen::Matrix<double, 8, 1>> default_pair_stencil() {
  const std::vector<Eigen::Vector4d> axes = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  const std::vector<Eigen::Vector4d> mixed = {{1, 1, 0, 0}, {1, -1, 0, 0}, {1, 0, 1, 0}, {1, 0, -1, 0},
                                              {0, 1, 1, 0}, {0, 1, -1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1},
                                              {0, 0, 1, -1}};
  const std::vector<Eigen::Vector4d> mixed_p = {{1, 1, 0, 0}, {1, -1, 0, 0}, {1, 0, 1, 0}, {1, 0, -1, 0},
                                                {1, 0, 0, 1}, {1, 0, 0, -1}, {0, 1, 1, 0}, {0, 1, 0, 1},
                                                {0, 0, 1, 1}};
  std::vector<Eigen::Matrix<double, 8, 1>> rows;
  auto push = [&](const Eigen::Vector4d &p, const Eigen::Vector4d &q) {
    Eigen::Matrix<double, 8, 1> r;
    r << p, q;
    rows.push_back(r);
  };
  for (const auto &p : axes)
    for (const auto &q : axes) push(p, q);
  for (const auto &q : mixed) push(axes[0], q);
  for (const auto &p : mixed_p) push(p, axes[0]);
  push(Eigen::Vector4d::Ones(), Eigen::Vector4d::Ones());
  return rows;
}

const ParameterConfiguration &ParameterConfiguration::default_single() {
  static const ParameterConfiguration config = [] {
    auto rows = default_controlled_stencil();
    rows.resize(10);
    return single(rows);
  }();
  return config;
}

const ParameterConfiguration &ParameterConfiguration::default_controlled() {
  static const ParameterConfiguration config = controlled(default_controlled_stencil());
  return config;
}

const ParameterConfiguration &ParameterConfiguration::default_pair() {
  static const ParameterConfiguration config = pair(default_pair_stencil());
  return config;
}

ParameterConfiguration load_configuration(const std::string &path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream in(line);
    std::vector<double> row;
    double v;
    while (in >> v) row.push_back(v);
    if (!in.eof()) throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": invalid number");
    if (row.empty()) continue;
    if (row.size() != 4 && row.size() != 8) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": expected 4 or 8 values");
    }
    if (!rows.empty() && rows.front().size() != row.size()) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": inconsistent row width");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument(path + ": no configuration rows");
  if (rows.front().size() == 4) {
    std::vector<Eigen::Vector4d> r;
    for (const auto &row : rows) r.emplace_back(row[0], row[1], row[2], row[3]);
    return r.size() == 10 ? ParameterConfiguration::single(r) : ParameterConfiguration::controlled(r);
  }
  std::vector<Eigen::Matrix<double, 8, 1>> r;
  for (const auto &row : rows) r.push_back(Eigen::Map<const Eigen::Matrix<double, 8, 1>>(row.data()));
  return ParameterConfiguration::pair(r);
}

double SingleModel::predict(const Quaternion &q) const {
  const Eigen::Vector4d v = q.vector();
  return v.dot(J * v);
}

double ControlledModel::predict(const Quaternion &q) const {
  const Eigen::Vector4d v = q.vector();
  return v.dot(J * v) + 2.0 * a.dot(v) + b;
}

double PairModel::predict(const Quaternion &p, const Quaternion &q) const {
  const Eigen::Vector4d pv = p.vector();
  const Eigen::Vector4d qv = q.vector();
  return pv.dot(J * pv) + 2.0 * pv.dot(K * qv) + qv.dot(L * qv);
}

ControlledModel PairModel::p_slice(const Quaternion &q) const {
  const Eigen::Vector4d qv = q.vector();
  return {J, K * qv, qv.dot(L * qv)};
}

ControlledModel PairModel::q_slice(const Quaternion &p) const {
  const Eigen::Vector4d pv = p.vector();
  return {L, K.transpose() * pv, pv.dot(J * pv)};
}

SingleModel estimate_single(const QuaternionCost &evaluator, const ParameterConfiguration &config) {
  if (config.kind() != ConfigurationKind::kSingle) throw std::invalid_argument("expected a single-gate configuration");
  Eigen::VectorXd m(static_cast<Eigen::Index>(config.size()));
  for (std::size_t r = 0; r < config.size(); ++r) m[static_cast<Eigen::Index>(r)] = evaluator(config.first()[r]);
  const Eigen::VectorXd e = config.solve(m);
  return {symmetric_from(e, 0)};
}

ControlledModel estimate_controlled(const QuaternionCost &evaluator, const ParameterConfiguration &config) {
  if (config.kind() != ConfigurationKind::kControlled) throw std::invalid_argument("expected a controlled-gate configuration");
  Eigen::VectorXd m(static_cast<Eigen::Index>(config.size()));
  for (std::size_t r = 0; r < config.size(); ++r) m[static_cast<Eigen::Index>(r)] = evaluator(config.first()[r]);
  const Eigen::VectorXd e = config.solve(m);
  return {symmetric_from(e, 0), e.segment<4>(10), e[14]};
}

PairModel estimate_pair(const PairCost &evaluator, const ParameterConfiguration &config) {
  if (config.kind() != ConfigurationKind::kPair) throw std::invalid_argument("expected a pair configuration");
  Eigen::VectorXd m(static_cast<Eigen::Index>(config.size()));
  for (std::size_t r = 0; r < config.size(); ++r) {
    m[static_cast<Eigen::Index>(r)] = evaluator(config.first()[r], config.second()[r]);
  }
  const Eigen::VectorXd e = config.solve(m);
  PairModel model;
  model.J = symmetric_from(e, 0);
  model.L = symmetric_from(e, 10);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) model.K(mu, nu) = e[20 + 4 * mu + nu];
  return model;
}

}  // namespace qfqs
