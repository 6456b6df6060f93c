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

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qfqs/gates.hpp"

namespace qfqs {

using Vector15d = Eigen::Matrix<double, 15, 1>;
using Vector36d = Eigen::Matrix<double, 36, 1>;

/// (q_i^2, q_x^2, q_y^2, q_z^2, 2q_iq_x, 2q_iq_y, 2q_iq_z, 2q_xq_y, 2q_xq_z, 2q_yq_z,
///  2q_i, 2q_x, 2q_y, 2q_z, 1)
Vector15d embed_controlled(const Quaternion &q);

/// 10 p-quadratics, 10 q-quadratics (ordered as above), then 2 p_mu q_nu
/// row-major over mu, nu in (i, x, y, z).
Vector36d embed_pair(const Quaternion &p, const Quaternion &q);

/// Null direction of the unit-sphere embeddings.
Vector15d controlled_kernel_row();
Vector36d pair_kernel_row();

enum class ConfigurationKind { kSingle, kControlled, kPair };

/// Evaluation points for tomography. Rows are raw stencils; each 4-vector
/// half is normalized before use. The design matrix is factorized on
/// construction and rejected if singular.
class ParameterConfiguration {
 public:
  static ParameterConfiguration single(const std::vector<Eigen::Vector4d> &rows);
  static ParameterConfiguration controlled(const std::vector<Eigen::Vector4d> &rows);
  static ParameterConfiguration pair(const std::vector<Eigen::Matrix<double, 8, 1>> &rows);

  static const ParameterConfiguration &default_single();
  static const ParameterConfiguration &default_controlled();
  static const ParameterConfiguration &default_pair();

  ConfigurationKind kind() const { return kind_; }
  std::size_t size() const { return first_.size(); }
  const std::vector<Quaternion> &first() const { return first_; }
  const std::vector<Quaternion> &second() const { return second_; }
  double condition_number() const { return condition_; }

  /// Fits the model coefficients to measured values, one per row.
  Eigen::VectorXd solve(const Eigen::VectorXd &measured) const;

 private:
  ConfigurationKind kind_ = ConfigurationKind::kControlled;
  std::vector<Quaternion> first_;
  std::vector<Quaternion> second_;
  Eigen::MatrixXd design_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double condition_ = 0.0;

  void factorize();
};

/// Rows of 4 (controlled) or 8 (pair) decimals; `#` comments.
ParameterConfiguration load_configuration(const std::string &path);

/// Appendix stencils, unnormalized.
std::vector<Eigen::Vector4d> default_controlled_stencil();
std::vector<Eigen::Matrix<double, 8, 1>> default_pair_stencil();

struct SingleModel {
  Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
  double predict(const Quaternion &q) const;
};

struct ControlledModel {
  Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
  Eigen::Vector4d a = Eigen::Vector4d::Zero();
  double b = 0.0;
  double predict(const Quaternion &q) const;
};

struct PairModel {
  Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d K = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d L = Eigen::Matrix4d::Zero();
  double predict(const Quaternion &p, const Quaternion &q) const;
  /// Cost as a function of p with q held fixed.
  ControlledModel p_slice(const Quaternion &q) const;
  /// Cost as a function of q with p held fixed.
  ControlledModel q_slice(const Quaternion &p) const;
};

using LandscapeModel = std::variant<SingleModel, ControlledModel, PairModel>;

using QuaternionCost = std::function<double(const Quaternion &)>;
using PairCost = std::function<double(const Quaternion &, const Quaternion &)>;

SingleModel estimate_single(const QuaternionCost &evaluator,
                            const ParameterConfiguration &config = ParameterConfiguration::default_single());
ControlledModel estimate_controlled(const QuaternionCost &evaluator,
                                    const ParameterConfiguration &config = ParameterConfiguration::default_controlled());
PairModel estimate_pair(const PairCost &evaluator,
                        const ParameterConfiguration &config = ParameterConfiguration::default_pair());

}  // namespace qfqs
