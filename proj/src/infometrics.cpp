// Copyright 2026 The copysim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "copysim/infometrics.hpp"

#include <cmath>
#include <set>

namespace copysim {
namespace {

constexpr double kEigenFloor = 1e-12;

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

void check_joint(const Eigen::MatrixXd& joint) {
  if (joint.size() == 0 || joint.minCoeff() < 0.0 || std::abs(joint.sum() - 1.0) > kTolerance) {
    throw Error(ErrorKind::kInvalidDistribution,
                "joint distribution needs nonnegative entries summing to 1");
  }
}

double entropy_of(const Eigen::VectorXd& p) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) h += plogp(p(i));
  return h;
}

// Entropy of the reduced state on `labels`. The global state is pure, so the
// complement has the same spectrum; diagonalize whichever side is smaller.
double reduced_entropy(const StateVector& global, std::span<const std::string> labels) {
  const SubsystemLayout& layout = global.layout();
  const std::set<std::string> in(labels.begin(), labels.end());
  std::vector<std::string> complement;
  std::size_t dim_in = 1, dim_out = 1;
  for (const auto& e : layout.entries()) {
    if (in.count(e.label) > 0) {
      dim_in *= e.dim;
    } else {
      dim_out *= e.dim;
      complement.push_back(e.label);
    }
  }
  if (complement.empty()) return 0.0;
  if (dim_out < dim_in) return von_neumann_entropy(partial_trace(global, complement));
  return von_neumann_entropy(partial_trace(global, labels));
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw Error(ErrorKind::kInvalidDistribution, "distribution must be nonempty");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) {
      throw Error(ErrorKind::kInvalidDistribution, "distribution has a negative entry");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kTolerance) {
    throw Error(ErrorKind::kInvalidDistribution, "distribution does not sum to 1");
  }
}

double shannon_entropy(const Distribution& d) {
  double h = 0.0;
  for (double p : d.probs()) h += plogp(p);
  return h;
}

double binary_entropy(double p) { return plogp(p) + plogp(1.0 - p); }

double transinformation(const Eigen::MatrixXd& joint) {
  check_joint(joint);
  const double hx = entropy_of(joint.rowwise().sum());
  const double hy = entropy_of(joint.colwise().sum().transpose());
  double hxy = 0.0;
  for (Eigen::Index i = 0; i < joint.size(); ++i) hxy += plogp(joint.data()[i]);
  return std::max(0.0, hx + hy - hxy);
}

double conditional_entropy(const Eigen::MatrixXd& joint) {
  check_joint(joint);
  double h = 0.0;
  for (Eigen::Index y = 0; y < joint.cols(); ++y) {
    const double py = joint.col(y).sum();
    if (py <= 0.0) continue;
    h += py * entropy_of(joint.col(y) / py);
  }
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::VectorXd lambda = rho.eigenvalues();
  double s = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) >= kEigenFloor) s += plogp(lambda(i));
  }
  return s;
}

double quantum_mutual_information(const StateVector& global, std::span<const std::string> part_a,
                                  std::span<const std::string> part_b) {
  if (part_a.empty() || part_b.empty()) {
    throw Error(ErrorKind::kEmptySubsystemSet, "mutual information needs two nonempty parts");
  }
  std::set<std::string> a(part_a.begin(), part_a.end());
  std::vector<std::string> joint(part_a.begin(), part_a.end());
  for (const auto& l : part_b) {
    if (a.count(l) > 0) {
      throw Error(ErrorKind::kOverlappingPartitions, "subsystem '" + l + "' is in both parts");
    }
    joint.push_back(l);
  }
  global.layout().positions(joint);
  const double sa = reduced_entropy(global, part_a);
  const double sb = reduced_entropy(global, part_b);
  const double sab = reduced_entropy(global, joint);
  return std::max(0.0, sa + sb - sab);
}

}  // namespace copysim
