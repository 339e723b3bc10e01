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

#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "copysim/qstate.hpp"

namespace copysim {

/// Probability vector; entries >= 0 summing to 1 within 1e-10.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);
  Distribution(std::initializer_list<double> probs) : Distribution(std::vector<double>(probs)) {}

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

/// Entropy in bits, 0 log 0 = 0.
double shannon_entropy(const Distribution& d);

/// Binary entropy H(p, 1 - p) in bits.
double binary_entropy(double p);

/// I(X;Y) = H(X) + H(Y) - H(X,Y) for a joint matrix with rows X, columns Y.
double transinformation(const Eigen::MatrixXd& joint);

/// H(X|Y) = sum_y P(y) H(X | Y = y).
double conditional_entropy(const Eigen::MatrixXd& joint);

/// -sum lambda log2 lambda over the Hermitian eigenvalues; eigenvalues
/// below 1e-12 count as zero.
double von_neumann_entropy(const DensityMatrix& rho);

/// S(A) + S(B) - S(AB) for disjoint nonempty label sets.
double quantum_mutual_information(const StateVector& global, std::span<const std::string> part_a,
                                  std::span<const std::string> part_b);

inline double quantum_mutual_information(const StateVector& global,
                                         std::initializer_list<std::string> part_a,
                                         std::initializer_list<std::string> part_b) {
  return quantum_mutual_information(global, std::span<const std::string>(part_a.begin(), part_a.size()),
                                    std::span<const std::string>(part_b.begin(), part_b.size()));
}

}  // namespace copysim
