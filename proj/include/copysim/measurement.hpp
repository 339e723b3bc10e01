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

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "copysim/copier.hpp"
#include "copysim/qstate.hpp"
#include "copysim/rng.hpp"

namespace copysim {

/// The subsystem's declared states-symbols.
struct SymbolBasis {
  friend bool operator==(const SymbolBasis&, const SymbolBasis&) = default;
};

/// Two-level basis {cos(t/2)|0> + sin(t/2)|1>, -sin(t/2)|0> + cos(t/2)|1>}.
struct RotatedBasis {
  double theta = 0.0;
  friend bool operator==(const RotatedBasis&, const RotatedBasis&) = default;
};

using MeasurementBasis = std::variant<SymbolBasis, RotatedBasis>;

/// "symbol" or "theta=<value>" (9 significant digits).
std::string describe(const MeasurementBasis& basis);

struct MeasurementOutcome {
  std::string label;
  MeasurementBasis basis;
  std::size_t result = 0;
  double probability = 0.0;
  StateVector post_state;
};

/// Row-stochastic matrix, entry (i, k) = P(readout k | source symbol i).
class ReadoutChannel {
 public:
  explicit ReadoutChannel(Eigen::MatrixXd matrix);
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  /// Joint distribution P(i, k) for a source prior over symbols.
  Eigen::MatrixXd joint(const Eigen::VectorXd& prior) const;

 private:
  Eigen::MatrixXd matrix_;
};

/// Von Neumann premeasurement: the copier with the apparatus as medium. The
/// apparatus must start in its ready state (basis index 0).
CopyResult premeasure(const StateVector& state, const std::string& system,
                      const std::string& apparatus, CopyLog log);
StateVector premeasure(const StateVector& state, const std::string& system,
                       const std::string& apparatus);

/// Columns are the basis vectors of `basis` on `label`.
CMatrix<double> basis_vectors(const SubsystemLayout& layout, const std::string& label,
                              const MeasurementBasis& basis);

/// Born probabilities of every outcome, without sampling.
std::vector<double> outcome_probabilities(const StateVector& state, const std::string& label,
                                          const MeasurementBasis& basis);

/// Renormalized projection onto outcome `result`; kAllZeroProbabilities if
/// the outcome has probability below 1e-12.
StateVector project(const StateVector& state, const std::string& label,
                    const MeasurementBasis& basis, std::size_t result);

MeasurementOutcome measure(const StateVector& state, const std::string& label,
                           const MeasurementBasis& basis, Rng& rng);
MeasurementOutcome measure(const StateVector& state, const std::string& label,
                           const MeasurementBasis& basis, std::uint64_t seed);

/// Exact joint distribution of reading `source` in its symbol basis and
/// `copy` in `copy_basis`; entry (i, k).
Eigen::MatrixXd joint_readout(const StateVector& joint, const std::string& source,
                              const std::string& copy, const MeasurementBasis& copy_basis);

/// Conditional readout probabilities when the copy is read in the basis
/// rotated by `theta`.
ReadoutChannel readout_channel(const StateVector& joint, const std::string& source,
                               const std::string& copy, double theta);

}  // namespace copysim
