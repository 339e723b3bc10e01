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

#include "copysim/measurement.hpp"

#include <cmath>
#include <cstdio>

namespace copysim {
namespace {

constexpr double kZeroProbability = 1e-12;

// Calls f(flat_index, digit) for every amplitude, where digit is the index of
// `label` within it. Nested strides instead of per-index division.
template <typename F>
void for_each_digit(const SubsystemLayout& layout, const std::string& label, F&& f) {
  const std::size_t d = layout.dim(label);
  const std::size_t stride = layout.stride(layout.position(label));
  const std::size_t outer = layout.total_dim() / (d * stride);
  std::size_t i = 0;
  for (std::size_t hi = 0; hi < outer; ++hi) {
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t lo = 0; lo < stride; ++lo) f(i++, k);
    }
  }
}

}  // namespace

std::string describe(const MeasurementBasis& basis) {
  if (const auto* r = std::get_if<RotatedBasis>(&basis)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "theta=%.9g", r->theta);
    return buf;
  }
  return "symbol";
}

ReadoutChannel::ReadoutChannel(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw Error(ErrorKind::kInvalidDistribution, "readout channel must be square");
  }
  for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
    if (matrix_.row(i).minCoeff() < 0.0 || matrix_.row(i).maxCoeff() > 1.0 ||
        std::abs(matrix_.row(i).sum() - 1.0) > kTolerance) {
      throw Error(ErrorKind::kInvalidDistribution,
                  "readout channel row " + std::to_string(i) + " is not a distribution");
    }
  }
}

Eigen::MatrixXd ReadoutChannel::joint(const Eigen::VectorXd& prior) const {
  if (prior.size() != matrix_.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "prior size does not match channel");
  }
  return prior.asDiagonal() * matrix_;
}

CopyResult premeasure(const StateVector& state, const std::string& system,
                      const std::string& apparatus, CopyLog log) {
  const double ready = basis_probability(state, apparatus, 0);
  if (ready < 1.0 - kTolerance) {
    throw Error(ErrorKind::kTargetNotPrepared,
                "apparatus '" + apparatus + "' is not in its ready state");
  }
  CopierSpec spec;
  spec.source = system;
  spec.target = apparatus;
  return apply_copy(state, spec, std::move(log));
}

StateVector premeasure(const StateVector& state, const std::string& system,
                       const std::string& apparatus) {
  return premeasure(state, system, apparatus, CopyLog{}).state;
}

CMatrix<double> basis_vectors(const SubsystemLayout& layout, const std::string& label,
                              const MeasurementBasis& basis) {
  const auto d = static_cast<Eigen::Index>(layout.dim(label));
  if (const auto* r = std::get_if<RotatedBasis>(&basis)) {
    if (d != 2) {
      throw Error(ErrorKind::kUnsupportedBasis,
                  "rotated readout needs a two-level subsystem, '" + label + "' has dim " +
                      std::to_string(d));
    }
    const double c = std::cos(r->theta / 2.0);
    const double s = std::sin(r->theta / 2.0);
    CMatrix<double> m(2, 2);
    m << c, -s,
         s, c;
    return m;
  }
  return CMatrix<double>::Identity(d, d);
}

std::vector<double> outcome_probabilities(const StateVector& state, const std::string& label,
                                          const MeasurementBasis& basis) {
  if (std::holds_alternative<SymbolBasis>(basis)) {
    std::vector<double> p(state.layout().dim(label), 0.0);
    for_each_digit(state.layout(), label, [&](std::size_t i, std::size_t k) {
      p[k] += std::norm(state.amps()(static_cast<Eigen::Index>(i)));
    });
    return p;
  }
  const CMatrix<double> vecs = basis_vectors(state.layout(), label, basis);
  const std::string keep[] = {label};
  const DensityMatrix rho = partial_trace(state, keep);
  std::vector<double> p(static_cast<std::size_t>(vecs.cols()));
  for (Eigen::Index k = 0; k < vecs.cols(); ++k) {
    const double v = std::real(vecs.col(k).dot(rho.elems() * vecs.col(k)));
    p[static_cast<std::size_t>(k)] = std::max(0.0, v);
  }
  return p;
}

StateVector project(const StateVector& state, const std::string& label,
                    const MeasurementBasis& basis, std::size_t result) {
  const CMatrix<double> vecs = basis_vectors(state.layout(), label, basis);
  if (result >= static_cast<std::size_t>(vecs.cols())) {
    throw Error(ErrorKind::kDimensionMismatch, "outcome index out of range");
  }
  CVector<double> amps;
  if (std::holds_alternative<SymbolBasis>(basis)) {
    amps = CVector<double>::Zero(state.amps().size());
    for_each_digit(state.layout(), label, [&](std::size_t i, std::size_t k) {
      if (k == result) amps(static_cast<Eigen::Index>(i)) = state.amps()(static_cast<Eigen::Index>(i));
    });
  } else {
    const auto k = static_cast<Eigen::Index>(result);
    const CMatrix<double> proj = vecs.col(k) * vecs.col(k).adjoint();
    const std::string targets[] = {label};
    amps = apply_matrix<double>(state.layout(), state.amps(), targets, proj);
  }
  const double p = amps.squaredNorm();
  if (p < kZeroProbability) {
    throw Error(ErrorKind::kAllZeroProbabilities,
                "outcome " + std::to_string(result) + " of '" + label + "' has zero probability");
  }
  amps /= std::sqrt(p);
  return StateVector(state.layout(), std::move(amps));
}

MeasurementOutcome measure(const StateVector& state, const std::string& label,
                           const MeasurementBasis& basis, Rng& rng) {
  const auto p = outcome_probabilities(state, label, basis);
  double total = 0.0, largest = 0.0;
  for (double x : p) {
    total += x;
    largest = std::max(largest, x);
  }
  if (largest < kZeroProbability) {
    throw Error(ErrorKind::kAllZeroProbabilities,
                "state has no support on the measurement basis of '" + label + "'");
  }
  const double u = rng.uniform() * total;
  std::size_t result = p.size();
  double cumulative = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < kZeroProbability) continue;
    cumulative += p[k];
    result = k;
    if (u < cumulative) break;
  }
  return {label, basis, result, p[result] / total, project(state, label, basis, result)};
}

MeasurementOutcome measure(const StateVector& state, const std::string& label,
                           const MeasurementBasis& basis, std::uint64_t seed) {
  Rng rng(seed);
  return measure(state, label, basis, rng);
}

Eigen::MatrixXd joint_readout(const StateVector& joint, const std::string& source,
                              const std::string& copy, const MeasurementBasis& copy_basis) {
  const CMatrix<double> copy_vecs = basis_vectors(joint.layout(), copy, copy_basis);
  const std::string keep[] = {source, copy};
  const DensityMatrix rho = partial_trace(joint, keep);
  // partial_trace keeps layout order; index the pair as (source, copy).
  const bool source_first = joint.layout().position(source) < joint.layout().position(copy);
  const auto ds = static_cast<Eigen::Index>(joint.layout().dim(source));
  const auto dc = copy_vecs.rows();
  Eigen::MatrixXd out(ds, copy_vecs.cols());
  for (Eigen::Index i = 0; i < ds; ++i) {
    for (Eigen::Index k = 0; k < copy_vecs.cols(); ++k) {
      CVector<double> v = CVector<double>::Zero(ds * dc);
      for (Eigen::Index t = 0; t < dc; ++t) {
        const Eigen::Index flat = source_first ? i * dc + t : t * ds + i;
        v(flat) = copy_vecs(t, k);
      }
      out(i, k) = std::max(0.0, std::real(v.dot(rho.elems() * v)));
    }
  }
  return out;
}

ReadoutChannel readout_channel(const StateVector& joint, const std::string& source,
                               const std::string& copy, double theta) {
  Eigen::MatrixXd p = joint_readout(joint, source, copy, RotatedBasis{theta});
  if (p.rows() != p.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "readout channel needs equal source and copy dims");
  }
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const double marginal = p.row(i).sum();
    if (marginal < kZeroProbability) {
      throw Error(ErrorKind::kDegenerateSource,
                  "source symbol " + std::to_string(i) + " of '" + source + "' never occurs");
    }
    p.row(i) /= marginal;
  }
  return ReadoutChannel(std::move(p));
}

}  // namespace copysim
