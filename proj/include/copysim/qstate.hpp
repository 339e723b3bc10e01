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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "copysim/error.hpp"
#include "copysim/layout.hpp"

namespace copysim {

/// Absolute tolerance for normalization, hermiticity, trace and unitarity checks.
inline constexpr double kTolerance = 1e-10;

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// Normalized pure state over a SubsystemLayout.
template <typename Real>
class BasicStateVector {
 public:
  using Scalar = std::complex<Real>;
  using Vector = CVector<Real>;

  /// Takes ownership of already-normalized amplitudes; see make_state() for
  /// the normalizing factory.
  BasicStateVector(SubsystemLayout layout, Vector amps)
      : layout_(std::move(layout)), amps_(std::move(amps)) {
    if (static_cast<std::size_t>(amps_.size()) != layout_.total_dim()) {
      throw Error(ErrorKind::kWrongAmplitudeCount,
                  "expected " + std::to_string(layout_.total_dim()) + " amplitudes, got " +
                      std::to_string(amps_.size()));
    }
    if (std::abs(static_cast<double>(amps_.squaredNorm()) - 1.0) > kTolerance) {
      throw Error(ErrorKind::kNotNormalized, "state vector is not normalized");
    }
  }

  const SubsystemLayout& layout() const { return layout_; }
  const Vector& amps() const { return amps_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  Scalar operator[](std::size_t k) const { return amps_(static_cast<Eigen::Index>(k)); }
  Real norm() const { return amps_.norm(); }

 private:
  SubsystemLayout layout_;
  Vector amps_;
};

/// Density operator on a subset of subsystems. The checked constructor
/// enforces hermiticity, unit trace and positive semidefiniteness.
template <typename Real>
class BasicDensityMatrix {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = CMatrix<Real>;

  BasicDensityMatrix(SubsystemLayout layout, Matrix elems)
      : layout_(std::move(layout)), elems_(std::move(elems)) {
    check_shape();
    const double herm = static_cast<double>((elems_ - elems_.adjoint()).cwiseAbs().maxCoeff());
    if (herm > kTolerance) {
      throw Error(ErrorKind::kInvalidDensityMatrix, "density matrix is not Hermitian");
    }
    if (std::abs(static_cast<double>(std::real(elems_.trace())) - 1.0) > kTolerance) {
      throw Error(ErrorKind::kInvalidDensityMatrix, "density matrix trace is not 1");
    }
    if (eigenvalues().size() > 0 && static_cast<double>(eigenvalues().minCoeff()) < -kTolerance) {
      throw Error(ErrorKind::kInvalidDensityMatrix, "density matrix has a negative eigenvalue");
    }
  }

  /// For matrices that satisfy the invariants by construction (partial
  /// traces of normalized states); only the shape is checked.
  static BasicDensityMatrix unchecked(SubsystemLayout layout, Matrix elems) {
    return BasicDensityMatrix(std::move(layout), std::move(elems), 0);
  }

  const SubsystemLayout& layout() const { return layout_; }
  const Matrix& elems() const { return elems_; }
  std::size_t dim() const { return static_cast<std::size_t>(elems_.rows()); }
  Scalar operator()(std::size_t i, std::size_t j) const {
    return elems_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  /// Ascending eigenvalues (Hermitian solver).
  RVector<Real> eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(elems_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
  }

  Real purity() const { return std::real((elems_ * elems_).trace()); }

 private:
  BasicDensityMatrix(SubsystemLayout layout, Matrix elems, int)
      : layout_(std::move(layout)), elems_(std::move(elems)) {
    check_shape();
  }

  void check_shape() const {
    const auto n = static_cast<Eigen::Index>(layout_.total_dim());
    if (elems_.rows() != n || elems_.cols() != n) {
      throw Error(ErrorKind::kDimensionMismatch, "density matrix side does not match layout");
    }
  }

  SubsystemLayout layout_;
  Matrix elems_;
};

/// Unitary acting on an ordered list of subsystems; the first target is the
/// most significant digit of the matrix index.
template <typename Real>
class BasicUnitaryOp {
 public:
  using Matrix = CMatrix<Real>;

  BasicUnitaryOp(std::vector<std::string> targets, Matrix matrix)
      : targets_(std::move(targets)), matrix_(std::move(matrix)) {
    if (targets_.empty()) {
      throw Error(ErrorKind::kEmptySubsystemSet, "unitary needs at least one target");
    }
    if (matrix_.rows() != matrix_.cols()) {
      throw Error(ErrorKind::kDimensionMismatch, "unitary matrix must be square");
    }
    const Matrix defect = matrix_.adjoint() * matrix_ - Matrix::Identity(matrix_.rows(), matrix_.cols());
    if (static_cast<double>(defect.cwiseAbs().maxCoeff()) >= kTolerance) {
      throw Error(ErrorKind::kNotUnitary, "matrix is not unitary within 1e-10");
    }
  }

  const std::vector<std::string>& targets() const { return targets_; }
  const Matrix& matrix() const { return matrix_; }

  BasicUnitaryOp inverse() const { return BasicUnitaryOp(targets_, matrix_.adjoint()); }

 private:
  std::vector<std::string> targets_;
  Matrix matrix_;
};

using StateVector = BasicStateVector<double>;
using DensityMatrix = BasicDensityMatrix<double>;
using UnitaryOp = BasicUnitaryOp<double>;

/// Initial state of one subsystem: a basis label or a local amplitude list.
struct LocalAssignment {
  std::string label;
  std::variant<std::string, std::vector<std::complex<double>>> value;
};

namespace detail {

/// Offsets (relative to a base index whose target digits are zero) of every
/// local index over `positions`, plus the list of such base indices.
struct BlockIndexing {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> bases;
};

// Flat indices spanned by the digits at `positions`, in mixed-radix order
// with the first position most significant. Odometer walk, no division.
inline std::vector<std::size_t> digit_span(const SubsystemLayout& layout,
                                           std::span<const std::size_t> positions) {
  std::size_t count = 1;
  for (auto p : positions) count *= layout.dim_at(p);
  std::vector<std::size_t> out(count);
  std::vector<std::size_t> digit(positions.size(), 0);
  std::size_t flat = 0;
  for (std::size_t n = 0; n < count; ++n) {
    out[n] = flat;
    for (std::size_t i = positions.size(); i-- > 0;) {
      const std::size_t p = positions[i];
      if (++digit[i] < layout.dim_at(p)) {
        flat += layout.stride(p);
        break;
      }
      flat -= (digit[i] - 1) * layout.stride(p);
      digit[i] = 0;
    }
  }
  return out;
}

inline BlockIndexing block_indexing(const SubsystemLayout& layout,
                                    std::span<const std::size_t> positions) {
  std::vector<std::size_t> rest;
  for (std::size_t p = 0; p < layout.size(); ++p) {
    if (std::find(positions.begin(), positions.end(), p) == positions.end()) rest.push_back(p);
  }
  return {digit_span(layout, positions), digit_span(layout, rest)};
}

}  // namespace detail

/// Applies an arbitrary (not necessarily unitary) matrix to the listed
/// subsystems of an amplitude vector. Used for unitaries and projectors.
template <typename Real>
CVector<Real> apply_matrix(const SubsystemLayout& layout, const CVector<Real>& amps,
                           std::span<const std::string> targets, const CMatrix<Real>& m) {
  const auto positions = layout.positions(targets);
  std::size_t block = 1;
  for (auto p : positions) block *= layout.dim_at(p);
  if (static_cast<std::size_t>(m.rows()) != block || static_cast<std::size_t>(m.cols()) != block) {
    throw Error(ErrorKind::kDimensionMismatch,
                "operator side " + std::to_string(m.rows()) + " does not match target dimension " +
                    std::to_string(block));
  }
  const auto idx = detail::block_indexing(layout, positions);
  const auto rows = static_cast<Eigen::Index>(idx.offsets.size());
  const auto cols = static_cast<Eigen::Index>(idx.bases.size());
  // Column r holds the target block at base r; one product updates them all.
  CMatrix<Real> blocks(rows, cols);
  for (Eigen::Index r = 0; r < cols; ++r) {
    for (Eigen::Index t = 0; t < rows; ++t) blocks(t, r) = amps(static_cast<Eigen::Index>(idx.bases[r] + idx.offsets[t]));
  }
  const CMatrix<Real> mapped = m * blocks;
  CVector<Real> out(amps.size());
  for (Eigen::Index r = 0; r < cols; ++r) {
    for (Eigen::Index t = 0; t < rows; ++t) out(static_cast<Eigen::Index>(idx.bases[r] + idx.offsets[t])) = mapped(t, r);
  }
  return out;
}

/// Normalizing factory from a full amplitude list.
template <typename Real = double>
BasicStateVector<Real> make_state(const SubsystemLayout& layout,
                                  std::span<const std::complex<double>> amps) {
  if (amps.size() != layout.total_dim()) {
    throw Error(ErrorKind::kWrongAmplitudeCount,
                "expected " + std::to_string(layout.total_dim()) + " amplitudes, got " +
                    std::to_string(amps.size()));
  }
  CVector<Real> v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t k = 0; k < amps.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) = std::complex<Real>(static_cast<Real>(amps[k].real()),
                                                        static_cast<Real>(amps[k].imag()));
  }
  const Real n = v.norm();
  if (!(n > Real(0)) || !std::isfinite(static_cast<double>(n))) {
    throw Error(ErrorKind::kZeroNorm, "amplitude list has zero norm");
  }
  v /= n;
  return BasicStateVector<Real>(layout, std::move(v));
}

template <typename Real = double>
BasicStateVector<Real> make_state(const SubsystemLayout& layout,
                                  std::initializer_list<std::complex<double>> amps) {
  return make_state<Real>(layout, std::span<const std::complex<double>>(amps.begin(), amps.size()));
}

/// Product state; every subsystem must be assigned exactly once. Local
/// amplitude lists are normalized individually.
template <typename Real = double>
BasicStateVector<Real> make_state(const SubsystemLayout& layout,
                                  std::span<const LocalAssignment> assignments) {
  std::vector<CVector<Real>> locals(layout.size());
  std::vector<bool> assigned(layout.size(), false);
  for (const auto& a : assignments) {
    const std::size_t p = layout.position(a.label);
    if (assigned[p]) {
      throw Error(ErrorKind::kDuplicateLabel, "subsystem '" + a.label + "' assigned twice");
    }
    assigned[p] = true;
    const std::size_t d = layout.dim_at(p);
    CVector<Real> local = CVector<Real>::Zero(static_cast<Eigen::Index>(d));
    if (const auto* name = std::get_if<std::string>(&a.value)) {
      local(static_cast<Eigen::Index>(layout.basis_index(a.label, *name))) = 1;
    } else {
      const auto& amps = std::get<std::vector<std::complex<double>>>(a.value);
      if (amps.size() != d) {
        throw Error(ErrorKind::kWrongAmplitudeCount,
                    "subsystem '" + a.label + "' needs " + std::to_string(d) + " amplitudes");
      }
      for (std::size_t i = 0; i < d; ++i) {
        local(static_cast<Eigen::Index>(i)) =
            std::complex<Real>(static_cast<Real>(amps[i].real()), static_cast<Real>(amps[i].imag()));
      }
      const Real n = local.norm();
      if (!(n > Real(0))) {
        throw Error(ErrorKind::kZeroNorm, "local amplitudes of '" + a.label + "' have zero norm");
      }
      local /= n;
    }
    locals[p] = std::move(local);
  }
  for (std::size_t p = 0; p < layout.size(); ++p) {
    if (!assigned[p]) {
      throw Error(ErrorKind::kUnknownLabel,
                  "no initial state given for subsystem '" + layout.entry(p).label + "'");
    }
  }
  CVector<Real> v = CVector<Real>::Ones(1);
  for (const auto& local : locals) {
    CVector<Real> next(v.size() * local.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(i * local.size(), local.size()) = v(i) * local;
    v = std::move(next);
  }
  return BasicStateVector<Real>(layout, std::move(v));
}

template <typename Real = double>
BasicStateVector<Real> make_state(const SubsystemLayout& layout,
                                  std::initializer_list<LocalAssignment> assignments) {
  return make_state<Real>(layout,
                          std::span<const LocalAssignment>(assignments.begin(), assignments.size()));
}

template <typename Real>
BasicStateVector<Real> apply_unitary(const BasicStateVector<Real>& state,
                                     const BasicUnitaryOp<Real>& op) {
  CVector<Real> out = apply_matrix<Real>(state.layout(), state.amps(), op.targets(), op.matrix());
  // Long gate chains accumulate rounding; pull the norm back once it drifts
  // past 1e-12 so an identity op still returns its input bit for bit.
  const Real n2 = out.squaredNorm();
  if (std::abs(static_cast<double>(n2) - 1.0) > 1e-12) out /= std::sqrt(n2);
  return BasicStateVector<Real>(state.layout(), std::move(out));
}

/// Tensor product a ⊗ b over the concatenated layout.
template <typename Real>
BasicStateVector<Real> tensor(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b) {
  SubsystemLayout layout = a.layout().concat(b.layout());
  CVector<Real> v(a.amps().size() * b.amps().size());
  for (Eigen::Index i = 0; i < a.amps().size(); ++i) {
    v.segment(i * b.amps().size(), b.amps().size()) = a.amps()(i) * b.amps();
  }
  return BasicStateVector<Real>(std::move(layout), std::move(v));
}

/// |s><s| over the full layout.
template <typename Real>
BasicDensityMatrix<Real> projector(const BasicStateVector<Real>& s) {
  return BasicDensityMatrix<Real>::unchecked(s.layout(), s.amps() * s.amps().adjoint());
}

/// Reduced density matrix on `keep`; the result lists the kept subsystems in
/// the order of the input layout, whatever the order of `keep`.
template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicStateVector<Real>& s,
                                       std::span<const std::string> keep) {
  const SubsystemLayout& layout = s.layout();
  SubsystemLayout kept = layout.subset(keep);
  std::vector<std::size_t> positions;
  for (const auto& e : kept.entries()) positions.push_back(layout.position(e.label));
  const auto idx = detail::block_indexing(layout, positions);
  const auto rows = static_cast<Eigen::Index>(idx.offsets.size());
  const auto cols = static_cast<Eigen::Index>(idx.bases.size());
  CMatrix<Real> psi(rows, cols);
  for (Eigen::Index r = 0; r < cols; ++r) {
    for (Eigen::Index t = 0; t < rows; ++t) {
      psi(t, r) = s.amps()(static_cast<Eigen::Index>(idx.bases[r] + idx.offsets[t]));
    }
  }
  CMatrix<Real> rho = psi * psi.adjoint();
  return BasicDensityMatrix<Real>::unchecked(std::move(kept), std::move(rho));
}

template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicStateVector<Real>& s,
                                       std::initializer_list<std::string> keep) {
  return partial_trace(s, std::span<const std::string>(keep.begin(), keep.size()));
}

template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicDensityMatrix<Real>& rho,
                                       std::span<const std::string> keep) {
  const SubsystemLayout& layout = rho.layout();
  SubsystemLayout kept = layout.subset(keep);
  std::vector<std::size_t> positions;
  for (const auto& e : kept.entries()) positions.push_back(layout.position(e.label));
  const auto idx = detail::block_indexing(layout, positions);
  const auto n = static_cast<Eigen::Index>(idx.offsets.size());
  CMatrix<Real> out = CMatrix<Real>::Zero(n, n);
  for (const std::size_t base : idx.bases) {
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        out(i, j) += rho.elems()(static_cast<Eigen::Index>(base + idx.offsets[i]),
                                 static_cast<Eigen::Index>(base + idx.offsets[j]));
      }
    }
  }
  return BasicDensityMatrix<Real>::unchecked(std::move(kept), std::move(out));
}

template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicDensityMatrix<Real>& rho,
                                       std::initializer_list<std::string> keep) {
  return partial_trace(rho, std::span<const std::string>(keep.begin(), keep.size()));
}

/// |<a|b>|^2, clamped to [0, 1].
template <typename Real>
Real fidelity(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b) {
  if (!(a.layout() == b.layout())) {
    throw Error(ErrorKind::kLayoutMismatch, "fidelity needs identical layouts");
  }
  const Real f = std::norm(a.amps().dot(b.amps()));
  return std::clamp(f, Real(0), Real(1));
}

/// Probability that `label` is found in its basis state `index`.
template <typename Real>
Real basis_probability(const BasicStateVector<Real>& s, const std::string& label, std::size_t index) {
  const std::size_t p = s.layout().position(label);
  const std::size_t d = s.layout().dim_at(p);
  const std::size_t stride = s.layout().stride(p);
  Real total = 0;
  for (std::size_t k = 0; k < s.dim(); ++k) {
    if ((k / stride) % d == index) total += std::norm(s[k]);
  }
  return total;
}

}  // namespace copysim
