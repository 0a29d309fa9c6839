// Copyright 2026 The magnoncat Authors
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

// Truncated bosonic operator algebra on the composite (transmon x magnon)
// space. Composite index order is transmon-major: |k>_q |n>_m sits at
// k * dim_m + n.

#include <optional>

#include "magnoncat/linalg.hpp"

namespace magnoncat::hilbert {

struct SpaceDims {
  int qubit = 3;
  int magnon = 140;

  int total() const { return qubit * magnon; }
  /// Throws DimensionError unless both factors have at least two levels.
  void validate() const;
  friend bool operator==(const SpaceDims&, const SpaceDims&) = default;
};

enum class Subsystem { kQubit, kMagnon };

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kTraceTol = 1e-8;
inline constexpr double kPositivityTol = 1e-7;
/// Combined population of the two highest Fock levels above which a state is
/// flagged as truncation suspect.
inline constexpr double kTruncationThreshold = 1e-4;

/// Hermitian, unit-trace operator on a single mode or on a composite space.
class DensityMatrix {
 public:
  /// Single-mode state. Throws InvalidStateError if not Hermitian / unit trace.
  explicit DensityMatrix(ComplexMatrix m);
  /// Composite state; the matrix must be dims.total() square.
  DensityMatrix(SpaceDims dims, ComplexMatrix m);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix pure(SpaceDims dims, const StateVector& psi);
  /// Skips the Hermiticity and trace checks. For integrators that track
  /// their own drift tolerances.
  static DensityMatrix unchecked(SpaceDims dims, ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  bool is_composite() const { return dims_.has_value(); }
  /// Throws DimensionError for single-mode states.
  const SpaceDims& dims() const;

  /// Smallest eigenvalue (Hermitian eigensolver).
  double min_eigenvalue() const;
  /// Throws InvalidStateError if min_eigenvalue() < -kPositivityTol.
  void check_positivity() const;

 private:
  struct UncheckedTag {};
  DensityMatrix(UncheckedTag, SpaceDims dims, ComplexMatrix m)
      : dims_(dims), m_(std::move(m)) {}
  void check_shape_and_invariants() const;

  std::optional<SpaceDims> dims_;
  ComplexMatrix m_;
};

struct ModeOperators {
  ComplexMatrix annihilate;
  ComplexMatrix number;
  ComplexMatrix identity;
  ComplexMatrix parity;
};

ModeOperators mode_operators(int dim);

/// Sparse annihilation operator with sqrt(n) on the first superdiagonal.
SparseMatrix sparse_annihilation(int dim);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
StateVector kron(const StateVector& a, const StateVector& b);

StateVector fock_state(int n, int dim);

/// Coherent state truncated to dim levels and renormalized.
StateVector coherent_state(Complex alpha, int dim);
/// |alpha|^2 <= dim / 4.
bool coherent_truncation_trusted(Complex alpha, int dim);

/// (|0> + s e^{i theta} |beta>) normalized exactly, s = parity_sign = +-1.
/// Throws NullStateError when the superposition vanishes.
StateVector cat_state(Complex beta, double theta, int parity_sign, int dim);

/// Gibbs state with occupation n_th, renormalized over the truncation.
DensityMatrix thermal_density(double n_th, int dim);

/// D(alpha) = exp(alpha m^dagger - alpha^* m), exponentiated through the
/// eigendecomposition of the Hermitian generator i(alpha m^dagger - alpha^* m).
ComplexMatrix displacement_op(Complex alpha, int dim);

/// Reduced state of the kept subsystem.
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

/// Partial transpose over the given subsystem.
ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which);
ComplexMatrix partial_transpose(const ComplexMatrix& m, SpaceDims dims,
                                Subsystem which);

/// Top-two Fock-level population above kTruncationThreshold. Composite states
/// are judged on their magnon marginal.
bool truncation_suspect(const DensityMatrix& rho);
bool truncation_suspect(const StateVector& psi);

/// Highest transmon level whose block row of a composite matrix carries an
/// entry above tol (0 if only the ground block is occupied).
int highest_populated_level(const ComplexMatrix& rho, SpaceDims dims,
                            double tol = 1e-14);

/// tr(rho A).
Complex expectation(const DensityMatrix& rho, const ComplexMatrix& op);

}  // namespace magnoncat::hilbert
