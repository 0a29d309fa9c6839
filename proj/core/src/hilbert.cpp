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
#include "magnoncat/hilbert.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "magnoncat/errors.hpp"

namespace magnoncat::hilbert {
namespace {

void require_dim(int dim, const char* what) {
  if (dim < 2) {
    throw DimensionError(std::string(what) + ": dimension must be >= 2, got " +
                         std::to_string(dim));
  }
}

double top_two_population(const RealVector& populations) {
  const auto n = populations.size();
  if (n < 2) return populations.sum();
  return populations(n - 1) + populations(n - 2);
}

}  // namespace

void SpaceDims::validate() const {
  if (qubit < 2 || magnon < 2) {
    throw DimensionError("SpaceDims: both factors need >= 2 levels (got " +
                         std::to_string(qubit) + ", " + std::to_string(magnon) +
                         ")");
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  check_shape_and_invariants();
}

DensityMatrix::DensityMatrix(SpaceDims dims, ComplexMatrix m)
    : dims_(dims), m_(std::move(m)) {
  dims.validate();
  if (m_.rows() != dims.total()) {
    throw DimensionError("DensityMatrix: matrix size " +
                         std::to_string(m_.rows()) +
                         " does not match composite dims " +
                         std::to_string(dims.total()));
  }
  check_shape_and_invariants();
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(ComplexMatrix(psi * psi.adjoint()));
}

DensityMatrix DensityMatrix::pure(SpaceDims dims, const StateVector& psi) {
  return DensityMatrix(dims, ComplexMatrix(psi * psi.adjoint()));
}

DensityMatrix DensityMatrix::unchecked(SpaceDims dims, ComplexMatrix m) {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw DimensionError("DensityMatrix: matrix does not match composite dims");
  }
  return DensityMatrix(UncheckedTag{}, dims, std::move(m));
}

const SpaceDims& DensityMatrix::dims() const {
  if (!dims_) throw DimensionError("single-mode state has no composite dims");
  return *dims_;
}

void DensityMatrix::check_shape_and_invariants() const {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw DimensionError("DensityMatrix: matrix must be square and non-empty");
  }
  if (!m_.allFinite()) {
    throw InvalidStateError("DensityMatrix: non-finite entries");
  }
  const double herm = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermiticityTol) {
    throw InvalidStateError("DensityMatrix: not Hermitian (max |rho - rho^+| = " +
                            std::to_string(herm) + ")");
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - Complex(1.0)) > kTraceTol) {
    throw InvalidStateError("DensityMatrix: trace " + std::to_string(tr.real()) +
                            " differs from 1");
  }
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::check_positivity() const {
  const double lo = min_eigenvalue();
  if (lo < -kPositivityTol) {
    throw InvalidStateError("DensityMatrix: negative eigenvalue " +
                            std::to_string(lo));
  }
}

ModeOperators mode_operators(int dim) {
  require_dim(dim, "mode_operators");
  ModeOperators ops{ComplexMatrix::Zero(dim, dim), ComplexMatrix::Zero(dim, dim),
                    ComplexMatrix::Identity(dim, dim),
                    ComplexMatrix::Zero(dim, dim)};
  for (int n = 0; n < dim; ++n) {
    if (n > 0) ops.annihilate(n - 1, n) = std::sqrt(static_cast<double>(n));
    ops.number(n, n) = static_cast<double>(n);
    ops.parity(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  }
  return ops;
}

SparseMatrix sparse_annihilation(int dim) {
  require_dim(dim, "sparse_annihilation");
  SparseMatrix a(dim, dim);
  a.reserve(Eigen::VectorXi::Constant(dim, 1));
  for (int n = 1; n < dim; ++n) {
    a.insert(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  a.makeCompressed();
  return a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

StateVector kron(const StateVector& a, const StateVector& b) {
  StateVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

StateVector fock_state(int n, int dim) {
  if (n < 0 || n >= dim) throw DimensionError("fock_state: level out of range");
  StateVector v = StateVector::Zero(dim);
  v(n) = 1.0;
  return v;
}

StateVector coherent_state(Complex alpha, int dim) {
  require_dim(dim, "coherent_state");
  StateVector v(dim);
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) {
    v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  return v / v.norm();
}

bool coherent_truncation_trusted(Complex alpha, int dim) {
  return std::norm(alpha) <= dim / 4.0;
}

StateVector cat_state(Complex beta, double theta, int parity_sign, int dim) {
  if (parity_sign != 1 && parity_sign != -1) {
    throw ConfigError("cat_state: parity_sign must be +1 or -1");
  }
  StateVector psi = static_cast<double>(parity_sign) *
                    std::exp(kI * theta) * coherent_state(beta, dim);
  psi(0) += 1.0;
  const double norm = psi.norm();
  if (norm < 1e-12) {
    throw NullStateError("cat_state: superposition vanishes (odd cat at beta = 0)");
  }
  return psi / norm;
}

DensityMatrix thermal_density(double n_th, int dim) {
  require_dim(dim, "thermal_density");
  if (!(n_th >= 0.0) || !std::isfinite(n_th)) {
    throw ConfigError("thermal_density: n_th must be finite and >= 0");
  }
  const double q = n_th / (1.0 + n_th);
  RealVector w(dim);
  w(0) = 1.0;
  for (int n = 1; n < dim; ++n) w(n) = w(n - 1) * q;
  w /= w.sum();
  return DensityMatrix(ComplexMatrix(w.cast<Complex>().asDiagonal()));
}

ComplexMatrix displacement_op(Complex alpha, int dim) {
  require_dim(dim, "displacement_op");
  const ComplexMatrix a = mode_operators(dim).annihilate;
  const ComplexMatrix generator =
      kI * (alpha * a.adjoint() - std::conj(alpha) * a);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(generator);
  const StateVector phases =
      (-kI * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  const SpaceDims& d = rho.dims();
  const ComplexMatrix& m = rho.matrix();
  if (keep == Subsystem::kMagnon) {
    ComplexMatrix out = ComplexMatrix::Zero(d.magnon, d.magnon);
    for (int k = 0; k < d.qubit; ++k) {
      out += m.block(k * d.magnon, k * d.magnon, d.magnon, d.magnon);
    }
    return DensityMatrix(std::move(out));
  }
  ComplexMatrix out(d.qubit, d.qubit);
  for (int j = 0; j < d.qubit; ++j) {
    for (int k = 0; k < d.qubit; ++k) {
      out(j, k) = m.block(j * d.magnon, k * d.magnon, d.magnon, d.magnon).trace();
    }
  }
  return DensityMatrix(std::move(out));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, SpaceDims dims,
                                Subsystem which) {
  dims.validate();
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw DimensionError("partial_transpose: matrix does not match dims");
  }
  const int dm = dims.magnon;
  ComplexMatrix out(m.rows(), m.cols());
  for (int j = 0; j < dims.qubit; ++j) {
    for (int k = 0; k < dims.qubit; ++k) {
      if (which == Subsystem::kQubit) {
        out.block(j * dm, k * dm, dm, dm) = m.block(k * dm, j * dm, dm, dm);
      } else {
        out.block(j * dm, k * dm, dm, dm) =
            m.block(j * dm, k * dm, dm, dm).transpose();
      }
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which) {
  return partial_transpose(rho.matrix(), rho.dims(), which);
}

bool truncation_suspect(const DensityMatrix& rho) {
  if (rho.is_composite()) {
    const auto& d = rho.dims();
    RealVector pops = RealVector::Zero(d.magnon);
    const auto diag = rho.matrix().diagonal().real();
    for (int k = 0; k < d.qubit; ++k) pops += diag.segment(k * d.magnon, d.magnon);
    return top_two_population(pops) > kTruncationThreshold;
  }
  return top_two_population(rho.matrix().diagonal().real()) >
         kTruncationThreshold;
}

bool truncation_suspect(const StateVector& psi) {
  return top_two_population(psi.cwiseAbs2()) > kTruncationThreshold;
}

int highest_populated_level(const ComplexMatrix& rho, SpaceDims dims,
                            double tol) {
  const int dm = dims.magnon;
  for (int k = dims.qubit - 1; k > 0; --k) {
    if (rho.middleRows(k * dm, dm).cwiseAbs().maxCoeff() > tol) return k;
  }
  return 0;
}

Complex expectation(const DensityMatrix& rho, const ComplexMatrix& op) {
  if (op.rows() != rho.dim() || op.cols() != rho.dim()) {
    throw DimensionError("expectation: operator does not match state");
  }
  // tr(rho A) = sum_ij rho_ij A_ji
  return (rho.matrix().array() * op.transpose().array()).sum();
}

}  // namespace magnoncat::hilbert
