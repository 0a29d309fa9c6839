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

#include <vector>

#include "magnoncat/hilbert.hpp"
#include "magnoncat/linalg.hpp"

namespace magnoncat::analysis {

using hilbert::DensityMatrix;

/// Eigenvalues of the partial transpose below -threshold count as negative.
inline constexpr double kNegativeEigenvalueThreshold = 1e-12;

/// N(rho): summed magnitude of the negative eigenvalues of rho^{T_which}.
double negativity(const DensityMatrix& rho,
                  hilbert::Subsystem which = hilbert::Subsystem::kQubit);

/// E_N = log2(2 N(rho) + 1).
double log_negativity(const DensityMatrix& rho,
                      hilbert::Subsystem which = hilbert::Subsystem::kQubit);

/// sqrt(<psi|rho|psi>) for a unit-norm psi.
double fidelity_pure(const DensityMatrix& rho, const StateVector& psi);

/// |beta|^2.
double cat_size(Complex beta);

struct GridSpec {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;
  int points = 201;  // per axis

  /// Square grid [-half_width, half_width]^2.
  static GridSpec symmetric(double half_width, int points = 201);
  /// +-1.5 (|beta| + 2) around the origin.
  static GridSpec for_cat(double beta_abs, int points = 201);
  /// for_cat with |beta| estimated as sqrt(2 <n>), which is exact for an
  /// even cat with well separated components.
  static GridSpec for_state(const DensityMatrix& rho_m, int points = 201);
  void validate() const;
};

struct WignerGrid {
  std::vector<double> re_axis;
  std::vector<double> im_axis;
  Eigen::MatrixXd values;  // values(i_im, i_re)
  bool truncation_suspect = false;

  double cell_area() const;
  /// sum W dA over the grid; close to 1 when the grid encloses the state.
  double riemann_sum() const;
  double min() const { return values.minCoeff(); }
  double max() const { return values.maxCoeff(); }
};

enum class WignerMethod {
  /// Fock-basis recursion for the displaced-parity matrix elements,
  /// O(dim^2) per point and free of truncation artifacts in D(alpha).
  kFockRecursion,
  /// (2/pi) tr[D^dagger(alpha) rho D(alpha) P] with D from
  /// hilbert::displacement_op. O(dim^3) per point; only trustworthy where
  /// |alpha| is well inside the truncation.
  kDisplacedParity,
};

/// W(alpha) at one phase-space point, (2/pi) normalization (vacuum peak 2/pi).
double wigner_point(const DensityMatrix& rho_m, Complex alpha,
                    WignerMethod method = WignerMethod::kFockRecursion);

/// Wigner function of a single-mode state on a uniform grid. Grid rows are
/// evaluated in parallel.
WignerGrid wigner(const DensityMatrix& rho_m, const GridSpec& grid,
                  WignerMethod method = WignerMethod::kFockRecursion);

}  // namespace magnoncat::analysis
