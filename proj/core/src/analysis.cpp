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
#include "magnoncat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "magnoncat/errors.hpp"
#include "magnoncat/parallel.hpp"

namespace magnoncat::analysis {
namespace {

constexpr double kPi = std::numbers::pi;

// Sum over rho_mn of the displaced-parity matrix elements, generated by the
// standard three-term Fock recursion (Laguerre form). Returns W(alpha) with
// the (2/pi) normalization.
double wigner_fock_recursion(const ComplexMatrix& rho, Complex alpha,
                             std::vector<Complex>& w,
                             const std::vector<double>& root) {
  const int dim = static_cast<int>(rho.rows());
  w.assign(static_cast<std::size_t>(dim), Complex(0.0));
  const Complex two_a = 2.0 * alpha;
  const Complex two_ac = std::conj(two_a);
  w[0] = std::exp(-2.0 * std::norm(alpha)) / kPi;
  double acc = rho(0, 0).real() * w[0].real();
  for (int n = 1; n < dim; ++n) {
    w[n] = two_a * w[n - 1] / root[n];
    acc += 2.0 * (rho(0, n) * w[n]).real();
  }
  for (int m = 1; m < dim; ++m) {
    Complex temp = w[m];
    w[m] = (two_ac * temp - root[m] * w[m - 1]) / root[m];
    acc += (rho(m, m) * w[m]).real();
    for (int n = m + 1; n < dim; ++n) {
      const Complex next = (two_a * w[n - 1] - root[m] * temp) / root[n];
      temp = w[n];
      w[n] = next;
      acc += 2.0 * (rho(m, n) * w[n]).real();
    }
  }
  return 2.0 * acc;
}

double wigner_displaced_parity(const ComplexMatrix& rho, Complex alpha) {
  const int dim = static_cast<int>(rho.rows());
  const ComplexMatrix d = hilbert::displacement_op(alpha, dim);
  const ComplexMatrix shifted = d.adjoint() * rho * d;
  double acc = 0.0;
  for (int n = 0; n < dim; ++n) {
    acc += (n % 2 == 0 ? 1.0 : -1.0) * shifted(n, n).real();
  }
  return 2.0 / kPi * acc;
}

std::vector<double> root_table(int dim) {
  std::vector<double> root(static_cast<std::size_t>(dim));
  for (int n = 0; n < dim; ++n) root[n] = std::sqrt(static_cast<double>(n));
  return root;
}

std::vector<double> axis(double lo, double hi, int points) {
  std::vector<double> out(static_cast<std::size_t>(points));
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = lo + step * i;
  out.back() = hi;
  return out;
}

void require_single_mode(const DensityMatrix& rho, const char* what) {
  if (rho.is_composite()) {
    throw DimensionError(std::string(what) + ": expects a single-mode state");
  }
}

}  // namespace

double negativity(const DensityMatrix& rho, hilbert::Subsystem which) {
  const auto& dims = rho.dims();
  // Transmon levels above the highest populated one contribute only zero
  // eigenvalues; drop them before diagonalizing.
  const int top = hilbert::highest_populated_level(rho.matrix(), dims, 0.0);
  const hilbert::SpaceDims active{std::max(top + 1, 2), dims.magnon};
  const ComplexMatrix pt = hilbert::partial_transpose(
      rho.matrix().topLeftCorner(active.total(), active.total()), active, which);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pt, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("negativity: eigensolver failed");
  }
  double sum = 0.0;
  for (const double lambda : es.eigenvalues()) {
    if (lambda < -kNegativeEigenvalueThreshold) sum -= lambda;
  }
  return sum;
}

double log_negativity(const DensityMatrix& rho, hilbert::Subsystem which) {
  return std::log2(2.0 * negativity(rho, which) + 1.0);
}

double fidelity_pure(const DensityMatrix& rho, const StateVector& psi) {
  if (psi.size() != rho.dim()) {
    throw DimensionError("fidelity_pure: state dimension mismatch");
  }
  const double overlap = psi.dot(rho.matrix() * psi).real();
  return std::sqrt(std::max(0.0, overlap));
}

double cat_size(Complex beta) { return std::norm(beta); }

GridSpec GridSpec::symmetric(double half_width, int points) {
  return {-half_width, half_width, -half_width, half_width, points};
}

GridSpec GridSpec::for_cat(double beta_abs, int points) {
  return symmetric(1.5 * (beta_abs + 2.0), points);
}

GridSpec GridSpec::for_state(const DensityMatrix& rho_m, int points) {
  require_single_mode(rho_m, "GridSpec::for_state");
  double mean_n = 0.0;
  for (int n = 0; n < rho_m.dim(); ++n) mean_n += n * rho_m.matrix()(n, n).real();
  return for_cat(std::sqrt(2.0 * std::max(0.0, mean_n)), points);
}

void GridSpec::validate() const {
  if (points < 2 || !(re_max > re_min) || !(im_max > im_min)) {
    throw ConfigError("wigner grid: need >= 2 points and increasing ranges");
  }
}

double WignerGrid::cell_area() const {
  const double dre = (re_axis.back() - re_axis.front()) / (re_axis.size() - 1);
  const double dim = (im_axis.back() - im_axis.front()) / (im_axis.size() - 1);
  return dre * dim;
}

double WignerGrid::riemann_sum() const { return values.sum() * cell_area(); }

double wigner_point(const DensityMatrix& rho_m, Complex alpha,
                    WignerMethod method) {
  require_single_mode(rho_m, "wigner_point");
  if (method == WignerMethod::kDisplacedParity) {
    return wigner_displaced_parity(rho_m.matrix(), alpha);
  }
  std::vector<Complex> scratch;
  return wigner_fock_recursion(rho_m.matrix(), alpha, scratch,
                               root_table(rho_m.dim()));
}

WignerGrid wigner(const DensityMatrix& rho_m, const GridSpec& grid,
                  WignerMethod method) {
  require_single_mode(rho_m, "wigner");
  grid.validate();
  WignerGrid out;
  out.re_axis = axis(grid.re_min, grid.re_max, grid.points);
  out.im_axis = axis(grid.im_min, grid.im_max, grid.points);
  out.values.resize(grid.points, grid.points);
  out.truncation_suspect = hilbert::truncation_suspect(rho_m);

  const auto root = root_table(rho_m.dim());
  parallel_for(static_cast<std::size_t>(grid.points), [&](std::size_t row) {
    std::vector<Complex> scratch;
    for (int col = 0; col < grid.points; ++col) {
      const Complex alpha(out.re_axis[col], out.im_axis[row]);
      out.values(static_cast<Eigen::Index>(row), col) =
          method == WignerMethod::kFockRecursion
              ? wigner_fock_recursion(rho_m.matrix(), alpha, scratch, root)
              : wigner_displaced_parity(rho_m.matrix(), alpha);
    }
  });
  return out;
}

}  // namespace magnoncat::analysis
