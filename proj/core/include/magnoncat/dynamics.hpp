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

// Rotating-frame qubit-magnon Hamiltonian and a fixed-step RK4 integrator for
// the Lindblad master equation on the full composite density matrix.
//
// Units: Hamiltonian entries and rates are ordinary frequencies in MHz, times
// in microseconds. The generator multiplies coherent terms and kappa by 2 pi;
// 1/T1 and 1/T2 are used as printed.

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "magnoncat/hilbert.hpp"
#include "magnoncat/linalg.hpp"

namespace magnoncat::dynamics {

using hilbert::DensityMatrix;
using hilbert::SpaceDims;

enum class Frame {
  kQubitRotating,  // transmon reduces to its anharmonicity
  kLabTransmon,    // keeps omega_q c^dagger c
};

struct HamiltonianModel {
  SpaceDims dims{};
  double delta = 0.0;    // MHz, omega_m - omega_ac
  double g_tilde = 0.0;  // MHz
  double EC = 200.0;     // MHz, anharmonicity magnitude
  Frame frame = Frame::kQubitRotating;
  double omega_q = 0.0;  // MHz, used only in the lab frame
  double magnon_drive = 0.0;  // MHz, optional constant epsilon (m + m^dagger)
};

enum class DephasingModel {
  kLiteral,  // (1/T2) L[c^dagger c]
  kPure,     // T2 read as Ramsey time: rate 2/T2 - 1/T1 on L[c^dagger c]
};

struct NoiseConfig {
  double kappa = 0.0;  // MHz, magnon decay f_m alpha_G
  double n_th = 0.0;
  double T1 = std::numeric_limits<double>::infinity();  // us
  double T2 = std::numeric_limits<double>::infinity();  // us
  DephasingModel dephasing = DephasingModel::kLiteral;

  static NoiseConfig none() { return {}; }
  /// Throws ConfigError on negative or NaN entries.
  void validate() const;
  double relaxation_rate() const;  // 1/us
  double dephasing_rate() const;   // 1/us
};

SparseMatrix build_hamiltonian_sparse(const HamiltonianModel& model);
ComplexMatrix build_hamiltonian(const HamiltonianModel& model);

/// Precomputed right-hand side of the master equation:
///   drho/dt = -2 pi i [H, rho] + 2 pi kappa (n_th L[m^dagger] + (n_th + 1) L[m])
///             + (1/T1) L[c] + gamma_phi L[c^dagger c],
/// with L[o] rho = o rho o^dagger - {o^dagger o, rho} / 2.
class LindbladGenerator {
 public:
  LindbladGenerator(const SparseMatrix& hamiltonian_mhz, SpaceDims dims,
                    const NoiseConfig& noise);

  /// out = drho/dt in 1/us. With hermitian_input the commutator is formed
  /// from a single sparse product; the caller guarantees rho = rho^dagger.
  void apply(const ComplexMatrix& rho, ComplexMatrix& out,
             bool hermitian_input = false) const;

  int dim() const { return static_cast<int>(effective_.rows()); }
  /// True when the banded kernels are in use (tridiagonal effective
  /// Hamiltonian, single-offset jump operators).
  bool banded() const { return banded_; }

 private:
  struct Jump {
    SparseMatrix op;
    SparseMatrix op_adjoint;
    double rate;
    // Banded form: op(r, r + offset) = v(r); weight(r, c) = v(r) v(c)^*.
    int offset = 0;
    ComplexMatrix weight;
  };
  void apply_sparse(const ComplexMatrix& rho, ComplexMatrix& out,
                    bool hermitian_input) const;
  void apply_banded(const ComplexMatrix& rho, ComplexMatrix& out,
                    bool hermitian_input) const;

  SparseMatrix effective_;  // -i (2 pi H - i/2 sum rate L^dagger L)
  SparseMatrix effective_adjoint_;
  std::vector<Jump> jumps_;
  bool banded_ = false;
  StateVector eff_diag_;   // effective(r, r)
  StateVector eff_upper_;  // effective(r, r + 1)
  StateVector eff_lower_;  // effective(r + 1, r)
};

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& H,
                           SpaceDims dims, const NoiseConfig& noise);
ComplexMatrix lindblad_rhs(const DensityMatrix& rho, const ComplexMatrix& H,
                           const NoiseConfig& noise);

/// Largest dt * (angular rate) accepted by evolve().
inline constexpr double kStepRateLimit = 0.05;
/// Trace drift that aborts an evolution.
inline constexpr double kTraceAbortTol = 1e-6;

struct EvolveOptions {
  double t_final = 1.0;   // us
  double dt = 1.0e-3;     // us
  int record_every = 100;
  bool store_snapshots = false;
  bool check_positivity = false;
};

struct NamedObserver {
  std::string name;
  std::function<double(const DensityMatrix&, double t_us)> fn;
};

struct Trajectory {
  std::vector<std::string> columns;
  std::vector<double> times;
  std::vector<std::vector<double>> records;  // records[i][j] -> columns[j]
  std::vector<DensityMatrix> snapshots;      // aligned with times if stored
  std::optional<DensityMatrix> final_state;

  /// Index of a named column; throws std::out_of_range if absent.
  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

/// Integrates from rho0 over [0, t_final] with classical RK4. Transmon levels
/// above the highest populated one are never reached by this model (block
/// diagonal Hamiltonian, lowering-only jumps) and are dropped from the
/// integration; the step guard applies to the populated blocks.
Trajectory evolve(const DensityMatrix& rho0, const HamiltonianModel& model,
                  const NoiseConfig& noise, const EvolveOptions& options,
                  const std::vector<NamedObserver>& observers = {});

/// tr(rho^2).
double purity(const DensityMatrix& rho);

}  // namespace magnoncat::dynamics
