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

// Analog cat-state preparation: R_y(pi/2) on the qubit, evolution under the
// flux-modulated radiation pressure, a second R_y(pi/2), and a projective
// qubit measurement whose outcome selects an even or odd magnon cat.
//
// Gate convention: R_y(angle) = exp(-i angle sigma_y / 2) on {|0>, |1>},
// identity on higher transmon levels. With two R_y(pi/2) pulses the
// conditioned magnon state for outcome 1 is the even cat
// (|0> + e^{i theta}|beta>)/N and outcome 0 gives the odd cat.

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "magnoncat/device.hpp"
#include "magnoncat/dynamics.hpp"
#include "magnoncat/hilbert.hpp"

namespace magnoncat::protocol {

using hilbert::DensityMatrix;
using hilbert::SpaceDims;

inline constexpr int kEvenCatOutcome = 1;
inline constexpr int kOddCatOutcome = 0;
/// Branch probabilities below this are reported as null branches.
inline constexpr double kNullBranchProbability = 1e-12;

enum class Outcome { kProject0, kProject1, kBoth };

struct ProtocolConfig {
  device::DeviceParams device{};
  double phi_ac = std::numbers::pi / 10.0;  // rad
  double delta = 0.0;                       // MHz
  double t_final = 3.0;                     // us
  double dt = 1.0e-3;                       // us
  int record_every = 100;
  SpaceDims dims{3, 140};
  double T1 = 20.0;  // us
  double T2 = 20.0;  // us
  dynamics::DephasingModel dephasing = dynamics::DephasingModel::kLiteral;
  double temperature = 0.005;  // K
  Outcome outcome = Outcome::kBoth;
  /// Adds the constant magnon displacement -g_rp/delta_zpf^2 (m + m^dagger).
  bool constant_drive = false;
  bool store_snapshots = false;
  bool check_positivity = false;
  /// Replaces the device-derived modulated coupling (MHz) when set.
  std::optional<double> g_tilde_override;

  void validate() const;
};

/// Disabled noise entirely (kappa, n_th, T1, T2 off).
ProtocolConfig dissipationless(ProtocolConfig config);

double g_tilde(const ProtocolConfig& config);
double thermal_occupation(const ProtocolConfig& config);
dynamics::NoiseConfig noise_config(const ProtocolConfig& config);
dynamics::HamiltonianModel hamiltonian_model(const ProtocolConfig& config);

struct AnalyticCat {
  Complex beta{0.0, 0.0};
  double theta = 0.0;
};

/// beta(t) = (g/delta)(e^{-i delta t} - 1), theta(t) = (g/delta)^2 (delta t -
/// sin delta t) with g = 2 pi g_tilde, delta = 2 pi delta_mhz; the delta -> 0
/// limit beta = -i g t, theta = 0 is continuous.
AnalyticCat analytic_beta_theta(double g_tilde_mhz, double delta_mhz, double t_us);

/// Qubit rotation as a dims.qubit x dims.qubit matrix.
ComplexMatrix rotation_y_matrix(double angle, int qubit_levels);

DensityMatrix qubit_rotation_y(const DensityMatrix& rho, double angle);
StateVector qubit_rotation_y(const StateVector& psi, SpaceDims dims, double angle);

/// (|+>(|0> + e^{i theta}|beta>) + |->(|0> - e^{i theta}|beta>)) / 2.
StateVector ideal_bell_cat(const AnalyticCat& cat, SpaceDims dims);

/// Even (+1) or odd (-1) cat on dim magnon levels.
StateVector ideal_cat(const AnalyticCat& cat, int parity_sign, int dim);

double outcome_probability(const DensityMatrix& rho, int outcome);

struct Projection {
  double probability;
  DensityMatrix state;  // normalized magnon state
};

/// Projects the transmon onto |outcome>; throws NullStateError when the
/// branch probability is below kNullBranchProbability.
Projection conditional_projection(const DensityMatrix& rho, int outcome);

struct Branch {
  int outcome = 0;
  int parity_sign = 1;
  double probability = 0.0;
  std::optional<DensityMatrix> state;  // empty for null branches
  double fidelity = 0.0;  // vs ideal cat of matching parity, 0 for null
};

struct ProtocolResult {
  dynamics::Trajectory trajectory;
  std::vector<Branch> branches;
  double g_tilde = 0.0;  // MHz
  double n_th = 0.0;
  AnalyticCat final_cat{};
};

/// Trajectory columns, in order.
std::vector<std::string> trajectory_columns();

/// Even-cat branch of a joint state at time t: rotates, projects onto
/// kEvenCatOutcome and returns (probability, fidelity vs ideal even cat).
struct EvenCatCheck {
  double probability = 0.0;
  double fidelity = 0.0;
};
EvenCatCheck even_cat_check(const DensityMatrix& rho, const AnalyticCat& cat);

/// Magnon coherent amplitude <m> conditioned on the transmon in |1>.
Complex conditioned_displacement(const DensityMatrix& rho);

ProtocolResult run_protocol(const ProtocolConfig& config);

}  // namespace magnoncat::protocol
