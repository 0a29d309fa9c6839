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
#include "magnoncat/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "magnoncat/analysis.hpp"
#include "magnoncat/errors.hpp"

namespace magnoncat::protocol {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Block (a, b) of the rotated state R rho R^dagger, with R acting on the
// transmon factor only.
ComplexMatrix rotated_block(const ComplexMatrix& rho, const ComplexMatrix& R,
                            SpaceDims dims, int a, int b) {
  const int nm = dims.magnon;
  ComplexMatrix out = ComplexMatrix::Zero(nm, nm);
  for (int j = 0; j < dims.qubit; ++j) {
    const Complex raj = R(a, j);
    if (raj == Complex(0.0)) continue;
    for (int k = 0; k < dims.qubit; ++k) {
      const Complex w = raj * std::conj(R(b, k));
      if (w == Complex(0.0)) continue;
      out.noalias() += w * rho.block(j * nm, k * nm, nm, nm);
    }
  }
  return out;
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

double level_population(const ComplexMatrix& rho, SpaceDims dims, int k) {
  const int nm = dims.magnon;
  return rho.block(k * nm, k * nm, nm, nm).trace().real();
}

}  // namespace

void ProtocolConfig::validate() const {
  device::validate(device);
  dims.validate();
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!std::isfinite(phi_ac)) throw ConfigError("phi_ac must be finite");
  if (!std::isfinite(delta)) throw ConfigError("delta must be finite");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw ConfigError("t_final must be positive");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (record_every < 1) throw ConfigError("record_every must be >= 1");
  if (!(T1 > 0.0) || !(T2 > 0.0)) throw ConfigError("T1 and T2 must be positive");
  if (!finite_nonneg(temperature)) {
    throw ConfigError("temperature must be finite and >= 0");
  }
  if (g_tilde_override && !std::isfinite(*g_tilde_override)) {
    throw ConfigError("g_tilde override must be finite");
  }
}

ProtocolConfig dissipationless(ProtocolConfig config) {
  config.device.alphaG = 0.0;
  config.temperature = 0.0;
  config.T1 = std::numeric_limits<double>::infinity();
  config.T2 = std::numeric_limits<double>::infinity();
  return config;
}

double g_tilde(const ProtocolConfig& config) {
  if (config.g_tilde_override) return *config.g_tilde_override;
  return device::modulated_grp(config.device, config.phi_ac);
}

double thermal_occupation(const ProtocolConfig& config) {
  return device::thermal_occupation(config.device.f_m, config.temperature);
}

dynamics::NoiseConfig noise_config(const ProtocolConfig& config) {
  dynamics::NoiseConfig n;
  n.kappa = device::magnon_decay_rate(config.device);
  n.n_th = thermal_occupation(config);
  n.T1 = config.T1;
  n.T2 = config.T2;
  n.dephasing = config.dephasing;
  return n;
}

dynamics::HamiltonianModel hamiltonian_model(const ProtocolConfig& config) {
  dynamics::HamiltonianModel m;
  m.dims = config.dims;
  m.delta = config.delta;
  m.g_tilde = g_tilde(config);
  m.EC = config.device.EC * 1000.0;
  m.frame = dynamics::Frame::kQubitRotating;
  m.magnon_drive =
      config.constant_drive ? device::constant_displacement(config.device) : 0.0;
  return m;
}

AnalyticCat analytic_beta_theta(double g_tilde_mhz, double delta_mhz,
                                double t_us) {
  const double g = kTwoPi * g_tilde_mhz;
  const double d = kTwoPi * delta_mhz;
  const double x = d * t_us;
  AnalyticCat cat;
  if (std::abs(x) < 1e-8) {
    // Leading orders of the expansion in delta t.
    cat.beta = Complex(-g * t_us * x / 2.0, -g * t_us * (1.0 - x * x / 6.0));
    cat.theta = g * g * t_us * t_us * x / 6.0;
    return cat;
  }
  const double r = g / d;
  const double half = std::sin(x / 2.0);
  // e^{-ix} - 1 = -2 sin^2(x/2) - i sin x
  cat.beta = r * Complex(-2.0 * half * half, -std::sin(x));
  double x_minus_sin;
  if (std::abs(x) < 1e-2) {
    const double x3 = x * x * x;
    x_minus_sin = x3 / 6.0 - x3 * x * x / 120.0 + x3 * x3 * x / 5040.0;
  } else {
    x_minus_sin = x - std::sin(x);
  }
  cat.theta = r * r * x_minus_sin;
  return cat;
}

ComplexMatrix rotation_y_matrix(double angle, int qubit_levels) {
  if (qubit_levels < 2) throw DimensionError("rotation_y_matrix: need >= 2 levels");
  ComplexMatrix R = ComplexMatrix::Identity(qubit_levels, qubit_levels);
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  R(0, 0) = c;
  R(0, 1) = -s;
  R(1, 0) = s;
  R(1, 1) = c;
  return R;
}

DensityMatrix qubit_rotation_y(const DensityMatrix& rho, double angle) {
  const SpaceDims dims = rho.dims();
  const ComplexMatrix R = rotation_y_matrix(angle, dims.qubit);
  const int nm = dims.magnon;
  ComplexMatrix out(dims.total(), dims.total());
  for (int a = 0; a < dims.qubit; ++a) {
    for (int b = 0; b < dims.qubit; ++b) {
      out.block(a * nm, b * nm, nm, nm) =
          rotated_block(rho.matrix(), R, dims, a, b);
    }
  }
  return DensityMatrix::unchecked(dims, hermitize(out));
}

StateVector qubit_rotation_y(const StateVector& psi, SpaceDims dims,
                             double angle) {
  dims.validate();
  if (psi.size() != dims.total()) {
    throw DimensionError("qubit_rotation_y: state size does not match dims");
  }
  const ComplexMatrix R = rotation_y_matrix(angle, dims.qubit);
  const int nm = dims.magnon;
  StateVector out = StateVector::Zero(dims.total());
  for (int a = 0; a < dims.qubit; ++a) {
    for (int j = 0; j < dims.qubit; ++j) {
      if (R(a, j) == Complex(0.0)) continue;
      out.segment(a * nm, nm) += R(a, j) * psi.segment(j * nm, nm);
    }
  }
  return out;
}

StateVector ideal_bell_cat(const AnalyticCat& cat, SpaceDims dims) {
  dims.validate();
  const int nm = dims.magnon;
  const StateVector vac = hilbert::fock_state(0, nm);
  const StateVector shifted =
      std::exp(kI * cat.theta) * hilbert::coherent_state(cat.beta, nm);
  // |+>(|0> + X)/2 + |->(|0> - X)/2 = (|0>|0> + |1>X)/sqrt(2)
  StateVector psi = StateVector::Zero(dims.total());
  psi.segment(0, nm) = vac / std::numbers::sqrt2;
  psi.segment(nm, nm) = shifted / std::numbers::sqrt2;
  return psi;
}

StateVector ideal_cat(const AnalyticCat& cat, int parity_sign, int dim) {
  return hilbert::cat_state(cat.beta, cat.theta, parity_sign, dim);
}

double outcome_probability(const DensityMatrix& rho, int outcome) {
  const SpaceDims dims = rho.dims();
  if (outcome < 0 || outcome >= dims.qubit) {
    throw ConfigError("outcome outside the transmon levels");
  }
  return level_population(rho.matrix(), dims, outcome);
}

Projection conditional_projection(const DensityMatrix& rho, int outcome) {
  const double p = outcome_probability(rho, outcome);
  if (!(p >= kNullBranchProbability)) {
    throw NullStateError("conditional_projection: outcome " +
                         std::to_string(outcome) + " has vanishing probability");
  }
  const int nm = rho.dims().magnon;
  ComplexMatrix block = rho.matrix().block(outcome * nm, outcome * nm, nm, nm);
  block = hermitize(block) / p;
  // Restore an exact unit trace against integrator drift.
  block /= block.trace().real();
  return {p, DensityMatrix(std::move(block))};
}

std::vector<std::string> trajectory_columns() {
  return {"E_N", "S", "F_even", "purity", "n_magnon", "n_qubit", "leak2",
          "trunc_flag"};
}

EvenCatCheck even_cat_check(const DensityMatrix& rho, const AnalyticCat& cat) {
  const SpaceDims dims = rho.dims();
  const ComplexMatrix R = rotation_y_matrix(std::numbers::pi / 2.0, dims.qubit);
  ComplexMatrix block = hermitize(
      rotated_block(rho.matrix(), R, dims, kEvenCatOutcome, kEvenCatOutcome));
  const double p = block.trace().real();
  EvenCatCheck out;
  out.probability = p;
  if (!(p >= kNullBranchProbability)) return out;
  block /= p;
  const StateVector ideal = ideal_cat(cat, +1, dims.magnon);
  const Complex overlap = ideal.dot(block * ideal);
  out.fidelity = std::sqrt(std::max(0.0, overlap.real()));
  return out;
}

Complex conditioned_displacement(const DensityMatrix& rho) {
  const SpaceDims dims = rho.dims();
  const int nm = dims.magnon;
  const auto& m = rho.matrix();
  const double p = level_population(m, dims, 1);
  if (!(p >= kNullBranchProbability)) return Complex(0.0);
  // tr(B m) = sum_n B(n+1, n) sqrt(n+1) for the level-1 block B.
  Complex acc(0.0);
  for (int n = 0; n + 1 < nm; ++n) {
    acc += m(nm + n + 1, nm + n) * std::sqrt(static_cast<double>(n + 1));
  }
  return acc / p;
}

ProtocolResult run_protocol(const ProtocolConfig& config) {
  config.validate();
  const SpaceDims dims = config.dims;
  const int nm = dims.magnon;

  ProtocolResult result;
  result.g_tilde = g_tilde(config);
  result.n_th = thermal_occupation(config);
  const dynamics::HamiltonianModel model = hamiltonian_model(config);
  const dynamics::NoiseConfig noise = noise_config(config);

  const DensityMatrix qubit0 = DensityMatrix::pure(hilbert::fock_state(0, dims.qubit));
  const DensityMatrix thermal = hilbert::thermal_density(result.n_th, nm);
  const DensityMatrix rho0 = qubit_rotation_y(
      DensityMatrix(dims, hilbert::kron(qubit0.matrix(), thermal.matrix())),
      std::numbers::pi / 2.0);

  const double g = result.g_tilde;
  const double delta = config.delta;
  RealVector number_diag(nm);
  for (int n = 0; n < nm; ++n) number_diag(n) = n;

  std::vector<dynamics::NamedObserver> obs;
  obs.push_back({"E_N", [](const DensityMatrix& r, double) {
                   return analysis::log_negativity(r);
                 }});
  obs.push_back({"S", [](const DensityMatrix& r, double) {
                   return std::norm(conditioned_displacement(r));
                 }});
  obs.push_back({"F_even", [g, delta](const DensityMatrix& r, double t) {
                   return even_cat_check(r, analytic_beta_theta(g, delta, t))
                       .fidelity;
                 }});
  obs.push_back({"purity", [](const DensityMatrix& r, double) {
                   return dynamics::purity(r);
                 }});
  obs.push_back({"n_magnon", [dims, nm, number_diag](const DensityMatrix& r, double) {
                   double acc = 0.0;
                   for (int k = 0; k < dims.qubit; ++k) {
                     acc += (r.matrix().block(k * nm, k * nm, nm, nm)
                                 .diagonal().real().array() *
                             number_diag.array()).sum();
                   }
                   return acc;
                 }});
  obs.push_back({"n_qubit", [dims](const DensityMatrix& r, double) {
                   double acc = 0.0;
                   for (int k = 1; k < dims.qubit; ++k) {
                     acc += k * level_population(r.matrix(), dims, k);
                   }
                   return acc;
                 }});
  obs.push_back({"leak2", [dims](const DensityMatrix& r, double) {
                   double acc = 0.0;
                   for (int k = 2; k < dims.qubit; ++k) {
                     acc += level_population(r.matrix(), dims, k);
                   }
                   return acc;
                 }});
  obs.push_back({"trunc_flag", [](const DensityMatrix& r, double) {
                   return hilbert::truncation_suspect(r) ? 1.0 : 0.0;
                 }});

  dynamics::EvolveOptions opts;
  opts.t_final = config.t_final;
  opts.dt = config.dt;
  opts.record_every = config.record_every;
  opts.store_snapshots = config.store_snapshots;
  opts.check_positivity = config.check_positivity;
  result.trajectory = dynamics::evolve(rho0, model, noise, opts, obs);
  result.final_cat = analytic_beta_theta(g, delta, config.t_final);

  const DensityMatrix rotated =
      qubit_rotation_y(*result.trajectory.final_state, std::numbers::pi / 2.0);
  std::vector<int> outcomes;
  if (config.outcome != Outcome::kProject1) outcomes.push_back(0);
  if (config.outcome != Outcome::kProject0) outcomes.push_back(1);
  for (int k : outcomes) {
    Branch b;
    b.outcome = k;
    b.parity_sign = (k == kEvenCatOutcome) ? +1 : -1;
    b.probability = outcome_probability(rotated, k);
    if (b.probability >= kNullBranchProbability) {
      Projection proj = conditional_projection(rotated, k);
      try {
        b.fidelity = analysis::fidelity_pure(
            proj.state, ideal_cat(result.final_cat, b.parity_sign, nm));
      } catch (const NullStateError&) {
        b.fidelity = 0.0;
      }
      b.state = std::move(proj.state);
    }
    result.branches.push_back(std::move(b));
  }
  return result;
}

}  // namespace magnoncat::protocol
