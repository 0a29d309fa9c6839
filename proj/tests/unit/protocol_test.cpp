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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "magnoncat/analysis.hpp"
#include "magnoncat/errors.hpp"
#include "support/random_states.hpp"

namespace magnoncat::protocol {
namespace {

using hilbert::kron;
using testing::Rng;

constexpr double kPi = std::numbers::pi;

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

ProtocolConfig small_config(double t_final, int magnon_levels) {
  ProtocolConfig c;
  c.dims = {3, magnon_levels};
  c.t_final = t_final;
  c.record_every = 50;
  return c;
}

TEST(Rotation, PlusStateAndComposition) {
  const SpaceDims dims{3, 2};
  const StateVector g = StateVector::Unit(6, 0);
  const StateVector plus = qubit_rotation_y(g, dims, kPi / 2);
  EXPECT_NEAR(plus(0).real(), 1 / std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(plus(2).real(), 1 / std::numbers::sqrt2, 1e-15);
  const StateVector one = qubit_rotation_y(plus, dims, kPi / 2);
  EXPECT_NEAR(std::abs(one(2)), 1.0, 1e-15);
  EXPECT_NEAR(one.norm(), 1.0, 1e-15);
}

TEST(Rotation, InverseAndIdentityOnSecondExcitedLevel) {
  Rng rng(51);
  const SpaceDims dims{3, 4};
  const DensityMatrix r = rng.composite(dims);
  const DensityMatrix back = qubit_rotation_y(qubit_rotation_y(r, 0.83), -0.83);
  EXPECT_LT(max_abs(back.matrix() - r.matrix()), 1e-14);
  const DensityMatrix rot = qubit_rotation_y(r, kPi / 2);
  EXPECT_NEAR(rot.matrix().trace().real(), 1.0, 1e-14);
  EXPECT_LT(max_abs(rot.matrix().block(8, 8, 4, 4) - r.matrix().block(8, 8, 4, 4)), 1e-15);
  const ComplexMatrix R = rotation_y_matrix(0.4, 3);
  EXPECT_LT(max_abs(R.adjoint() * R - ComplexMatrix::Identity(3, 3)), 1e-15);
  EXPECT_EQ(R(2, 2), Complex(1.0));
  // Density and state-vector forms agree.
  const StateVector psi = rng.state(12);
  const DensityMatrix from_vec =
      DensityMatrix::pure(dims, qubit_rotation_y(psi, dims, 1.3));
  const DensityMatrix from_rho = qubit_rotation_y(DensityMatrix::pure(dims, psi), 1.3);
  EXPECT_LT(max_abs(from_vec.matrix() - from_rho.matrix()), 1e-14);
}

TEST(AnalyticCat, Examples) {
  const AnalyticCat zero = analytic_beta_theta(0.51, 0.3, 0.0);
  EXPECT_EQ(zero.beta, Complex(0.0));
  EXPECT_EQ(zero.theta, 0.0);
  const AnalyticCat c = analytic_beta_theta(0.51, 0.0, 2.0);
  EXPECT_NEAR(c.beta.real(), 0.0, 1e-15);
  EXPECT_NEAR(c.beta.imag() / -6.4, 1.0, 0.02);
  EXPECT_NEAR(c.beta.imag(), -2 * kPi * 0.51 * 2.0, 1e-12);
  EXPECT_EQ(c.theta, 0.0);
}

TEST(AnalyticCat, PeriodicWithBoundedAmplitude) {
  const double g = 0.51, d = 0.8;
  const double period = 1.0 / d;  // 2 pi / (2 pi delta)
  double peak = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double t = 1.7 * period * i / 400.0;
    const double b = std::abs(analytic_beta_theta(g, d, t).beta);
    peak = std::max(peak, b);
    EXPECT_LE(b, 2 * g / d + 1e-12);
    EXPECT_NEAR(std::abs(analytic_beta_theta(g, d, t + period).beta), b, 1e-12);
  }
  EXPECT_NEAR(peak, 2 * g / d, 1e-3);
}

TEST(AnalyticCat, ContinuousAtZeroDetuning) {
  const AnalyticCat base = analytic_beta_theta(0.51, 0.0, 1.5);
  for (double d : {1e-12, 1e-9, 1e-7, 1e-5}) {
    const AnalyticCat c = analytic_beta_theta(0.51, d, 1.5);
    EXPECT_NEAR(std::abs(c.beta - base.beta), 0.0, 100 * d);
    EXPECT_NEAR(c.theta, 0.0, 100 * d);
  }
  // Both branches of the theta evaluation agree around the switch point.
  const double g = 0.4, t = 1.0;
  for (double d : {1.59e-3, 1.6e-3}) {
    const double x = 2 * kPi * d * t;
    const double r = g / d;
    const AnalyticCat c = analytic_beta_theta(g, d, t);
    EXPECT_NEAR(c.theta, r * r * (x - std::sin(x)), 1e-9 * std::abs(c.theta));
  }
}

TEST(AnalyticCat, MatchesExactUnitaryEvolution) {
  // e^{-i 2 pi H_1 t}|0> with H_1 = delta n + g (m + m^dagger) is e^{i theta}|beta>.
  const int dim = 60;
  const double g = 0.51, d = 0.37, t = 1.3;
  const auto op = hilbert::mode_operators(dim);
  const ComplexMatrix H = d * op.number + g * (op.annihilate + op.annihilate.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
  const StateVector phases =
      (Complex(0.0, -2 * kPi * t) * es.eigenvalues().cast<Complex>()).array().exp();
  const StateVector evolved = es.eigenvectors() * phases.asDiagonal() *
                              es.eigenvectors().adjoint() * hilbert::fock_state(0, dim);
  const AnalyticCat c = analytic_beta_theta(g, d, t);
  const StateVector expected =
      std::exp(Complex(0.0, c.theta)) * hilbert::coherent_state(c.beta, dim);
  EXPECT_LT((evolved - expected).norm(), 1e-10);
}

TEST(IdealBellCat, Examples) {
  const SpaceDims dims{3, 30};
  const StateVector b0 = ideal_bell_cat({}, dims);
  StateVector plus = StateVector::Zero(90);
  plus(0) = plus(30) = 1 / std::numbers::sqrt2;
  EXPECT_LT((b0 - plus).norm(), 1e-15);

  const AnalyticCat c{Complex(2.0, 1.0), 0.3};
  const StateVector bc = ideal_bell_cat(c, dims);
  EXPECT_NEAR(bc.norm(), 1.0, 1e-10);
  // +- basis form: (|+>(|0> + X) + |->(|0> - X)) / 2.
  const StateVector X = std::exp(Complex(0.0, 0.3)) * hilbert::coherent_state(c.beta, 30);
  const StateVector vac = hilbert::fock_state(0, 30);
  StateVector pm = StateVector::Zero(90);
  const double s = 1 / std::numbers::sqrt2;
  pm.segment(0, 30) = 0.5 * s * ((vac + X) + (vac - X));
  pm.segment(30, 30) = 0.5 * s * ((vac + X) - (vac - X));
  EXPECT_LT((bc - pm).norm(), 1e-14);
}

TEST(IdealBellCat, LargeAmplitudeIsMaximallyEntangled) {
  const SpaceDims dims{2, 110};
  const DensityMatrix r =
      DensityMatrix::pure(dims, ideal_bell_cat({Complex(0.0, -6.0), 0.0}, dims));
  const DensityMatrix q = hilbert::partial_trace(r, hilbert::Subsystem::kQubit);
  EXPECT_LT(max_abs(q.matrix() - ComplexMatrix::Identity(2, 2) / 2.0), 1e-7);
  EXPECT_NEAR(analysis::log_negativity(r), 1.0, 1e-3);
}

TEST(IdealCat, Examples) {
  EXPECT_LT((ideal_cat({}, +1, 10) - hilbert::fock_state(0, 10)).norm(), 1e-15);
  const StateVector c = ideal_cat({Complex(1.0, -2.0), 0.4}, -1, 50);
  EXPECT_NEAR(analysis::fidelity_pure(DensityMatrix::pure(c), c), 1.0, 1e-12);
  EXPECT_THROW(ideal_cat({}, -1, 10), NullStateError);
}

TEST(ConditionalProjection, ProductStateAndNullBranch) {
  Rng rng(52);
  const SpaceDims dims{3, 5};
  const ComplexMatrix rm = rng.density(5);
  const ComplexMatrix g = StateVector::Unit(3, 0) * StateVector::Unit(3, 0).adjoint();
  const DensityMatrix r(dims, kron(g, rm));
  const Projection p = conditional_projection(r, 0);
  EXPECT_NEAR(p.probability, 1.0, 1e-14);
  EXPECT_LT(max_abs(p.state.matrix() - rm), 1e-14);
  EXPECT_THROW(conditional_projection(r, 1), NullStateError);
  EXPECT_THROW(outcome_probability(r, 3), ConfigError);
}

TEST(ConditionalProjection, ProbabilitiesSumToOne) {
  Rng rng(53);
  const DensityMatrix r = rng.composite({3, 6});
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) sum += outcome_probability(r, k);
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(ConditionalProjection, IdealProtocolBranches) {
  const SpaceDims dims{3, 60};
  const AnalyticCat c{Complex(0.3, -1.2), 0.5};
  const StateVector joint = qubit_rotation_y(ideal_bell_cat(c, dims), dims, kPi / 2);
  const DensityMatrix r = DensityMatrix::pure(dims, joint);
  const Complex overlap = std::exp(Complex(0.0, c.theta)) *
                          hilbert::coherent_state(c.beta, 60)(0);
  EXPECT_NEAR(outcome_probability(r, kEvenCatOutcome), (1 + overlap.real()) / 2, 1e-12);
  EXPECT_NEAR(outcome_probability(r, kOddCatOutcome), (1 - overlap.real()) / 2, 1e-12);
  const Projection even = conditional_projection(r, kEvenCatOutcome);
  EXPECT_NEAR(analysis::fidelity_pure(even.state, ideal_cat(c, +1, 60)), 1.0, 1e-12);
  const Projection odd = conditional_projection(r, kOddCatOutcome);
  EXPECT_NEAR(analysis::fidelity_pure(odd.state, ideal_cat(c, -1, 60)), 1.0, 1e-12);
  const EvenCatCheck check = even_cat_check(DensityMatrix::pure(dims, ideal_bell_cat(c, dims)), c);
  EXPECT_NEAR(check.fidelity, 1.0, 1e-12);
  EXPECT_NEAR(check.probability, (1 + overlap.real()) / 2, 1e-12);
}

TEST(ProtocolConfig, DerivedModels) {
  ProtocolConfig c;
  const auto noise = noise_config(c);
  EXPECT_NEAR(noise.kappa, 0.5e3 * 1e-5, 1e-15);
  EXPECT_NEAR(noise.n_th, device::thermal_occupation(0.5, 0.005), 0.0);
  EXPECT_EQ(noise.T1, 20.0);
  const auto model = hamiltonian_model(c);
  EXPECT_DOUBLE_EQ(model.EC, 200.0);
  EXPECT_NEAR(model.g_tilde, 0.51, 0.03);
  EXPECT_EQ(model.magnon_drive, 0.0);
  c.constant_drive = true;
  c.device.phi_b = 1.0;
  EXPECT_NE(hamiltonian_model(c).magnon_drive, 0.0);
  c.g_tilde_override = 0.0;
  EXPECT_EQ(hamiltonian_model(c).g_tilde, 0.0);

  const ProtocolConfig quiet = dissipationless(ProtocolConfig{});
  const auto qn = noise_config(quiet);
  EXPECT_EQ(qn.kappa, 0.0);
  EXPECT_EQ(qn.n_th, 0.0);
  EXPECT_EQ(qn.relaxation_rate(), 0.0);
  EXPECT_EQ(qn.dephasing_rate(), 0.0);
}

TEST(ProtocolConfig, Validation) {
  ProtocolConfig c;
  EXPECT_NO_THROW(c.validate());
  c.temperature = -1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = ProtocolConfig{};
  c.dt = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = ProtocolConfig{};
  c.dims = {1, 10};
  EXPECT_THROW(c.validate(), DimensionError);
}

TEST(RunProtocol, UncoupledRunLeavesMagnonThermal) {
  ProtocolConfig c = small_config(0.3, 20);
  c.g_tilde_override = 0.0;
  c.temperature = 0.02;
  const ProtocolResult r = run_protocol(c);
  for (double en : r.trajectory.column("E_N")) EXPECT_NEAR(en, 0.0, 1e-9);
  const DensityMatrix thermal = hilbert::thermal_density(r.n_th, 20);
  ASSERT_EQ(r.branches.size(), 2u);
  for (const auto& b : r.branches) {
    if (!b.state) continue;
    EXPECT_LT(max_abs(b.state->matrix() - thermal.matrix()), 1e-9);
  }
}

TEST(RunProtocol, NullBranchWithoutCouplingOrNoise) {
  ProtocolConfig c = dissipationless(small_config(0.1, 10));
  c.g_tilde_override = 0.0;
  const ProtocolResult r = run_protocol(c);
  ASSERT_EQ(r.branches.size(), 2u);
  EXPECT_EQ(r.branches[0].outcome, 0);
  EXPECT_FALSE(r.branches[0].state.has_value());
  EXPECT_LT(r.branches[0].probability, 1e-12);
  EXPECT_TRUE(r.branches[1].state.has_value());
  EXPECT_NEAR(r.branches[1].fidelity, 1.0, 1e-12);
}

TEST(RunProtocol, OutcomeSelection) {
  ProtocolConfig c = small_config(0.05, 10);
  c.outcome = Outcome::kProject1;
  const ProtocolResult r = run_protocol(c);
  ASSERT_EQ(r.branches.size(), 1u);
  EXPECT_EQ(r.branches[0].outcome, 1);
  EXPECT_EQ(r.branches[0].parity_sign, 1);
}

TEST(RunProtocol, DissipationlessMatchesAnalyticOracle) {
  ProtocolConfig c = dissipationless(small_config(1.0, 50));
  c.record_every = 100;
  c.store_snapshots = true;
  const ProtocolResult r = run_protocol(c);
  const auto& traj = r.trajectory;
  const auto S = traj.column("S");
  const auto en = traj.column("E_N");
  const auto leak = traj.column("leak2");
  const SpaceDims dims = c.dims;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const AnalyticCat cat = analytic_beta_theta(r.g_tilde, c.delta, traj.times[i]);
    const StateVector ideal = ideal_bell_cat(cat, dims);
    const double fid = analysis::fidelity_pure(traj.snapshots[i], ideal);
    EXPECT_GE(fid * fid, 1 - 1e-6) << traj.times[i];
    const double s_ideal = std::norm(cat.beta);
    if (s_ideal > 0) {
      EXPECT_NEAR(S[i] / s_ideal, 1.0, 0.01);
    } else {
      EXPECT_NEAR(S[i], 0.0, 1e-12);
    }
    if (i > 0) EXPECT_GE(en[i], en[i - 1] - 1e-3);
    EXPECT_LT(leak[i], 1e-6);
  }
  double total = 0.0;
  for (const auto& b : r.branches) total += b.probability;
  EXPECT_NEAR(total, 1.0, 1e-8);
  for (const auto& b : r.branches) EXPECT_GE(b.fidelity, 0.999);
}

TEST(RunProtocol, StepHalvingChangesObservablesNegligibly) {
  ProtocolConfig c = small_config(0.4, 40);
  c.record_every = 100;
  const ProtocolResult coarse = run_protocol(c);
  c.dt /= 2;
  c.record_every *= 2;
  const ProtocolResult fine = run_protocol(c);
  ASSERT_EQ(coarse.trajectory.times.size(), fine.trajectory.times.size());
  for (std::size_t i = 0; i < coarse.trajectory.records.size(); ++i) {
    for (std::size_t j = 0; j < coarse.trajectory.columns.size(); ++j) {
      EXPECT_NEAR(coarse.trajectory.records[i][j], fine.trajectory.records[i][j], 1e-6)
          << coarse.trajectory.columns[j];
    }
  }
}

TEST(RunProtocol, TrajectoryColumns) {
  const ProtocolResult r = run_protocol(small_config(0.02, 8));
  EXPECT_EQ(r.trajectory.columns, trajectory_columns());
  EXPECT_EQ(r.trajectory.columns.size(), 8u);
  EXPECT_NEAR(r.trajectory.column("n_qubit").front(), 0.5, 1e-14);
}

}  // namespace
}  // namespace magnoncat::protocol
