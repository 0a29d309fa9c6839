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
#include "magnoncat/dynamics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "magnoncat/errors.hpp"
#include "support/random_states.hpp"

namespace magnoncat::dynamics {
namespace {

using hilbert::kron;
using hilbert::mode_operators;
using testing::Rng;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

ComplexMatrix dissipator(const ComplexMatrix& L, const ComplexMatrix& rho) {
  const ComplexMatrix LdL = L.adjoint() * L;
  return L * rho * L.adjoint() - 0.5 * (LdL * rho + rho * LdL);
}

// Dense transcription of the master equation, independent of the generator.
ComplexMatrix reference_rhs(const ComplexMatrix& rho, const ComplexMatrix& H,
                            SpaceDims dims, const NoiseConfig& n) {
  const auto q = mode_operators(dims.qubit);
  const auto m = mode_operators(dims.magnon);
  const ComplexMatrix a = kron(q.identity, m.annihilate);
  const ComplexMatrix c = kron(q.annihilate, m.identity);
  ComplexMatrix out = Complex(0.0, -kTwoPi) * (H * rho - rho * H);
  const double k = kTwoPi * n.kappa;
  out += k * n.n_th * dissipator(a.adjoint(), rho);
  out += k * (n.n_th + 1.0) * dissipator(a, rho);
  out += n.relaxation_rate() * dissipator(c, rho);
  out += n.dephasing_rate() * dissipator(c.adjoint() * c, rho);
  return out;
}

NoiseConfig busy_noise() {
  NoiseConfig n;
  n.kappa = 0.7;
  n.n_th = 0.3;
  n.T1 = 4.0;
  n.T2 = 2.5;
  return n;
}

TEST(Hamiltonian, AnharmonicOnlyWithoutCoupling) {
  HamiltonianModel m;
  m.dims = {3, 4};
  m.EC = 200.0;
  const ComplexMatrix H = build_hamiltonian(m);
  EXPECT_LT(max_abs(H - ComplexMatrix(H.diagonal().asDiagonal())), 0.0 + 1e-300);
  for (int n = 0; n < 4; ++n) {
    EXPECT_EQ(H(n, n).real(), 0.0);
    EXPECT_EQ(H(4 + n, 4 + n).real(), 0.0);
    EXPECT_EQ(H(8 + n, 8 + n).real(), -200.0);
  }
}

TEST(Hamiltonian, TwoLevelBlockEigenvalues) {
  HamiltonianModel m;
  m.dims = {2, 2};
  m.g_tilde = 0.51;
  const ComplexMatrix H = build_hamiltonian(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H.bottomRightCorner(2, 2));
  EXPECT_NEAR(es.eigenvalues()(0), -0.51, 1e-14);
  EXPECT_NEAR(es.eigenvalues()(1), 0.51, 1e-14);
}

TEST(Hamiltonian, BlockStructure) {
  HamiltonianModel m;
  m.dims = {3, 6};
  m.g_tilde = 0.4;
  m.delta = 1.3;
  const ComplexMatrix H = build_hamiltonian(m);
  EXPECT_LT(max_abs(H - H.adjoint()), 1e-15);
  EXPECT_EQ(max_abs(H.block(0, 6, 6, 6)), 0.0);
  EXPECT_EQ(max_abs(H.block(6, 12, 6, 6)), 0.0);
  const auto op = mode_operators(6);
  for (int k = 0; k < 3; ++k) {
    const ComplexMatrix expected =
        -100.0 * k * (k - 1) * op.identity + 1.3 * op.number +
        0.4 * k * (op.annihilate + op.annihilate.adjoint());
    EXPECT_LT(max_abs(H.block(6 * k, 6 * k, 6, 6) - expected), 1e-14);
  }
}

TEST(Hamiltonian, LabFrameAddsQubitEnergy) {
  HamiltonianModel m;
  m.dims = {3, 3};
  m.frame = Frame::kLabTransmon;
  m.omega_q = 6728.0;
  const ComplexMatrix H = build_hamiltonian(m);
  EXPECT_EQ(H(3, 3).real(), 6728.0);
  EXPECT_EQ(H(6, 6).real(), 2 * 6728.0 - 200.0);
}

TEST(LindbladRhs, ZeroWithoutDynamics) {
  Rng rng(1);
  const DensityMatrix rho = rng.composite({3, 4});
  const ComplexMatrix H = ComplexMatrix::Zero(12, 12);
  EXPECT_EQ(max_abs(lindblad_rhs(rho, H, NoiseConfig::none())), 0.0);
}

TEST(LindbladRhs, MatchesDenseReference) {
  Rng rng(2);
  const SpaceDims dims{3, 7};
  HamiltonianModel m;
  m.dims = dims;
  m.g_tilde = 0.8;
  m.delta = -0.4;
  m.magnon_drive = 0.2;
  const ComplexMatrix H = build_hamiltonian(m);
  for (auto deph : {DephasingModel::kLiteral, DephasingModel::kPure}) {
    NoiseConfig n = busy_noise();
    n.dephasing = deph;
    const ComplexMatrix rho = rng.density(dims.total());
    const ComplexMatrix ref = reference_rhs(rho, H, dims, n);
    const LindbladGenerator gen(H.sparseView(), dims, n);
    EXPECT_TRUE(gen.banded());
    ComplexMatrix out;
    gen.apply(rho, out, true);
    EXPECT_LT(max_abs(out - ref), 1e-11);
    gen.apply(rho, out, false);
    EXPECT_LT(max_abs(out - ref), 1e-11);
  }
}

TEST(LindbladRhs, GenericHamiltonianUsesSparsePath) {
  Rng rng(3);
  const SpaceDims dims{2, 5};
  const ComplexMatrix H = rng.hermitian(10);
  const NoiseConfig n = busy_noise();
  const LindbladGenerator gen(H.sparseView(), dims, n);
  EXPECT_FALSE(gen.banded());
  const ComplexMatrix rho = rng.density(10);
  ComplexMatrix out;
  gen.apply(rho, out, false);
  EXPECT_LT(max_abs(out - reference_rhs(rho, H, dims, n)), 1e-11);
  gen.apply(rho, out, true);
  EXPECT_LT(max_abs(out - reference_rhs(rho, H, dims, n)), 1e-11);
}

TEST(LindbladRhs, TraceFreeAndHermitianPreserving) {
  Rng rng(4);
  const SpaceDims dims{3, 6};
  HamiltonianModel m;
  m.dims = dims;
  m.g_tilde = 1.1;
  const ComplexMatrix H = build_hamiltonian(m);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix rho = rng.hermitian(dims.total());
    const ComplexMatrix d = lindblad_rhs(rho, H, dims, busy_noise());
    EXPECT_LT(std::abs(d.trace()), 1e-12);
    EXPECT_LT(max_abs(d - d.adjoint()), 1e-12);
  }
}

TEST(LindbladRhs, RelaxationRateOfExcitedQubit) {
  const SpaceDims dims{3, 3};
  NoiseConfig n;
  n.T1 = 7.0;
  const ComplexMatrix q1 = hilbert::fock_state(1, 3) * hilbert::fock_state(1, 3).adjoint();
  const ComplexMatrix m0 = hilbert::fock_state(0, 3) * hilbert::fock_state(0, 3).adjoint();
  const ComplexMatrix rho = kron(q1, m0);
  const ComplexMatrix d = lindblad_rhs(rho, ComplexMatrix::Zero(9, 9), dims, n);
  const ComplexMatrix nq = kron(mode_operators(3).number, mode_operators(3).identity);
  EXPECT_NEAR((nq * d).trace().real(), -1.0 / 7.0, 1e-15);
}

TEST(LindbladRhs, ShapeMismatchThrows) {
  const ComplexMatrix rho = ComplexMatrix::Identity(6, 6) / 6.0;
  EXPECT_THROW(lindblad_rhs(rho, ComplexMatrix::Zero(4, 4), SpaceDims{2, 3},
                            NoiseConfig::none()),
               DimensionError);
}

TEST(NoiseConfig, RatesAndValidation) {
  NoiseConfig n;
  EXPECT_EQ(n.relaxation_rate(), 0.0);
  EXPECT_EQ(n.dephasing_rate(), 0.0);
  n.T1 = 20.0;
  n.T2 = 20.0;
  EXPECT_DOUBLE_EQ(n.dephasing_rate(), 1.0 / 20.0);
  n.dephasing = DephasingModel::kPure;
  EXPECT_DOUBLE_EQ(n.dephasing_rate(), 2.0 / 20.0 - 1.0 / 20.0);
  n.T2 = 50.0;  // beyond 2 T1: no pure dephasing left
  EXPECT_EQ(n.dephasing_rate(), 0.0);
  n.kappa = -1.0;
  EXPECT_THROW(n.validate(), ConfigError);
}

TEST(Evolve, FrozenWithoutDynamics) {
  Rng rng(5);
  const DensityMatrix rho0 = rng.composite({3, 5});
  HamiltonianModel m;
  m.dims = {3, 5};
  m.EC = 0.0;
  EvolveOptions o;
  o.t_final = 0.05;
  o.dt = 1e-3;
  o.record_every = 10;
  const auto traj = evolve(rho0, m, NoiseConfig::none(), o,
                           {{"re01", [](const DensityMatrix& r, double) {
                              return r.matrix()(0, 1).real();
                            }}});
  EXPECT_EQ(max_abs(traj.final_state->matrix() - rho0.matrix()), 0.0);
  for (double v : traj.column("re01")) EXPECT_EQ(v, rho0.matrix()(0, 1).real());
}

TEST(Evolve, RecordingSchedule) {
  HamiltonianModel m;
  m.dims = {2, 3};
  EvolveOptions o;
  o.t_final = 0.025;
  o.dt = 1e-3;
  o.record_every = 10;
  o.store_snapshots = true;
  const DensityMatrix rho0(m.dims, ComplexMatrix::Identity(6, 6) / 6.0);
  const auto traj = evolve(rho0, m, NoiseConfig::none(), o,
                           {{"t", [](const DensityMatrix&, double t) { return t; }}});
  ASSERT_EQ(traj.times.size(), 4u);
  EXPECT_NEAR(traj.times[1], 0.010, 1e-15);
  EXPECT_NEAR(traj.times[3], 0.025, 1e-15);
  EXPECT_EQ(traj.snapshots.size(), 4u);
  EXPECT_EQ(traj.column_index("t"), 0u);
  EXPECT_THROW(traj.column_index("missing"), std::out_of_range);
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    EXPECT_GT(traj.times[i], traj.times[i - 1]);
  }
}

TEST(Evolve, RejectsBadTimeGrid) {
  HamiltonianModel m;
  m.dims = {3, 20};
  m.g_tilde = 0.5;
  const DensityMatrix rho0 = DensityMatrix::pure(m.dims, StateVector::Unit(60, 0));
  EvolveOptions o;
  o.t_final = 1.0;
  o.dt = 0.01;  // 2 pi * 200 MHz * 10 ns is far beyond the rate limit
  const DensityMatrix excited =
      DensityMatrix::pure(m.dims, StateVector::Unit(60, 40));
  EXPECT_THROW(evolve(excited, m, NoiseConfig::none(), o), ConfigError);
  o.dt = 3e-4;
  o.t_final = 1e-3;
  EXPECT_THROW(evolve(rho0, m, NoiseConfig::none(), o), ConfigError);
}

TEST(Evolve, UnpopulatedTransmonLevelsDoNotLimitTheStep) {
  // Level 2 carries the 200 MHz anharmonicity; with it empty, 1 ns steps pass.
  HamiltonianModel m;
  m.dims = {3, 20};
  m.g_tilde = 0.5;
  const DensityMatrix rho0 = DensityMatrix::pure(m.dims, StateVector::Unit(60, 20));
  EvolveOptions o;
  o.t_final = 0.01;
  o.dt = 1e-3;
  EXPECT_NO_THROW(evolve(rho0, m, NoiseConfig::none(), o));
}

TEST(Evolve, QubitRelaxationOracle) {
  HamiltonianModel m;
  m.dims = {3, 2};
  NoiseConfig n;
  n.T1 = 1.0;
  const DensityMatrix rho0 = DensityMatrix::pure(m.dims, StateVector::Unit(6, 2));
  EvolveOptions o;
  o.t_final = 1.0;
  o.dt = 1e-3;
  o.record_every = 100;
  const auto traj = evolve(rho0, m, n, o,
                           {{"p1", [](const DensityMatrix& r, double) {
                              return r.matrix().block(2, 2, 2, 2).trace().real();
                            }}});
  const auto p1 = traj.column("p1");
  for (std::size_t i = 0; i < p1.size(); ++i) {
    EXPECT_NEAR(p1[i], std::exp(-traj.times[i]), 1e-5);
  }
  EXPECT_NEAR(p1.back(), std::exp(-1.0), 1e-5);
}

TEST(Evolve, MagnonDampingOracle) {
  const SpaceDims dims{2, 30};
  HamiltonianModel m;
  m.dims = dims;
  NoiseConfig n;
  n.kappa = 1.0;  // MHz, amplitude decays at pi * kappa
  const Complex alpha0(1.5, 0.8);
  const DensityMatrix rho0 = DensityMatrix::pure(
      dims, kron(hilbert::fock_state(0, 2), hilbert::coherent_state(alpha0, 30)));
  const ComplexMatrix a = kron(mode_operators(2).identity, mode_operators(30).annihilate);
  EvolveOptions o;
  o.t_final = 1.0;  // ~3.1 amplitude lifetimes
  o.dt = 1e-3;
  o.record_every = 50;
  const auto traj = evolve(rho0, m, n, o,
                           {{"abs_m", [&a](const DensityMatrix& r, double) {
                              return std::abs((r.matrix() * a).trace());
                            }}});
  const auto v = traj.column("abs_m");
  const double a0 = v.front();
  EXPECT_NEAR(a0, std::abs(alpha0), 1e-6);
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_NEAR(v[i], a0 * std::exp(-std::numbers::pi * traj.times[i]), 1e-4);
  }
}

TEST(Evolve, Rk4FourthOrderConvergence) {
  const SpaceDims dims{2, 12};
  HamiltonianModel m;
  m.dims = dims;
  m.g_tilde = 5.0;
  m.delta = 3.0;
  NoiseConfig n;
  n.kappa = 0.5;
  n.n_th = 0.2;
  n.T1 = 3.0;
  Rng rng(6);
  const DensityMatrix rho0 = rng.composite(dims, 2);
  auto final_state = [&](double dt) {
    EvolveOptions o;
    o.t_final = 0.4;
    o.dt = dt;
    o.record_every = 1000000;
    return evolve(rho0, m, n, o).final_state->matrix();
  };
  const ComplexMatrix r1 = final_state(2e-4);
  const ComplexMatrix r2 = final_state(1e-4);
  const ComplexMatrix r4 = final_state(5e-5);
  const double ratio = max_abs(r1 - r2) / max_abs(r2 - r4);
  EXPECT_GT(ratio, 16.0 * 0.7);
  EXPECT_LT(ratio, 16.0 * 1.3);
}

TEST(Evolve, UncoupledMarginalsMatchSingleSystemRuns) {
  const SpaceDims dims{3, 8};
  HamiltonianModel m;
  m.dims = dims;
  m.delta = 0.7;
  NoiseConfig n = busy_noise();
  Rng rng(7);
  ComplexMatrix rq = ComplexMatrix::Zero(3, 3);
  rq.topLeftCorner(2, 2) = rng.density(2);
  const ComplexMatrix rm = rng.density(8);
  const ComplexMatrix vac_q = StateVector::Unit(3, 0) * StateVector::Unit(3, 0).adjoint();
  const ComplexMatrix vac_m = StateVector::Unit(8, 0) * StateVector::Unit(8, 0).adjoint();
  EvolveOptions o;
  o.t_final = 0.3;
  o.dt = 1e-3;
  o.record_every = 1000;
  auto run = [&](const ComplexMatrix& joint) {
    return *evolve(DensityMatrix(dims, joint), m, n, o).final_state;
  };
  const DensityMatrix both = run(kron(rq, rm));
  const DensityMatrix qubit_only = run(kron(rq, vac_m));
  const DensityMatrix magnon_only = run(kron(vac_q, rm));
  using hilbert::Subsystem;
  EXPECT_LT(max_abs(partial_trace(both, Subsystem::kQubit).matrix() -
                    partial_trace(qubit_only, Subsystem::kQubit).matrix()),
            1e-12);
  EXPECT_LT(max_abs(partial_trace(both, Subsystem::kMagnon).matrix() -
                    partial_trace(magnon_only, Subsystem::kMagnon).matrix()),
            1e-12);
}

TEST(Evolve, DissipationlessConservesPurityAndEnergy) {
  const SpaceDims dims{3, 30};
  HamiltonianModel m;
  m.dims = dims;
  m.g_tilde = 0.51;
  m.delta = 0.2;
  const ComplexMatrix H = build_hamiltonian(m);
  StateVector psi = StateVector::Zero(dims.total());
  psi.segment(0, 30) = hilbert::coherent_state(0.5, 30);
  psi.segment(30, 30) = hilbert::coherent_state(Complex(0.0, 0.3), 30);
  psi.normalize();
  EvolveOptions o;
  o.t_final = 1.0;
  o.dt = 1e-3;
  o.record_every = 100;
  o.check_positivity = true;
  const auto traj = evolve(DensityMatrix::pure(dims, psi), m, NoiseConfig::none(), o,
                           {{"purity", [](const DensityMatrix& r, double) { return purity(r); }},
                            {"energy", [&H](const DensityMatrix& r, double) {
                               return (r.matrix() * H).trace().real();
                             }},
                            {"trace", [](const DensityMatrix& r, double) {
                               return r.matrix().trace().real();
                             }}});
  const auto e = traj.column("energy");
  for (double p : traj.column("purity")) EXPECT_NEAR(p, 1.0, 1e-8);
  for (double v : e) EXPECT_NEAR(v, e.front(), 1e-8 * std::abs(e.front()));
  for (double t : traj.column("trace")) EXPECT_NEAR(t, 1.0, 1e-8);
}

TEST(Purity, Examples) {
  EXPECT_NEAR(purity(DensityMatrix::pure(hilbert::coherent_state(1.0, 10))), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(purity(DensityMatrix(ComplexMatrix::Identity(4, 4) / 4.0)), 0.25);
}

TEST(Purity, NonIncreasingUnderDephasing) {
  const SpaceDims dims{3, 4};
  HamiltonianModel m;
  m.dims = dims;
  NoiseConfig n;
  n.T2 = 0.5;
  Rng rng(8);
  ComplexMatrix rho = ComplexMatrix::Zero(12, 12);
  rho.topLeftCorner(8, 8) = rng.density(8, 1);
  EvolveOptions o;
  o.t_final = 1.0;
  o.dt = 1e-3;
  o.record_every = 50;
  const auto traj = evolve(DensityMatrix(dims, rho), m, n, o,
                           {{"purity", [](const DensityMatrix& r, double) { return purity(r); }}});
  const auto p = traj.column("purity");
  for (std::size_t i = 1; i < p.size(); ++i) EXPECT_LE(p[i], p[i - 1] + 1e-12);
  EXPECT_LT(p.back(), p.front());
}

}  // namespace
}  // namespace magnoncat::dynamics
