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

#include <algorithm>
#include <optional>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "magnoncat/errors.hpp"

namespace magnoncat::dynamics {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Triplet = Eigen::Triplet<Complex>;

SparseMatrix sparse_identity(int n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

SparseMatrix sparse_kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib) {
          triplets.emplace_back(ia.row() * b.rows() + ib.row(),
                                ia.col() * b.cols() + ib.col(),
                                ia.value() * ib.value());
        }
      }
    }
  }
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

// Offset s such that every nonzero sits at (r, r + s), if one exists.
std::optional<int> single_offset(const SparseMatrix& m) {
  std::optional<int> offset;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (it.value() == Complex(0.0)) continue;
      const int s = static_cast<int>(it.col() - it.row());
      if (offset && *offset != s) return std::nullopt;
      offset = s;
    }
  }
  return offset.value_or(0);
}

bool is_tridiagonal(const SparseMatrix& m) {
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (std::abs(it.col() - it.row()) > 1 && it.value() != Complex(0.0)) {
        return false;
      }
    }
  }
  return true;
}

double max_abs_entry(const SparseMatrix& m) {
  double best = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      best = std::max(best, std::abs(it.value()));
    }
  }
  return best;
}

}  // namespace

void NoiseConfig::validate() const {
  auto bad = [](double x) { return std::isnan(x) || x < 0.0; };
  if (bad(kappa) || bad(n_th) || !std::isfinite(kappa) || !std::isfinite(n_th)) {
    throw ConfigError("noise: kappa and n_th must be finite and >= 0");
  }
  if (std::isnan(T1) || std::isnan(T2) || !(T1 > 0.0) || !(T2 > 0.0)) {
    throw ConfigError("noise: T1 and T2 must be > 0 (use inf to disable)");
  }
}

double NoiseConfig::relaxation_rate() const {
  return std::isinf(T1) ? 0.0 : 1.0 / T1;
}

double NoiseConfig::dephasing_rate() const {
  const double literal = std::isinf(T2) ? 0.0 : 1.0 / T2;
  if (dephasing == DephasingModel::kLiteral) return literal;
  // Coherence decays at rate 1/(2 T1) + gamma/2 under L[c] and gamma L[c^+c].
  return std::max(0.0, 2.0 * literal - relaxation_rate());
}

SparseMatrix build_hamiltonian_sparse(const HamiltonianModel& model) {
  model.dims.validate();
  const int dq = model.dims.qubit;
  const int dm = model.dims.magnon;
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(3 * dq * dm));
  for (int k = 0; k < dq; ++k) {
    const double kk = static_cast<double>(k);
    double transmon = -0.5 * model.EC * kk * (kk - 1.0);
    if (model.frame == Frame::kLabTransmon) transmon += model.omega_q * kk;
    const double quadrature = kk * model.g_tilde + model.magnon_drive;
    const int offset = k * dm;
    for (int n = 0; n < dm; ++n) {
      const double diag = transmon + model.delta * n;
      if (diag != 0.0) triplets.emplace_back(offset + n, offset + n, diag);
      if (n > 0 && quadrature != 0.0) {
        const double amp = quadrature * std::sqrt(static_cast<double>(n));
        triplets.emplace_back(offset + n - 1, offset + n, amp);
        triplets.emplace_back(offset + n, offset + n - 1, amp);
      }
    }
  }
  SparseMatrix h(model.dims.total(), model.dims.total());
  h.setFromTriplets(triplets.begin(), triplets.end());
  return h;
}

ComplexMatrix build_hamiltonian(const HamiltonianModel& model) {
  return ComplexMatrix(build_hamiltonian_sparse(model));
}

LindbladGenerator::LindbladGenerator(const SparseMatrix& hamiltonian_mhz,
                                     SpaceDims dims, const NoiseConfig& noise) {
  dims.validate();
  noise.validate();
  if (hamiltonian_mhz.rows() != dims.total() ||
      hamiltonian_mhz.cols() != dims.total()) {
    throw DimensionError("LindbladGenerator: Hamiltonian does not match dims");
  }
  const SparseMatrix id_q = sparse_identity(dims.qubit);
  const SparseMatrix id_m = sparse_identity(dims.magnon);
  const SparseMatrix m = sparse_kron(id_q, hilbert::sparse_annihilation(dims.magnon));
  const SparseMatrix c = sparse_kron(hilbert::sparse_annihilation(dims.qubit), id_m);
  const SparseMatrix cdc = SparseMatrix(c.adjoint()) * c;

  auto add_jump = [this](const SparseMatrix& op, double rate) {
    if (rate <= 0.0) return;
    SparseMatrix scaled = std::sqrt(rate) * op;
    SparseMatrix adj = scaled.adjoint();
    jumps_.push_back({std::move(scaled), std::move(adj), rate, 0, {}});
  };
  const double kappa = kTwoPi * noise.kappa;
  add_jump(m, kappa * (noise.n_th + 1.0));
  add_jump(SparseMatrix(m.adjoint()), kappa * noise.n_th);
  add_jump(c, noise.relaxation_rate());
  add_jump(cdc, noise.dephasing_rate());

  // effective = -i (2 pi H) - 1/2 sum_k L_k^dagger L_k, with L_k pre-scaled.
  effective_ = Complex(0.0, -kTwoPi) * hamiltonian_mhz;
  for (const auto& j : jumps_) {
    effective_ -= 0.5 * SparseMatrix(j.op_adjoint * j.op);
  }
  effective_.prune(Complex(0.0));
  effective_.makeCompressed();
  effective_adjoint_ = effective_.adjoint();

  banded_ = is_tridiagonal(effective_);
  for (auto& j : jumps_) {
    const auto offset = single_offset(j.op);
    if (!offset) {
      banded_ = false;
      break;
    }
    j.offset = *offset;
  }
  if (!banded_) return;

  const int n = dims.total();
  const ComplexMatrix dense_eff(effective_);
  eff_diag_ = dense_eff.diagonal();
  eff_upper_ = dense_eff.diagonal(1);
  eff_lower_ = dense_eff.diagonal(-1);
  for (auto& j : jumps_) {
    StateVector v = StateVector::Zero(n);
    for (int k = 0; k < j.op.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(j.op, k); it; ++it) {
        v(it.row()) = it.value();
      }
    }
    j.weight = v * v.adjoint();
  }
}

void LindbladGenerator::apply(const ComplexMatrix& rho, ComplexMatrix& out,
                              bool hermitian_input) const {
  const Eigen::Index n = effective_.rows();
  if (rho.rows() != n || rho.cols() != n) {
    throw DimensionError("lindblad_rhs: state does not match generator");
  }
  out.resize(n, n);
  if (banded_) {
    apply_banded(rho, out, hermitian_input);
  } else {
    apply_sparse(rho, out, hermitian_input);
  }
}

void LindbladGenerator::apply_banded(const ComplexMatrix& rho,
                                     ComplexMatrix& out,
                                     bool hermitian_input) const {
  const Eigen::Index n = rho.rows();
  // out = effective * rho, row by row from the three diagonals.
  out.noalias() = eff_diag_.asDiagonal() * rho;
  out.topRows(n - 1).noalias() += eff_upper_.asDiagonal() * rho.bottomRows(n - 1);
  out.bottomRows(n - 1).noalias() += eff_lower_.asDiagonal() * rho.topRows(n - 1);
  if (hermitian_input) {
    const ComplexMatrix half = out.adjoint();
    out += half;
  } else {
    // rho * effective^dagger = (effective * rho^dagger)^dagger
    const ComplexMatrix rd = rho.adjoint();
    ComplexMatrix t(n, n);
    t.noalias() = eff_diag_.asDiagonal() * rd;
    t.topRows(n - 1).noalias() += eff_upper_.asDiagonal() * rd.bottomRows(n - 1);
    t.bottomRows(n - 1).noalias() += eff_lower_.asDiagonal() * rd.topRows(n - 1);
    out += t.adjoint();
  }
  for (const auto& j : jumps_) {
    const Eigen::Index s = j.offset;
    const Eigen::Index len = n - std::abs(s);
    if (len <= 0) continue;
    const Eigen::Index r0 = std::max<Eigen::Index>(0, -s);
    out.block(r0, r0, len, len) += j.weight.block(r0, r0, len, len).cwiseProduct(
        rho.block(r0 + s, r0 + s, len, len));
  }
}

void LindbladGenerator::apply_sparse(const ComplexMatrix& rho,
                                     ComplexMatrix& out,
                                     bool hermitian_input) const {
  const Eigen::Index n = effective_.rows();
  out.noalias() = effective_ * rho;
  if (hermitian_input) {
    // out <- out + out^dagger, in place.
    for (Eigen::Index j = 0; j < n; ++j) {
      out(j, j) = 2.0 * out(j, j).real();
      for (Eigen::Index i = j + 1; i < n; ++i) {
        const Complex a = out(i, j);
        const Complex b = out(j, i);
        out(i, j) = a + std::conj(b);
        out(j, i) = b + std::conj(a);
      }
    }
  } else {
    out.noalias() += rho * effective_adjoint_;
  }
  ComplexMatrix scratch(n, n);
  for (const auto& j : jumps_) {
    scratch.noalias() = j.op * rho;
    out.noalias() += scratch * j.op_adjoint;
  }
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& H,
                           SpaceDims dims, const NoiseConfig& noise) {
  if (H.rows() != dims.total() || H.cols() != dims.total() ||
      rho.rows() != dims.total() || rho.cols() != dims.total()) {
    throw DimensionError("lindblad_rhs: shape mismatch");
  }
  const LindbladGenerator gen(H.sparseView(), dims, noise);
  ComplexMatrix out;
  gen.apply(rho, out, false);
  return out;
}

ComplexMatrix lindblad_rhs(const DensityMatrix& rho, const ComplexMatrix& H,
                           const NoiseConfig& noise) {
  return lindblad_rhs(rho.matrix(), H, rho.dims(), noise);
}

std::size_t Trajectory::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> Trajectory::column(const std::string& name) const {
  const std::size_t j = column_index(name);
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& row : records) out.push_back(row[j]);
  return out;
}

Trajectory evolve(const DensityMatrix& rho0, const HamiltonianModel& model,
                  const NoiseConfig& noise, const EvolveOptions& options,
                  const std::vector<NamedObserver>& observers) {
  const SpaceDims full = model.dims;
  full.validate();
  if (!(rho0.dims() == full)) {
    throw DimensionError("evolve: initial state dims differ from model dims");
  }
  noise.validate();
  if (!(options.dt > 0.0) || !(options.t_final >= 0.0) ||
      options.record_every < 1) {
    throw ConfigError("evolve: need dt > 0, t_final >= 0, record_every >= 1");
  }
  const double exact_steps = options.t_final / options.dt;
  const long long n_steps = std::llround(exact_steps);
  if (std::abs(exact_steps - static_cast<double>(n_steps)) > 1e-6) {
    throw ConfigError("evolve: t_final must be an integer multiple of dt");
  }

  const int top = hilbert::highest_populated_level(rho0.matrix(), full);
  const SpaceDims active{std::clamp(top + 1, 2, full.qubit), full.magnon};
  HamiltonianModel reduced = model;
  reduced.dims = active;
  const SparseMatrix h = build_hamiltonian_sparse(reduced);
  const double fastest = kTwoPi * max_abs_entry(h);
  if (options.dt * fastest > kStepRateLimit) {
    throw ConfigError("evolve: dt = " + std::to_string(options.dt) +
                      " us too large for max angular rate " +
                      std::to_string(fastest) + " rad/us (limit dt*rate <= " +
                      std::to_string(kStepRateLimit) + ")");
  }
  const LindbladGenerator generator(h, active, noise);

  const Eigen::Index n_active = active.total();
  ComplexMatrix rho = rho0.matrix().topLeftCorner(n_active, n_active);

  Trajectory traj;
  traj.columns.reserve(observers.size());
  for (const auto& o : observers) traj.columns.push_back(o.name);

  auto embed = [&](const ComplexMatrix& reduced_rho) {
    ComplexMatrix m = ComplexMatrix::Zero(full.total(), full.total());
    m.topLeftCorner(n_active, n_active) = reduced_rho;
    return DensityMatrix::unchecked(full, std::move(m));
  };

  auto record = [&](long long step) {
    const double t = static_cast<double>(step) * options.dt;
    const double drift = std::abs(rho.trace() - Complex(1.0));
    if (!(drift <= kTraceAbortTol)) {
      throw DynamicsError("evolve: trace drift " + std::to_string(drift) +
                          " at t = " + std::to_string(t) + " us");
    }
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (!(herm <= hilbert::kHermiticityTol)) {
      throw DynamicsError("evolve: Hermiticity lost (" + std::to_string(herm) +
                          ") at t = " + std::to_string(t) + " us");
    }
    DensityMatrix state = embed(rho);
    if (options.check_positivity) {
      const double lo = state.min_eigenvalue();
      if (lo < -hilbert::kPositivityTol) {
        throw DynamicsError("evolve: negative eigenvalue " + std::to_string(lo) +
                            " at t = " + std::to_string(t) + " us");
      }
    }
    std::vector<double> row;
    row.reserve(observers.size());
    for (const auto& o : observers) row.push_back(o.fn(state, t));
    traj.times.push_back(t);
    traj.records.push_back(std::move(row));
    if (options.store_snapshots) traj.snapshots.push_back(std::move(state));
  };

  ComplexMatrix k1(n_active, n_active), k2(n_active, n_active),
      k3(n_active, n_active), k4(n_active, n_active), stage(n_active, n_active);
  const double dt = options.dt;

  record(0);
  for (long long step = 1; step <= n_steps; ++step) {
    generator.apply(rho, k1, true);
    stage = rho + (0.5 * dt) * k1;
    generator.apply(stage, k2, true);
    stage = rho + (0.5 * dt) * k2;
    generator.apply(stage, k3, true);
    stage = rho + dt * k3;
    generator.apply(stage, k4, true);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (step % options.record_every == 0 || step == n_steps) record(step);
  }
  traj.final_state = embed(rho);
  return traj;
}

double purity(const DensityMatrix& rho) {
  return rho.matrix().cwiseAbs2().sum();
}

}  // namespace magnoncat::dynamics
