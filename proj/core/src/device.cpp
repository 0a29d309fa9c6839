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
#include "magnoncat/device.hpp"

#include <cmath>
#include <string>

#include "magnoncat/errors.hpp"

namespace magnoncat::device {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGHzToMHz = 1.0e3;

// sin(pi x) and cos(pi x) that are exact at multiples of 1/2, so analytically
// forced zeros (g_rp at phi_b = 0, pi/2) come out as exact zeros.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0.0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == 1.5) return -1.0;
  return std::sin(kPi * r);
}

double cos_pi(double x) { return sin_pi(x + 0.5); }

double squid_factor_checked(const DeviceParams& p) {
  const double s = squid_factor(p.phi_b, p.aJ);
  if (s < 1e-12) {
    throw DegenerateSquidError(
        "degenerate SQUID: S(phi_b) vanishes (aJ = 0 at phi_b = pi/2)");
  }
  return s;
}

// Signed prefactor of (m + m^dagger) in the reduced flux, with the sign
// convention that the default I_x = -1 reproduces the printed couplings.
double coupling_flux(const DeviceParams& p, const PhysicalConstants& c) {
  const double magnitude =
      c.mu0 * mu_zpf(p, c) / (4.0 * c.Phi0 * d_min(p));
  return -p.geometry.Ix * magnitude;
}

double correction_factor(const DeviceParams& p, double s) {
  return 0.5 * std::sqrt(2.0 * p.EC / (p.EJ_max * s));
}

}  // namespace

void validate(const DeviceParams& p) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("invalid device parameter: ") + what);
  };
  require(std::isfinite(p.EJ_max) && p.EJ_max > 0.0, "EJ_max must be > 0");
  require(std::isfinite(p.EC) && p.EC > 0.0, "EC must be > 0");
  require(p.aJ >= 0.0 && p.aJ <= 1.0, "aJ must lie in [0, 1]");
  require(std::isfinite(p.phi_b), "phi_b must be finite");
  require(p.cap_asym >= -1.0 && p.cap_asym <= 1.0,
          "cap_asym must lie in [-1, 1]");
  require(std::isfinite(p.R_yig) && p.R_yig > 0.0, "R_yig must be > 0");
  require(std::isfinite(p.d) && p.d > 0.0, "d must be > 0");
  require(std::isfinite(p.R_squid) && p.R_squid > 0.0, "R_squid must be > 0");
  require(std::isfinite(p.Ns) && p.Ns >= 1.0, "Ns must be >= 1");
  require(std::isfinite(p.f_m) && p.f_m > 0.0, "f_m must be > 0");
  require(std::isfinite(p.alphaG) && p.alphaG >= 0.0, "alphaG must be >= 0");
}

double squid_factor(double phi_b, double aJ) {
  const double x = phi_b / kPi;
  const double cs = cos_pi(x);
  const double sn = sin_pi(x);
  return std::sqrt(cs * cs + aJ * aJ * sn * sn);
}

bool transmon_regime_ok(const DeviceParams& p) {
  return p.EJ_max * squid_factor(p.phi_b, p.aJ) / p.EC >= kTransmonRegimeRatio;
}

double transmon_frequency(const DeviceParams& p) {
  const double s = squid_factor_checked(p);
  return std::sqrt(8.0 * p.EC * p.EJ_max * s) - p.EC;
}

ZpfAmplitudes zpf_amplitudes(const DeviceParams& p) {
  const double s = squid_factor_checked(p);
  const double ratio = p.EJ_max * s / p.EC;
  const double delta = std::pow(2.0 / ratio, 0.25);
  // N_zpf = (ratio / 32)^(1/4) = 1 / (2 delta_zpf).
  return {0.5 / delta, delta};
}

double mu_zpf(const DeviceParams& p, const PhysicalConstants& c) {
  return c.hbar * c.gamma0 * std::sqrt(p.Ns / 2.0);
}

double d_min(const DeviceParams& p) { return std::hypot(p.R_yig, p.d); }

double flux_per_quantum(const DeviceParams& p, const PhysicalConstants& c) {
  return std::abs(coupling_flux(p, c));
}

double coupling_J(const DeviceParams& p, bool include_correction,
                  const PhysicalConstants& c) {
  const double s = squid_factor_checked(p);
  const double asym = p.aJ - p.cap_asym * s * s;
  const double energy = std::pow(2.0 * p.EC * std::pow(p.EJ_max, 3), 0.25);
  double j = coupling_flux(p, c) * asym * energy / std::pow(s, 1.25);
  if (include_correction) j -= j * correction_factor(p, s);
  return j * kGHzToMHz;
}

double coupling_grp(const DeviceParams& p, bool include_correction,
                    const PhysicalConstants& c) {
  const double s = squid_factor_checked(p);
  const double sin2 = sin_pi(2.0 * p.phi_b / kPi);
  double g = 0.25 * coupling_flux(p, c) * plasma_frequency(p) *
             (1.0 - p.aJ * p.aJ) * sin2 / std::pow(s, 1.5);
  if (include_correction) g -= g * correction_factor(p, s);
  return g * kGHzToMHz;
}

double plasma_frequency(const DeviceParams& p) {
  return std::sqrt(8.0 * p.EJ_max * p.EC);
}

double modulated_grp(const DeviceParams& p, double phi_ac,
                     const PhysicalConstants& c) {
  return 0.25 * coupling_flux(p, c) * phi_ac * plasma_frequency(p) * kGHzToMHz;
}

double constant_displacement(const DeviceParams& p,
                             const PhysicalConstants& c) {
  const double delta = zpf_amplitudes(p).delta_zpf;
  return -coupling_grp(p, false, c) / (delta * delta);
}

double critical_distance(double Bc, double Ms, double R_yig, double d_w,
                         const PhysicalConstants& c) {
  if (!(Bc > 0.0) || !(Ms > 0.0) || !(R_yig > 0.0) || !(d_w > 0.0)) {
    throw ConfigError("critical_distance: all inputs must be positive");
  }
  return 0.5 * d_w + std::cbrt(2.0 * c.mu0 * Ms / (3.0 * Bc)) * R_yig;
}

double thermal_occupation(double f_GHz, double T_kelvin,
                          const PhysicalConstants& c) {
  if (!(f_GHz > 0.0) || T_kelvin < 0.0) {
    throw ConfigError("thermal_occupation: need f > 0 and T >= 0");
  }
  if (T_kelvin == 0.0) return 0.0;
  const double x = c.h * f_GHz * 1.0e9 / (c.kB * T_kelvin);
  return 1.0 / std::expm1(x);
}

double magnon_decay_rate(const DeviceParams& p) {
  return p.f_m * kGHzToMHz * p.alphaG;
}

CouplingSet compute_couplings(const DeviceParams& p, double phi_ac,
                              const PhysicalConstants& c) {
  CouplingSet out;
  out.J = coupling_J(p, false, c);
  out.J_prime = coupling_J(p, true, c) - out.J;
  out.g_rp = coupling_grp(p, false, c);
  out.g_rp_prime = coupling_grp(p, true, c) - out.g_rp;
  out.g_tilde = modulated_grp(p, phi_ac, c);
  out.phi_zpf = flux_per_quantum(p, c);
  out.mu_zpf = mu_zpf(p, c);
  out.omega_q = transmon_frequency(p);
  const auto zpf = zpf_amplitudes(p);
  out.delta_zpf = zpf.delta_zpf;
  out.N_zpf = zpf.N_zpf;
  out.transmon_regime_ok = transmon_regime_ok(p);
  out.flux_small = out.phi_zpf <= kFluxWarnThreshold;
  out.drive_small = std::abs(phi_ac) <= kDriveWarnThreshold;
  out.far_field = p.R_squid >= kFarFieldRatio * p.d;
  return out;
}

}  // namespace magnoncat::device
