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

// Closed-form device physics of a flux-tunable transmon coupled to the Kittel
// mode of a nearby YIG sphere through the stray flux threading its SQUID.
//
// Energies and rates are ordinary-frequency h-units throughout: energies in
// GHz (E/h), couplings in MHz. Conversion to angular rates happens only in
// the dynamics engine.

#include <numbers>

namespace magnoncat::device {

struct PhysicalConstants {
  double mu0 = 1.25663706212e-6;      // T m / A
  double Phi0 = 2.067833848e-15;      // Wb
  double hbar = 1.054571817e-34;      // J s
  double h = 2.0 * std::numbers::pi * 1.054571817e-34;
  double kB = 1.380649e-23;           // J / K
  double gamma0 = 2.0 * std::numbers::pi * 28.0e9;  // rad / (s T)
};

inline constexpr PhysicalConstants kConstants{};

/// Dimensionless stray-field flux factors of the loop geometry. Only I_x
/// enters the couplings; magnon-number (I_z) fluctuations are dropped.
struct GeometryFactors {
  double Ix = -1.0;
  double Iy = 0.0;
  double Iz = -1.0;
};

struct DeviceParams {
  double EJ_max = 50.0;       // GHz
  double EC = 0.2;            // GHz
  double aJ = 0.6;            // SQUID asymmetry in [0, 1]
  double phi_b = std::numbers::pi / 2.0;  // pi Phi_b / Phi_0 (rad)
  double cap_asym = 0.0;      // C_Delta / C_Sigma in [-1, 1]
  double R_yig = 3.0e-6;      // m
  double d = 3.0e-6;          // m, in-plane edge distance
  double R_squid = 10.0e-6;   // m, loop radius (far-field diagnostic only)
  double Ns = 2.4e12;
  GeometryFactors geometry{};
  double f_m = 0.5;           // GHz
  double alphaG = 1.0e-5;
  double B_ani = -2.5e-3;     // T
};

/// Throws ConfigError when a field is outside its documented range.
void validate(const DeviceParams& p);

/// Transmon-regime guard: E_J S / E_C must reach this ratio.
inline constexpr double kTransmonRegimeRatio = 20.0;
/// phi_zpf above this is no longer a small perturbation of the bias.
inline constexpr double kFluxWarnThreshold = 1.0e-2;
/// phi_ac above this breaks the weak-modulation expansion.
inline constexpr double kDriveWarnThreshold = 0.5;
/// Far-field geometry factors assume R_SQUID >> d; ratio used as threshold.
inline constexpr double kFarFieldRatio = 3.0;

/// S(phi_b) = sqrt(cos^2 phi_b + aJ^2 sin^2 phi_b).
double squid_factor(double phi_b, double aJ);

/// True when E_J^max S(phi_b) / E_C >= kTransmonRegimeRatio.
bool transmon_regime_ok(const DeviceParams& p);

/// Qubit frequency sqrt(8 E_C E_J^max S) - E_C in GHz.
double transmon_frequency(const DeviceParams& p);

struct ZpfAmplitudes {
  double N_zpf;      // charge
  double delta_zpf;  // phase
};
ZpfAmplitudes zpf_amplitudes(const DeviceParams& p);

/// Transverse magnetic-moment fluctuation hbar gamma0 sqrt(Ns/2), in J/T.
double mu_zpf(const DeviceParams& p, const PhysicalConstants& c = kConstants);

/// sqrt(R_yig^2 + d^2), center of the sphere to the nearest loop edge.
double d_min(const DeviceParams& p);

/// |coefficient| of (m + m^dagger) in the reduced induced flux.
double flux_per_quantum(const DeviceParams& p,
                        const PhysicalConstants& c = kConstants);

/// Qubit-magnon exchange rate in MHz, including the junction-capacitance
/// asymmetry. With include_correction, returns J + J'.
double coupling_J(const DeviceParams& p, bool include_correction = false,
                  const PhysicalConstants& c = kConstants);

/// Radiation-pressure rate in MHz (signed, changes sign at phi_b = pi/2).
/// With include_correction, returns g_rp + g_rp'.
double coupling_grp(const DeviceParams& p, bool include_correction = false,
                    const PhysicalConstants& c = kConstants);

/// Parametrically enhanced radiation pressure under flux modulation of
/// amplitude phi_ac around a symmetric bias, in MHz.
double modulated_grp(const DeviceParams& p, double phi_ac,
                     const PhysicalConstants& c = kConstants);

/// Plasma frequency sqrt(8 E_J^max E_C) in GHz.
double plasma_frequency(const DeviceParams& p);

/// Amplitude of the constant magnon displacement drive -g_rp/delta_zpf^2, MHz.
double constant_displacement(const DeviceParams& p,
                             const PhysicalConstants& c = kConstants);

/// Minimum magnet-to-wire distance before the stray field reaches the
/// critical field Bc (T) of a wire of thickness d_w (m). Returns meters.
double critical_distance(double Bc, double Ms, double R_yig, double d_w,
                         const PhysicalConstants& c = kConstants);

/// Bose occupation of a mode at f_GHz and temperature T_kelvin.
double thermal_occupation(double f_GHz, double T_kelvin,
                          const PhysicalConstants& c = kConstants);

/// Magnon decay rate f_m alpha_G in MHz (ordinary frequency).
double magnon_decay_rate(const DeviceParams& p);

struct CouplingSet {
  double J = 0.0;           // MHz
  double J_prime = 0.0;     // MHz
  double g_rp = 0.0;        // MHz
  double g_rp_prime = 0.0;  // MHz
  double g_tilde = 0.0;     // MHz
  double phi_zpf = 0.0;
  double mu_zpf = 0.0;      // J/T
  double omega_q = 0.0;     // GHz
  double delta_zpf = 0.0;
  double N_zpf = 0.0;
  bool transmon_regime_ok = true;
  bool flux_small = true;
  bool drive_small = true;
  bool far_field = true;
};

CouplingSet compute_couplings(const DeviceParams& p, double phi_ac,
                              const PhysicalConstants& c = kConstants);

}  // namespace magnoncat::device
