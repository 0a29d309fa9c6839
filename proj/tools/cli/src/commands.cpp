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
#include "magnoncat_cli/commands.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "magnoncat/device.hpp"
#include "magnoncat/errors.hpp"
#include "magnoncat/parallel.hpp"
#include "magnoncat_cli/serialize.hpp"

namespace magnoncat::cli {
namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

void ensure_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError("cannot create output directory " + dir.string());
  }
}

std::string g(double v) { return fmt::format("{:.10g}", v); }

struct CouplingRow {
  double J = std::numeric_limits<double>::quiet_NaN();
  double J_corr = std::numeric_limits<double>::quiet_NaN();
  double grp = std::numeric_limits<double>::quiet_NaN();
  double grp_corr = std::numeric_limits<double>::quiet_NaN();
  double omega_q = std::numeric_limits<double>::quiet_NaN();
  bool regime_ok = false;
};

}  // namespace

void write_couplings_csv(std::ostream& out, const RunConfig& cfg) {
  const CouplingSweep& sw = cfg.couplings;
  if (sw.points < 1 || sw.aJ_values.empty() || !std::isfinite(sw.phi_b_min) ||
      !std::isfinite(sw.phi_b_max)) {
    throw ConfigError("couplings: need points >= 1, a non-empty aJ list and a "
                      "finite phi_b range");
  }
  for (double a : sw.aJ_values) {
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("couplings: aJ outside [0, 1]");
  }
  const int na = static_cast<int>(sw.aJ_values.size());
  std::vector<double> phis(sw.points);
  for (int i = 0; i < sw.points; ++i) {
    phis[i] = sw.points == 1 ? sw.phi_b_min
                             : sw.phi_b_min + (sw.phi_b_max - sw.phi_b_min) * i /
                                                  (sw.points - 1);
  }
  std::vector<CouplingRow> rows(static_cast<std::size_t>(na) * sw.points);
  parallel_for(rows.size(), [&](std::size_t idx) {
    device::DeviceParams p = cfg.protocol.device;
    p.aJ = sw.aJ_values[idx / sw.points];
    p.phi_b = phis[idx % sw.points] * std::numbers::pi;
    CouplingRow r;
    try {
      r.J = device::coupling_J(p, false);
      r.J_corr = device::coupling_J(p, true);
      r.grp = device::coupling_grp(p, false);
      r.grp_corr = device::coupling_grp(p, true);
      r.omega_q = device::transmon_frequency(p);
      r.regime_ok = device::transmon_regime_ok(p);
    } catch (const DegenerateSquidError&) {
      r = CouplingRow{};
    }
    rows[idx] = r;
  });
  out << kCouplingsHeader << '\n';
  for (int a = 0; a < na; ++a) {
    for (int i = 0; i < sw.points; ++i) {
      const CouplingRow& r = rows[static_cast<std::size_t>(a) * sw.points + i];
      out << g(phis[i]) << ',' << g(sw.aJ_values[a]) << ',' << format_number(r.J)
          << ',' << format_number(r.J_corr) << ',' << format_number(r.grp) << ','
          << format_number(r.grp_corr) << ',' << format_number(r.omega_q) << ','
          << (r.regime_ok ? 1 : 0) << '\n';
    }
  }
}

std::vector<fs::path> cmd_couplings(const RunConfig& cfg, std::ostream& log) {
  device::validate(cfg.protocol.device);
  ensure_output_dir(cfg.output_dir);
  std::ostringstream buffer;
  write_couplings_csv(buffer, cfg);
  const fs::path path = cfg.output_dir / "couplings.csv";
  open_output(path) << buffer.str();
  const auto c = device::compute_couplings(cfg.protocol.device, cfg.protocol.phi_ac);
  log << "J = " << g(c.J) << " MHz, g_rp = " << g(c.g_rp)
      << " MHz, g_tilde = " << g(c.g_tilde) << " MHz at the configured bias\n";
  log << "wrote " << path.string() << '\n';
  return {path};
}

std::vector<fs::path> cmd_protocol(const RunConfig& cfg, std::ostream& log) {
  cfg.protocol.validate();
  ensure_output_dir(cfg.output_dir);
  const protocol::ProtocolResult result = protocol::run_protocol(cfg.protocol);

  std::vector<fs::path> written;
  const fs::path traj_path = cfg.output_dir / "trajectory.csv";
  {
    auto out = open_output(traj_path);
    write_trajectory_csv(out, result.trajectory);
  }
  written.push_back(traj_path);

  const fs::path branch_path = cfg.output_dir / "branches.csv";
  auto branches = open_output(branch_path);
  branches << "outcome,parity_sign,probability,fidelity,state_file\n";
  for (const auto& b : result.branches) {
    std::string name;
    if (b.state) {
      const fs::path p =
          cfg.output_dir / ("state_outcome" + std::to_string(b.outcome) + ".csv");
      write_state(p, *b.state);
      written.push_back(p);
      name = p.filename().string();
    } else {
      log << "outcome " << b.outcome << " has vanishing probability; no state written\n";
    }
    branches << b.outcome << ',' << b.parity_sign << ','
             << format_number(b.probability) << ',' << format_number(b.fidelity)
             << ',' << name << '\n';
  }
  written.push_back(branch_path);

  const auto& traj = result.trajectory;
  const auto flags = traj.column("trunc_flag");
  bool suspect = false;
  for (double f : flags) suspect = suspect || f != 0.0;
  const auto en = traj.column("E_N");
  const auto fe = traj.column("F_even");
  double en_max = 0.0, fe_max = 0.0;
  for (double v : en) en_max = std::max(en_max, v);
  for (double v : fe) fe_max = std::max(fe_max, v);
  log << "g_tilde = " << g(result.g_tilde) << " MHz, n_th = " << g(result.n_th)
      << ", |beta(t_final)|^2 = " << g(std::norm(result.final_cat.beta)) << '\n';
  log << "max E_N = " << g(en_max) << ", max F_even = " << g(fe_max) << '\n';
  if (suspect) log << "warning: truncation suspect (top Fock levels populated)\n";
  for (const auto& p : written) log << "wrote " << p.string() << '\n';
  return written;
}

std::vector<fs::path> cmd_wigner(const RunConfig& cfg, const fs::path& state_file,
                                 std::ostream& log) {
  hilbert::DensityMatrix rho = read_state(state_file);
  if (rho.is_composite()) rho = hilbert::partial_trace(rho, hilbert::Subsystem::kMagnon);
  const analysis::GridSpec grid =
      cfg.wigner.half_width
          ? analysis::GridSpec::symmetric(*cfg.wigner.half_width, cfg.wigner.points)
          : analysis::GridSpec::for_state(rho, cfg.wigner.points);
  grid.validate();
  ensure_output_dir(cfg.output_dir);
  const analysis::WignerGrid w = analysis::wigner(rho, grid, cfg.wigner.method);

  std::vector<fs::path> written;
  const std::string stem = state_file.stem().string();
  const fs::path csv = cfg.output_dir / (stem + "_wigner.csv");
  {
    auto out = open_output(csv);
    write_wigner_csv(out, w);
  }
  written.push_back(csv);
  if (cfg.wigner.pgm) {
    const fs::path pgm = cfg.output_dir / (stem + "_wigner.pgm");
    auto out = open_output(pgm);
    write_wigner_pgm(out, w);
    written.push_back(pgm);
  }
  log << "min W = " << g(w.min()) << ", max W = " << g(w.max())
      << ", grid sum = " << g(w.riemann_sum()) << '\n';
  if (w.truncation_suspect) {
    log << "warning: truncation suspect (top Fock levels populated)\n";
  }
  for (const auto& p : written) log << "wrote " << p.string() << '\n';
  return written;
}

std::vector<fs::path> cmd_design(const RunConfig& cfg, std::ostream& log) {
  const device::DeviceParams& p = cfg.protocol.device;
  device::validate(p);
  if (!(cfg.design.Ms > 0.0) || !(cfg.design.d_w > 0.0)) {
    throw ConfigError("design: Ms and d_w must be positive");
  }
  ensure_output_dir(cfg.output_dir);
  std::vector<fs::path> written;

  std::ostringstream report;
  report << "critical distance (Ms = " << g(cfg.design.Ms)
         << " A/m, R_yig = " << g(p.R_yig * 1e6)
         << " um, d_w = " << g(cfg.design.d_w * 1e9) << " nm)\n";
  report << fmt::format("{:>10}  {:>10}\n", "Bc_T", "d_c_um");
  const fs::path dc_path = cfg.output_dir / "critical_distance.csv";
  {
    auto out = open_output(dc_path);
    out << "Bc_T,d_c_um\n";
    for (double Bc : cfg.design.Bc) {
      const double dc =
          device::critical_distance(Bc, cfg.design.Ms, p.R_yig, cfg.design.d_w) * 1e6;
      out << g(Bc) << ',' << format_number(dc) << '\n';
      report << fmt::format("{:>10.4g}  {:>10.4f}\n", Bc, dc);
    }
  }
  written.push_back(dc_path);

  report << "\nthermal magnon occupation (f_m = " << g(p.f_m) << " GHz)\n";
  report << fmt::format("{:>10}  {:>10}\n", "T_K", "n_th");
  const fs::path nth_path = cfg.output_dir / "thermal_occupation.csv";
  {
    auto out = open_output(nth_path);
    out << "T_K,n_th\n";
    for (double T : cfg.design.temperatures) {
      const double n = device::thermal_occupation(p.f_m, T);
      out << g(T) << ',' << format_number(n) << '\n';
      report << fmt::format("{:>10.4g}  {:>10.5f}\n", T, n);
    }
  }
  written.push_back(nth_path);

  const auto c = device::compute_couplings(p, cfg.protocol.phi_ac);
  report << "\nfar-field diagnostic\n";
  report << "  d_min = " << g(device::d_min(p) * 1e6) << " um, R_squid = "
         << g(p.R_squid * 1e6) << " um, d = " << g(p.d * 1e6) << " um\n";
  report << "  far field (R_squid >= " << g(device::kFarFieldRatio)
         << " d): " << (c.far_field ? "ok" : "VIOLATED") << '\n';
  report << "  phi_zpf = " << fmt::format("{:.4g}", c.phi_zpf)
         << (c.flux_small ? " (small)" : " (NOT small)") << '\n';
  report << "  mu_zpf = " << fmt::format("{:.4g}", c.mu_zpf) << " J/T\n";
  report << "  transmon regime: " << (c.transmon_regime_ok ? "ok" : "VIOLATED")
         << ", drive amplitude: " << (c.drive_small ? "ok" : "NOT small") << '\n';
  report << "  J = " << g(c.J) << " MHz, g_rp = " << g(c.g_rp)
         << " MHz, g_tilde = " << g(c.g_tilde) << " MHz, omega_q = "
         << g(c.omega_q) << " GHz\n";

  const fs::path report_path = cfg.output_dir / "design_report.txt";
  open_output(report_path) << report.str();
  written.push_back(report_path);
  log << report.str();
  for (const auto& path : written) log << "wrote " << path.string() << '\n';
  return written;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e)) return kExitInput;
  if (dynamic_cast<const DynamicsError*>(&e)) return kExitDynamics;
  return kExitConfig;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"magnoncat: qubit-magnon cat-state simulator"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = ".";
  std::string preset_name = "paper";
  std::vector<std::string> overrides;
  std::string state_file;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--preset", preset_name, "paper or ci");
    sub->add_option("--set", overrides, "override KEY=VALUE (repeatable)");
  };
  auto* couplings = app.add_subcommand("couplings", "coupling sweep CSV");
  auto* proto = app.add_subcommand("protocol", "run the cat-state protocol");
  auto* wig = app.add_subcommand("wigner", "Wigner function of a state file");
  auto* design = app.add_subcommand("design", "critical distance and thermal tables");
  for (auto* sub : {couplings, proto, wig, design}) add_common(sub);
  wig->add_option("--state", state_file, "magnon state file")->required();
  bool pgm = false;
  wig->add_flag("--pgm", pgm, "also write a PGM image");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig cfg = preset_defaults(parse_preset(preset_name));
    KeyValues values;
    if (!config_path.empty()) values = read_config_file(config_path);
    for (const auto& o : overrides) {
      auto [k, v] = parse_assignment(o);
      values[k] = v;
    }
    apply_values(cfg, values);
    cfg.output_dir = out_dir;
    if (pgm) cfg.wigner.pgm = true;

    if (couplings->parsed()) cmd_couplings(cfg, out);
    if (proto->parsed()) cmd_protocol(cfg, out);
    if (wig->parsed()) cmd_wigner(cfg, state_file, out);
    if (design->parsed()) cmd_design(cfg, out);
    return kExitOk;
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    const char* kind = code == kExitInput      ? "input error"
                       : code == kExitDynamics ? "dynamics error"
                                               : "configuration error";
    err << kind << ": " << e.what() << '\n';
    return code;
  }
}

}  // namespace magnoncat::cli
