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
#include "magnoncat_cli/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <numbers>

#include "magnoncat/errors.hpp"

namespace magnoncat::cli {
namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string::npos ? text.size() : comma;
    out.push_back(to_double(key, text.substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key,
                                  const std::string& value)>;

Setter real(double device::DeviceParams::*field, double scale = 1.0) {
  return [field, scale](RunConfig& c, const std::string& k, const std::string& v) {
    c.protocol.device.*field = to_double(k, v) * scale;
  };
}

Setter proto(double protocol::ProtocolConfig::*field, double scale = 1.0) {
  return [field, scale](RunConfig& c, const std::string& k, const std::string& v) {
    c.protocol.*field = to_double(k, v) * scale;
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"device.EJ_max_GHz", real(&device::DeviceParams::EJ_max)},
      {"device.EC_GHz", real(&device::DeviceParams::EC)},
      {"device.aJ", real(&device::DeviceParams::aJ)},
      {"device.phi_b_over_pi", real(&device::DeviceParams::phi_b, kPi)},
      {"device.cap_asym", real(&device::DeviceParams::cap_asym)},
      {"device.R_yig_um", real(&device::DeviceParams::R_yig, 1e-6)},
      {"device.d_um", real(&device::DeviceParams::d, 1e-6)},
      {"device.R_squid_um", real(&device::DeviceParams::R_squid, 1e-6)},
      {"device.Ns", real(&device::DeviceParams::Ns)},
      {"device.f_m_GHz", real(&device::DeviceParams::f_m)},
      {"device.alpha_G", real(&device::DeviceParams::alphaG)},
      {"device.B_ani_T", real(&device::DeviceParams::B_ani)},
      {"device.Ix",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.protocol.device.geometry.Ix = to_double(k, v);
       }},
      {"device.Iy",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.protocol.device.geometry.Iy = to_double(k, v);
       }},
      {"device.Iz",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.protocol.device.geometry.Iz = to_double(k, v);
       }},
      {"protocol.phi_ac_over_pi", proto(&protocol::ProtocolConfig::phi_ac, kPi)},
      {"protocol.delta_MHz", proto(&protocol::ProtocolConfig::delta)},
      {"protocol.t_final_us", proto(&protocol::ProtocolConfig::t_final)},
      {"protocol.dt_us", proto(&protocol::ProtocolConfig::dt)},
      {"protocol.T1_us", proto(&protocol::ProtocolConfig::T1)},
      {"protocol.T2_us", proto(&protocol::ProtocolConfig::T2)},
      {"protocol.temperature_K", proto(&protocol::ProtocolConfig::temperature)},
      {"protocol.record_every",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.protocol.record_every = to_int(k, v);
       }},
      {"protocol.qubit_levels",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.protocol.dims.qubit = to_int(k, v);
       }},
      {"protocol.magnon_levels",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.protocol.dims.magnon = to_int(k, v);
       }},
      {"protocol.dephasing",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         const std::string t = trim(v);
         if (t == "literal") {
           c.protocol.dephasing = dynamics::DephasingModel::kLiteral;
         } else if (t == "pure") {
           c.protocol.dephasing = dynamics::DephasingModel::kPure;
         } else {
           throw ConfigError(k + ": expected literal or pure, got '" + v + "'");
         }
       }},
      {"protocol.outcome",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         const std::string t = trim(v);
         if (t == "0") {
           c.protocol.outcome = protocol::Outcome::kProject0;
         } else if (t == "1") {
           c.protocol.outcome = protocol::Outcome::kProject1;
         } else if (t == "both") {
           c.protocol.outcome = protocol::Outcome::kBoth;
         } else {
           throw ConfigError(k + ": expected 0, 1 or both, got '" + v + "'");
         }
       }},
      {"protocol.constant_drive",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.protocol.constant_drive = to_bool(k, v);
       }},
      {"protocol.g_tilde_MHz",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.protocol.g_tilde_override = to_double(k, v);
       }},
      {"protocol.dissipationless",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         if (to_bool(k, v)) c.protocol = protocol::dissipationless(c.protocol);
       }},
      {"couplings.phi_b_min_over_pi",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.couplings.phi_b_min = to_double(k, v);
       }},
      {"couplings.phi_b_max_over_pi",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.couplings.phi_b_max = to_double(k, v);
       }},
      {"couplings.points",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.couplings.points = to_int(k, v);
       }},
      {"couplings.aJ_list",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.couplings.aJ_values = to_list(k, v);
       }},
      {"wigner.points",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.wigner.points = to_int(k, v);
       }},
      {"wigner.half_width",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.wigner.half_width = to_double(k, v);
       }},
      {"wigner.method",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         const std::string t = trim(v);
         if (t == "fock") {
           c.wigner.method = analysis::WignerMethod::kFockRecursion;
         } else if (t == "parity") {
           c.wigner.method = analysis::WignerMethod::kDisplacedParity;
         } else {
           throw ConfigError(k + ": expected fock or parity, got '" + v + "'");
         }
       }},
      {"wigner.pgm",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.wigner.pgm = to_bool(k, v);
       }},
      {"design.Bc_list_T",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.design.Bc = to_list(k, v);
       }},
      {"design.Ms_A_per_m",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.design.Ms = to_double(k, v);
       }},
      {"design.d_w_nm",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.design.d_w = to_double(k, v) * 1e-9;
       }},
      {"design.T_list_K",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.design.temperatures = to_list(k, v);
       }},
  };
  return table;
}

}  // namespace

KeyValues parse_key_values(std::istream& in, const std::string& source) {
  KeyValues out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
    }
    if (!out.emplace(key, value).second) {
      throw ConfigError(source + ":" + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    }
  }
  return out;
}

KeyValues read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_key_values(in, path.string());
}

std::pair<std::string, std::string> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override '" + text + "' must have the form key=value");
  }
  return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

Preset parse_preset(const std::string& name) {
  if (name == "paper") return Preset::kPaper;
  if (name == "ci") return Preset::kCi;
  throw ConfigError("unknown preset '" + name + "' (expected paper or ci)");
}

RunConfig preset_defaults(Preset preset) {
  RunConfig cfg;
  cfg.preset = preset;
  if (preset == Preset::kCi) {
    cfg.protocol.dims = {3, 60};
    cfg.protocol.t_final = 1.2;
  } else {
    cfg.protocol.dims = {3, 140};
    cfg.protocol.t_final = 3.0;
  }
  return cfg;
}

void apply_values(RunConfig& cfg, const KeyValues& values) {
  const auto& table = setters();
  // The noise switch wins over individual noise keys regardless of order.
  const std::string last = "protocol.dissipationless";
  for (const auto& [key, value] : values) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    if (key != last) it->second(cfg, key, value);
  }
  if (const auto it = values.find(last); it != values.end()) {
    table.at(last)(cfg, last, it->second);
  }
}

std::vector<std::string> known_keys() {
  std::vector<std::string> out;
  for (const auto& [key, setter] : setters()) out.push_back(key);
  return out;
}

}  // namespace magnoncat::cli
