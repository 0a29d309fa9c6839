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

// Run configuration for the command-line tool. Configuration files are flat
// "key = value" text; '#' starts a comment. Command-line overrides use the
// same keys. See known_keys() for the accepted names.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "magnoncat/analysis.hpp"
#include "magnoncat/protocol.hpp"

namespace magnoncat::cli {

enum class Preset { kPaper, kCi };

struct CouplingSweep {
  double phi_b_min = 0.0;  // units of pi
  double phi_b_max = 1.0;  // units of pi
  int points = 101;
  std::vector<double> aJ_values{0.0, 0.01, 0.3, 0.6};
};

struct WignerOptions {
  int points = 201;
  std::optional<double> half_width;  // default: fitted to the state
  analysis::WignerMethod method = analysis::WignerMethod::kFockRecursion;
  bool pgm = false;
};

struct DesignOptions {
  std::vector<double> Bc{0.02, 0.05, 0.08, 0.12, 0.2, 0.3};  // T
  double Ms = 2.0e5;     // A/m
  double d_w = 100e-9;   // m
  std::vector<double> temperatures{0.005, 0.01, 0.02, 0.05, 0.1};  // K
};

struct RunConfig {
  Preset preset = Preset::kPaper;
  std::filesystem::path output_dir = ".";
  /// Device parameters live in protocol.device.
  protocol::ProtocolConfig protocol{};
  CouplingSweep couplings{};
  WignerOptions wigner{};
  DesignOptions design{};
};

/// Ordered so that application order (and hence error messages) is stable.
using KeyValues = std::map<std::string, std::string>;

/// Throws ConfigError on malformed lines or duplicate keys.
KeyValues parse_key_values(std::istream& in, const std::string& source);
KeyValues read_config_file(const std::filesystem::path& path);

/// Parses "key=value"; throws ConfigError without '='.
std::pair<std::string, std::string> parse_assignment(const std::string& text);

Preset parse_preset(const std::string& name);
RunConfig preset_defaults(Preset preset);

/// Applies values on top of cfg; throws ConfigError on unknown keys or
/// unparsable values.
void apply_values(RunConfig& cfg, const KeyValues& values);

std::vector<std::string> known_keys();

}  // namespace magnoncat::cli
