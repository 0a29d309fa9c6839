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

#include <exception>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "magnoncat_cli/config.hpp"

namespace magnoncat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDynamics = 3;
inline constexpr int kExitInput = 4;

inline const std::string kCouplingsHeader =
    "phi_b_over_pi,aJ,J_MHz,J_corrected_MHz,grp_MHz,grp_corrected_MHz,"
    "omega_q_GHz,transmon_regime_ok";

/// Coupling sweep table; degenerate SQUID points print nan.
void write_couplings_csv(std::ostream& out, const RunConfig& cfg);

/// Each command writes into cfg.output_dir and returns the files it wrote.
std::vector<std::filesystem::path> cmd_couplings(const RunConfig& cfg,
                                                 std::ostream& log);
std::vector<std::filesystem::path> cmd_protocol(const RunConfig& cfg,
                                                std::ostream& log);
std::vector<std::filesystem::path> cmd_wigner(
    const RunConfig& cfg, const std::filesystem::path& state_file,
    std::ostream& log);
std::vector<std::filesystem::path> cmd_design(const RunConfig& cfg,
                                              std::ostream& log);

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace magnoncat::cli
