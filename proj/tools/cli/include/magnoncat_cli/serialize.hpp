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

// Text serializers. Numbers are printed with 17 significant digits so that
// written states read back bit-exact and repeated runs are byte-identical.
//
// State files: a header line "dims,<magnon>" (single mode) or
// "dims,<qubit>,<magnon>" (composite), then one matrix row per line as
// comma-separated "re,im" pairs.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "magnoncat/analysis.hpp"
#include "magnoncat/dynamics.hpp"
#include "magnoncat/hilbert.hpp"

namespace magnoncat::cli {

std::string format_number(double v);

void write_state(std::ostream& out, const hilbert::DensityMatrix& rho);
void write_state(const std::filesystem::path& path,
                 const hilbert::DensityMatrix& rho);
/// Throws InputError on malformed content or an invalid density matrix.
hilbert::DensityMatrix read_state(std::istream& in, const std::string& source);
hilbert::DensityMatrix read_state(const std::filesystem::path& path);

/// t_us followed by the trajectory columns.
void write_trajectory_csv(std::ostream& out, const dynamics::Trajectory& traj);

/// re,im,W rows, imaginary axis outer.
void write_wigner_csv(std::ostream& out, const analysis::WignerGrid& grid);
/// Binary P5 image, largest Im(alpha) on the top row; [min W, max W] maps
/// linearly to [0, 255].
void write_wigner_pgm(std::ostream& out, const analysis::WignerGrid& grid);

}  // namespace magnoncat::cli
