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
#include "magnoncat_cli/serialize.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <istream>
#include <ostream>
#include <vector>

#include "magnoncat/errors.hpp"

namespace magnoncat::cli {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos
                                         ? std::string::npos
                                         : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& text, const std::string& where) {
  std::size_t b = text.find_first_not_of(" \t\r");
  std::size_t e = text.find_last_not_of(" \t\r");
  if (b == std::string::npos) throw InputError(where + ": empty number");
  double v = 0.0;
  const char* first = text.data() + b;
  const char* last = text.data() + e + 1;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw InputError(where + ": bad number '" + text + "'");
  }
  return v;
}

int parse_dim(const std::string& text, const std::string& where) {
  const double v = parse_double(text, where);
  if (v < 2.0 || v != std::floor(v) || v > 1e5) {
    throw InputError(where + ": bad dimension '" + text + "'");
  }
  return static_cast<int>(v);
}

}  // namespace

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

void write_state(std::ostream& out, const hilbert::DensityMatrix& rho) {
  if (rho.is_composite()) {
    out << "dims," << rho.dims().qubit << ',' << rho.dims().magnon << '\n';
  } else {
    out << "dims," << rho.dim() << '\n';
  }
  const auto& m = rho.matrix();
  std::string line;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    line.clear();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) line += ',';
      line += format_number(m(i, j).real());
      line += ',';
      line += format_number(m(i, j).imag());
    }
    line += '\n';
    out << line;
  }
}

void write_state(const std::filesystem::path& path,
                 const hilbert::DensityMatrix& rho) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  write_state(out, rho);
}

hilbert::DensityMatrix read_state(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw InputError(source + ": empty state file");
  const auto head = split(line);
  if (head.empty() || head[0] != "dims" || head.size() < 2 || head.size() > 3) {
    throw InputError(source + ": first line must be 'dims,<n>' or 'dims,<q>,<m>'");
  }
  std::optional<hilbert::SpaceDims> dims;
  int n = 0;
  if (head.size() == 2) {
    n = parse_dim(head[1], source + ":1");
  } else {
    dims = hilbert::SpaceDims{parse_dim(head[1], source + ":1"),
                              parse_dim(head[2], source + ":1")};
    n = dims->total();
  }
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const std::string where = source + ":" + std::to_string(i + 2);
    if (!std::getline(in, line)) throw InputError(where + ": missing matrix row");
    const auto fields = split(line);
    if (fields.size() != static_cast<std::size_t>(2 * n)) {
      throw InputError(where + ": expected " + std::to_string(2 * n) +
                       " numbers, got " + std::to_string(fields.size()));
    }
    for (int j = 0; j < n; ++j) {
      m(i, j) = Complex(parse_double(fields[2 * j], where),
                        parse_double(fields[2 * j + 1], where));
    }
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw InputError(source + ": trailing content after matrix");
    }
  }
  try {
    hilbert::DensityMatrix rho = dims ? hilbert::DensityMatrix(*dims, std::move(m))
                                      : hilbert::DensityMatrix(std::move(m));
    rho.check_positivity();
    return rho;
  } catch (const std::invalid_argument& e) {
    throw InputError(source + ": " + e.what());
  }
}

hilbert::DensityMatrix read_state(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open state file " + path.string());
  return read_state(in, path.string());
}

void write_trajectory_csv(std::ostream& out, const dynamics::Trajectory& traj) {
  out << "t_us";
  for (const auto& c : traj.columns) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::string line = fmt::format("{:.10g}", traj.times[i]);
    for (double v : traj.records[i]) {
      line += ',';
      line += format_number(v);
    }
    line += '\n';
    out << line;
  }
}

void write_wigner_csv(std::ostream& out, const analysis::WignerGrid& grid) {
  out << "re,im,W\n";
  for (std::size_t i = 0; i < grid.im_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.re_axis.size(); ++j) {
      out << format_number(grid.re_axis[j]) << ',' << format_number(grid.im_axis[i])
          << ',' << format_number(grid.values(static_cast<Eigen::Index>(i),
                                              static_cast<Eigen::Index>(j)))
          << '\n';
    }
  }
}

void write_wigner_pgm(std::ostream& out, const analysis::WignerGrid& grid) {
  const auto width = grid.re_axis.size();
  const auto height = grid.im_axis.size();
  out << "P5\n" << width << ' ' << height << "\n255\n";
  const double lo = grid.min();
  const double span = grid.max() - lo;
  std::vector<char> row(width);
  for (std::size_t r = 0; r < height; ++r) {
    const auto i = static_cast<Eigen::Index>(height - 1 - r);
    for (std::size_t j = 0; j < width; ++j) {
      const double w = grid.values(i, static_cast<Eigen::Index>(j));
      const double level = span > 0.0 ? std::round(255.0 * (w - lo) / span) : 0.0;
      row[j] = static_cast<char>(static_cast<unsigned char>(level));
    }
    out.write(row.data(), static_cast<std::streamsize>(width));
  }
}

}  // namespace magnoncat::cli
