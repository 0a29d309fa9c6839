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


#include <benchmark/benchmark.h>

#include <complex>

#include "magnoncat/analysis.hpp"
#include "magnoncat/dynamics.hpp"
#include "magnoncat/hilbert.hpp"
#include "magnoncat/protocol.hpp"

namespace {

using magnoncat::Complex;
using magnoncat::ComplexMatrix;
using magnoncat::hilbert::DensityMatrix;
using magnoncat::hilbert::SpaceDims;

DensityMatrix bell_cat(SpaceDims dims) {
  magnoncat::protocol::AnalyticCat cat{Complex(2.0, -1.5), 0.7};
  return DensityMatrix::pure(dims, magnoncat::protocol::ideal_bell_cat(cat, dims));
}

void BM_LindbladRhs(benchmark::State& state) {
  SpaceDims dims{static_cast<int>(state.range(0)), static_cast<int>(state.range(1))};
  magnoncat::dynamics::HamiltonianModel model;
  model.dims = dims;
  model.g_tilde = 1.0;
  magnoncat::dynamics::NoiseConfig noise;
  noise.kappa = 0.02;
  noise.n_th = 0.01;
  noise.T1 = 20.0;
  noise.T2 = 20.0;
  const magnoncat::dynamics::LindbladGenerator gen(
      magnoncat::dynamics::build_hamiltonian_sparse(model), dims, noise);
  const DensityMatrix rho = bell_cat(dims);
  ComplexMatrix out(dims.total(), dims.total());
  for (auto _ : state) {
    gen.apply(rho.matrix(), out, true);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetLabel(gen.banded() ? "banded" : "sparse");
}
BENCHMARK(BM_LindbladRhs)->Args({2, 60})->Args({3, 60})->Args({3, 140})
    ->Unit(benchmark::kMillisecond);

void BM_LogNegativity(benchmark::State& state) {
  const DensityMatrix rho = bell_cat({3, static_cast<int>(state.range(0))});
  for (auto _ : state) {
    benchmark::DoNotOptimize(magnoncat::analysis::log_negativity(rho));
  }
}
BENCHMARK(BM_LogNegativity)->Arg(40)->Arg(140)->Unit(benchmark::kMillisecond);

void BM_WignerGrid(benchmark::State& state) {
  const int dim = 140;
  const DensityMatrix rho = DensityMatrix::pure(
      magnoncat::hilbert::cat_state(Complex(3.0, 1.0), 0.0, 1, dim));
  const auto grid = magnoncat::analysis::GridSpec::for_cat(
      std::abs(Complex(3.0, 1.0)), static_cast<int>(state.range(0)));
  const auto method = state.range(1) == 0
                          ? magnoncat::analysis::WignerMethod::kFockRecursion
                          : magnoncat::analysis::WignerMethod::kDisplacedParity;
  for (auto _ : state) {
    auto w = magnoncat::analysis::wigner(rho, grid, method);
    benchmark::DoNotOptimize(w.values.data());
  }
}
BENCHMARK(BM_WignerGrid)->Args({51, 0})->Args({101, 0})->Args({11, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
