// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
//
// Microbenchmarks for the hot paths: spectral transforms, convolution,
// Coulomb kernel construction, energy gradients, and the two solver loops.
#include <benchmark/benchmark.h>

#include "tfw/crystal.hpp"
#include "tfw/jellium.hpp"

using namespace tfw;

namespace {

const TfwParams kParams{1.0, 1.0};

NuclearModel bench_model() {
  NuclearModel m;
  m.periodic.push_back({2.0, {0.0, 0.0, 0.0}, 0.35});
  return m;
}

void BM_fourier_round_trip(benchmark::State& state) {
  Lattice lat = build_grid(2.0, 1, int(state.range(0)));
  GridFunction f = random_field(lat, 1, -1.0, 1.0);
  for (auto _ : state) {
    GridFunction g = from_fourier(to_fourier(f));
    benchmark::DoNotOptimize(g.v.data());
  }
  state.SetItemsProcessed(state.iterations() * lat.num_points());
}
BENCHMARK(BM_fourier_round_trip)->Arg(16)->Arg(32)->Arg(64);

void BM_periodic_convolve(benchmark::State& state) {
  Lattice lat = build_grid(2.0, 1, int(state.range(0)));
  GridFunction f = random_field(lat, 2, -1.0, 1.0);
  GridFunction g = random_field(lat, 3, -1.0, 1.0);
  for (auto _ : state) {
    GridFunction h = periodic_convolve(f, g);
    benchmark::DoNotOptimize(h.v.data());
  }
  state.SetItemsProcessed(state.iterations() * lat.num_points());
}
BENCHMARK(BM_periodic_convolve)->Arg(16)->Arg(32)->Arg(64);

void BM_kernel_build(benchmark::State& state) {
  Lattice lat = build_grid(2.0, 1, int(state.range(0)));
  for (auto _ : state) {
    PeriodicKernel k = PeriodicKernel::build(lat);
    benchmark::DoNotOptimize(k.g1());
  }
}
BENCHMARK(BM_kernel_build)->Arg(16)->Arg(32)->Arg(64);

void BM_coulomb_form(benchmark::State& state) {
  Lattice lat = build_grid(2.0, 1, int(state.range(0)));
  PeriodicKernel kernel = PeriodicKernel::build(lat);
  GridFunction f = random_field(lat, 4, -1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernel.form(f, f));
}
BENCHMARK(BM_coulomb_form)->Arg(16)->Arg(32);

void BM_tfw_gradient(benchmark::State& state) {
  Lattice lat = build_grid(2.0, 1, int(state.range(0)));
  PeriodicKernel kernel = PeriodicKernel::build(lat);
  GridFunction rho_nuc = periodic_density(bench_model(), lat);
  GridFunction w = random_field(lat, 5, 0.5, 1.5);
  for (auto _ : state) {
    GridFunction g = tfw_gradient(kParams, kernel, rho_nuc, w);
    benchmark::DoNotOptimize(g.v.data());
  }
}
BENCHMARK(BM_tfw_gradient)->Arg(16)->Arg(32);

void BM_defect_gradient(benchmark::State& state) {
  Lattice lat = build_grid(2.0, 1, int(state.range(0)));
  PeriodicKernel kernel = PeriodicKernel::build(lat);
  PerfectCrystalState host = PerfectCrystalState::homogeneous(0.9, lat, kParams);
  GridFunction nu = restrict_to_cell({{0.5, {0.0, 0.0, 0.0}, 0.3}}, lat);
  GridFunction v = random_field(lat, 6, -0.1, 0.1);
  for (auto _ : state) {
    GridFunction g = defect_gradient(host, kernel, nu, v);
    benchmark::DoNotOptimize(g.v.data());
  }
}
BENCHMARK(BM_defect_gradient)->Arg(16)->Arg(32);

void BM_host_solve(benchmark::State& state) {
  Lattice lat = build_grid(2.0, 1, int(state.range(0)));
  SolverConfig cfg;
  for (auto _ : state) {
    PerfectCrystalState host = solve_perfect(kParams, bench_model(), lat, cfg);
    benchmark::DoNotOptimize(host.eps_f);
  }
}
BENCHMARK(BM_host_solve)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_jellium_solve(benchmark::State& state) {
  Lattice lat = build_grid(6.0, 1, int(state.range(0)));
  JelliumParams jp{0.8, kParams};
  GridFunction nu = restrict_to_cell({{1.0, {0.0, 0.0, 0.0}, 0.6}}, lat);
  SolverConfig cfg;
  for (auto _ : state) {
    JelliumResult r = jellium_solve(jp, nu, cfg);
    benchmark::DoNotOptimize(r.residual);
  }
}
BENCHMARK(BM_jellium_solve)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_kernel_realspace(benchmark::State& state) {
  JelliumParams jp{0.8, kParams};
  double r = double(state.range(0)) / 10.0;
  for (auto _ : state) {
    KernelProfile p = kernel_realspace(jp, r);
    benchmark::DoNotOptimize(p.g + p.h);
  }
}
BENCHMARK(BM_kernel_realspace)->Arg(5)->Arg(60); // r = 0.5 and r = 6.0

} // namespace

BENCHMARK_MAIN();
