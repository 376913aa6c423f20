// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#ifndef TFW_CRYSTAL_HPP
#define TFW_CRYSTAL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tfw/minimize.hpp"
#include "tfw/nuclear_model.hpp"

namespace tfw {

// Solves the unit-cell host problem: minimize tfw_energy over int u^2 = Q
// with Q the grid integral of the periodic nuclear density, then derives
// eps_f (multiplier), v0 (zero-mean Coulomb potential of rho0 - rho_nuc) and
// the bounds m = min u0, M = max u0. Throws if lat.l != 1.
PerfectCrystalState solve_perfect(const TfwParams& p, const NuclearModel& model,
                                  const Lattice& lat, const SolverConfig& cfg);

// Ball of radius a/2 centered at the defect (origin): the grid points inside
// it are shared by every supercell built on the same unit grid, so local
// distances between solutions at different l compare identical physical
// points. Keys are integer coordinate offsets in units of h.
struct BallSample {
  std::vector<std::array<int, 3>> offsets;
  std::vector<double> values;
};
BallSample sample_ball(const GridFunction& f, double radius);
// L2(B) distance between two samples of the same ball
double ball_distance(const BallSample& x, const BallSample& y, double h);

// Small-|k| shell average of the defect's residual charge rho0_nu:
// (1/|B_r|) sum_{|k| <= r} |FT(rho0_nu)(k)| dvol_k, with the whole-space
// Fourier transform proxy FT(f)(k) = (2 pi)^{-3/2} |Gamma|^{1/2} c_k(f).
double smallk_avg(const GridFunction& rho, double r);

struct DefectDiagnostics {
  double q_actual = 0.0;          // int (2 u0 v + v^2)
  double screening = 0.0;         // int (nu - 2 u0 v - v^2)
  GridFunction rho_nu;            // nu - (2 u0 v + v^2)
  std::vector<double> shell_radii;
  std::vector<double> shell_avg;  // smallk_avg at shell_radii
};
// Shell radii default to the three smallest integer multiples of dk.
DefectDiagnostics defect_diagnostics(const PerfectCrystalState& host, const GridFunction& nu,
                                     const GridFunction& v, int n_shells = 3);

struct ScanRow {
  int l = 1;
  bool constrained = true;
  double q = 0.0;         // prescribed charge (constrained rows only)
  double energy = 0.0;
  double multiplier = 0.0;
  double screening = 0.0;
  double local_distance = 0.0; // L2(ball) distance to the largest-l solution
  int iters = 0;
  bool converged = false;
  BallSample ball;
  DefectDiagnostics diag;
};

struct ThermoScanReport {
  PerfectCrystalState host1; // unit-cell host state
  std::vector<ScanRow> rows;
};

// Sweeps supercell sizes l_values; for each l solves the charge-constrained
// defect problem at every q in q_values and, when include_free is set, the
// free problem. local_distance compares against the largest l at the same q
// (or the free solution at the largest l for free rows).
ThermoScanReport run_thermo_scan(const TfwParams& p, const NuclearModel& model,
                                 const Lattice& unit_lat, const std::vector<int>& l_values,
                                 const std::vector<double>& q_values, bool include_free,
                                 const SolverConfig& cfg, int threads = 1);

} // namespace tfw

#endif
