// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "tfw/crystal.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

namespace tfw {

PerfectCrystalState solve_perfect(const TfwParams& p, const NuclearModel& model,
                                  const Lattice& lat, const SolverConfig& cfg) {
  if (lat.l != 1) throw std::invalid_argument("solve_perfect: host problem lives on the unit cell");
  PerfectCrystalState s;
  s.lat = lat;
  s.params = p;
  GridFunction rho_nuc = periodic_density(model, lat);
  PeriodicKernel kernel = PeriodicKernel::build(lat);
  s.Q = integrate(rho_nuc);
  if (!(s.Q > 0.0)) throw std::invalid_argument("solve_perfect: nonpositive nuclear charge");
  SolveResult r = minimize_constrained(p, kernel, rho_nuc, s.Q, cfg);
  if (!r.converged)
    throw std::runtime_error("solve_perfect: host minimization did not converge");
  s.u0 = std::move(r.v);
  s.eps_f = r.multiplier;
  s.energy = r.energy;
  s.rho0 = GridFunction(lat);
  GridFunction net(lat);
  for (std::size_t i = 0; i < s.u0.v.size(); ++i) {
    s.rho0.v[i] = s.u0.v[i] * s.u0.v[i];
    net.v[i] = s.rho0.v[i] - rho_nuc.v[i];
  }
  s.v0 = poisson_periodic(net);
  s.m = min_value(s.u0);
  s.M = max_value(s.u0);
  return s;
}

BallSample sample_ball(const GridFunction& f, double radius) {
  BallSample b;
  const Lattice& lat = f.lat;
  const int n = lat.n_axis();
  const double h = lat.h();
  // Offsets are clamped to the unit-grid representatives (-n1/2, n1/2] so the
  // sampled point set is identical for every supercell multiplier.
  const int n1 = lat.n_per_cell;
  int omax = int(std::floor(radius / h + 1e-9));
  int lo = std::max(-omax, -n1 / 2 + 1), hi = std::min(omax, n1 / 2);
  for (int ox = lo; ox <= hi; ++ox)
    for (int oy = lo; oy <= hi; ++oy)
      for (int oz = lo; oz <= hi; ++oz) {
        double r2 = (double(ox) * ox + double(oy) * oy + double(oz) * oz) * h * h;
        if (r2 > radius * radius * (1.0 + 1e-12)) continue;
        int jx = (ox % n + n) % n;
        int jy = (oy % n + n) % n;
        int jz = (oz % n + n) % n;
        b.offsets.push_back({ox, oy, oz});
        b.values.push_back(f.at(jx, jy, jz));
      }
  return b;
}

double ball_distance(const BallSample& x, const BallSample& y, double h) {
  if (x.offsets.size() != y.offsets.size())
    throw std::invalid_argument("ball_distance: sample size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    double d = x.values[i] - y.values[i];
    acc += d * d;
  }
  return std::sqrt(acc * h * h * h);
}

double smallk_avg(const GridFunction& rho, double r) {
  SpectralField c = to_fourier(rho);
  const Lattice& lat = rho.lat;
  const int n = lat.n_axis();
  const double dk = lat.dk();
  const double dvol = std::pow(2.0 * M_PI, 3.0) / lat.volume();
  const double ft_scale = std::sqrt(lat.volume()) / std::pow(2.0 * M_PI, 1.5);
  double acc = 0.0;
  std::size_t idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    double mx = double(signed_mode(ix, n));
    for (int iy = 0; iy < n; ++iy) {
      double my = double(signed_mode(iy, n));
      for (int iz = 0; iz < n; ++iz, ++idx) {
        double mz = double(signed_mode(iz, n));
        double kk = dk * std::sqrt(mx * mx + my * my + mz * mz);
        if (kk > r * (1.0 + 1e-12)) continue;
        acc += ft_scale * std::abs(c.c[idx]) * dvol;
      }
    }
  }
  return acc / (4.0 / 3.0 * M_PI * r * r * r);
}

DefectDiagnostics defect_diagnostics(const PerfectCrystalState& host, const GridFunction& nu,
                                     const GridFunction& v, int n_shells) {
  DefectDiagnostics d;
  d.rho_nu = GridFunction(host.lat);
  for (std::size_t i = 0; i < v.v.size(); ++i) {
    double lin = 2.0 * host.u0.v[i] * v.v[i] + v.v[i] * v.v[i];
    d.q_actual += lin;
    d.rho_nu.v[i] = nu.v[i] - lin;
  }
  d.q_actual *= host.lat.point_volume();
  d.screening = integrate(d.rho_nu);
  const double dk = host.lat.dk();
  for (int j = 1; j <= n_shells; ++j) {
    double r = j * dk;
    d.shell_radii.push_back(r);
    d.shell_avg.push_back(smallk_avg(d.rho_nu, r));
  }
  return d;
}

ThermoScanReport run_thermo_scan(const TfwParams& p, const NuclearModel& model,
                                 const Lattice& unit_lat, const std::vector<int>& l_values,
                                 const std::vector<double>& q_values, bool include_free,
                                 const SolverConfig& cfg, int threads) {
  if (l_values.empty()) throw std::invalid_argument("run_thermo_scan: no supercell sizes");
  ThermoScanReport rep;
  rep.host1 = solve_perfect(p, model, unit_lat, cfg);
  const double ball_radius = unit_lat.a / 2.0;

  struct Cell {
    int l;
    bool constrained;
    double q;
  };
  std::vector<Cell> cells;
  std::vector<int> ls = l_values;
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  for (double q : q_values)
    for (int l : ls) cells.push_back({l, true, q});
  if (include_free)
    for (int l : ls) cells.push_back({l, false, 0.0});

  auto solve_cell = [&](const Cell& cell) {
    PerfectCrystalState host = rep.host1.replicate(cell.l);
    PeriodicKernel kernel = PeriodicKernel::build(host.lat);
    GridFunction nu = restrict_to_cell(model, host.lat);
    SolveResult r = cell.constrained
                        ? minimize_defect_constrained(host, kernel, nu, cell.q, cfg)
                        : minimize_defect_free(host, kernel, nu, cfg);
    ScanRow row;
    row.l = cell.l;
    row.constrained = cell.constrained;
    row.q = cell.q;
    row.energy = r.energy;
    row.multiplier = r.multiplier;
    row.iters = r.iters;
    row.converged = r.converged;
    row.diag = defect_diagnostics(host, nu, r.v);
    row.screening = row.diag.screening;
    row.ball = sample_ball(r.v, ball_radius);
    return row;
  };

  std::vector<ScanRow> rows(cells.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) rows[i] = solve_cell(cells[i]);
  } else {
    std::vector<std::future<ScanRow>> futs;
    std::size_t next = 0;
    while (next < cells.size() || !futs.empty()) {
      while (int(futs.size()) < threads && next < cells.size())
        futs.push_back(std::async(std::launch::async, solve_cell, cells[next++]));
      std::size_t done = next - futs.size();
      rows[done] = futs.front().get();
      futs.erase(futs.begin());
    }
  }

  // local distances against the largest l in the same (q | free) group
  int lmax = ls.back();
  auto ref_of = [&](bool constrained, double q) -> const ScanRow* {
    for (const auto& row : rows)
      if (row.l == lmax && row.constrained == constrained && (!constrained || row.q == q))
        return &row;
    return nullptr;
  };
  for (auto& row : rows) {
    const ScanRow* ref = ref_of(row.constrained, row.q);
    row.local_distance = ref ? ball_distance(row.ball, ref->ball, unit_lat.h()) : 0.0;
  }
  rep.rows = std::move(rows);
  return rep;
}

} // namespace tfw
