// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "tfw/minimize.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace tfw {

namespace {

double default_tol(const Lattice& lat, const SolverConfig& cfg) {
  if (cfg.grad_tol > 0.0) return cfg.grad_tol;
  return 1e-8 * std::sqrt(double(lat.num_points()));
}

GridFunction precondition(const GridFunction& g, double c_w) {
  SpectralField c = to_fourier(g);
  const int n = c.lat.n_axis();
  const double dk2 = c.lat.dk() * c.lat.dk();
  std::size_t idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    double mx = double(signed_mode(ix, n));
    for (int iy = 0; iy < n; ++iy) {
      double my = double(signed_mode(iy, n));
      for (int iz = 0; iz < n; ++iz, ++idx) {
        double mz = double(signed_mode(iz, n));
        c.c[idx] /= 1.0 + c_w * dk2 * (mx * mx + my * my + mz * mz);
      }
    }
  }
  return from_fourier(c);
}

struct SphereObjective {
  std::function<double(const GridFunction&)> energy;
  std::function<GridFunction(const GridFunction&)> gradient;
};

// Projected preconditioned descent on {w : int w^2 = Q} with the rescale
// retraction w -> sqrt(Q / int w^2) w. constraint_violation traces
// |int w^2 - Q|.
SolveResult sphere_minimize(const SphereObjective& obj, GridFunction w, double Q, double c_w,
                            const SolverConfig& cfg) {
  SolveResult res;
  const double tol = default_tol(w.lat, cfg);
  auto retract = [&](GridFunction f) {
    double s = std::sqrt(Q / inner(f, f));
    scale(f, s);
    return f;
  };
  w = retract(std::move(w));
  double e = obj.energy(w);
  double step = 1.0;
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    GridFunction g = obj.gradient(w);
    double mu = inner(g, w) / (2.0 * Q);
    GridFunction r = g;
    axpy(-2.0 * mu, w, r); // projected gradient
    double rnorm = l2_norm(r);
    if (cfg.trace)
      res.trace.push_back({it, e, rnorm, std::fabs(inner(w, w) - Q), mu});
    res.multiplier = mu;
    res.residual = rnorm;
    if (rnorm <= tol) {
      res.converged = true;
      break;
    }
    GridFunction d = precondition(r, c_w);
    double dw = inner(d, w) / Q;
    axpy(-dw, w, d); // keep the direction tangent
    double slope = inner(g, d);
    if (slope <= 0.0) { // preconditioning lost descent; fall back to -r
      d = r;
      slope = inner(g, d);
    }
    // Energy decreases smaller than the evaluation round-off cannot certify
    // progress: comparisons against them are coin flips, and accepting them
    // makes the iterate random-walk on a residual plateau. Steps whose
    // requested decrease is sub-noise are left to the rescue search below.
    const double noise =
        32.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(e));
    bool accepted = false;
    double trial_step = step;
    for (int bt = 0; bt < cfg.max_backtracks; ++bt) {
      if (cfg.armijo * trial_step * slope <= noise) break;
      GridFunction wt = w;
      axpy(-trial_step, d, wt);
      wt = retract(std::move(wt));
      double et = obj.energy(wt);
      if (et <= e - cfg.armijo * trial_step * slope) {
        w = std::move(wt);
        e = et;
        step = std::min(trial_step * 2.0, 64.0);
        accepted = true;
        break;
      }
      trial_step *= 0.5;
    }
    if (!accepted) {
      // Once the energy comparison is exhausted, the residual norm still
      // certifies progress: it is a positive quantity whose relative changes
      // of 1e-4 or more sit far above its own evaluation noise. Accept any
      // step that contracts it by at least that much; repeated acceptances
      // force a strictly decreasing residual, so no random walk is possible.
      trial_step = step;
      for (int bt = 0; bt < cfg.max_backtracks && !accepted; ++bt) {
        GridFunction wt = w;
        axpy(-trial_step, d, wt);
        wt = retract(std::move(wt));
        GridFunction gt = obj.gradient(wt);
        double mut = inner(gt, wt) / (2.0 * Q);
        GridFunction rt = std::move(gt);
        axpy(-2.0 * mut, wt, rt);
        if (l2_norm(rt) <= (1.0 - 1e-4) * rnorm) {
          w = std::move(wt);
          e = obj.energy(w);
          step = std::min(trial_step * 2.0, 64.0);
          accepted = true;
        }
        trial_step *= 0.5;
      }
    }
    if (!accepted) break; // line search exhausted at this precision
  }
  res.iters = it;
  res.energy = e;
  res.v = std::move(w);
  return res;
}

// Unconstrained preconditioned descent, same line-search rules.
SolveResult free_minimize(const SphereObjective& obj, GridFunction v, double c_w,
                          const SolverConfig& cfg) {
  SolveResult res;
  const double tol = default_tol(v.lat, cfg);
  double e = obj.energy(v);
  double step = 1.0;
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    GridFunction g = obj.gradient(v);
    double rnorm = l2_norm(g);
    if (cfg.trace) res.trace.push_back({it, e, rnorm, 0.0, 0.0});
    res.residual = rnorm;
    if (rnorm <= tol) {
      res.converged = true;
      break;
    }
    GridFunction d = precondition(g, c_w);
    double slope = inner(g, d);
    if (slope <= 0.0) {
      d = g;
      slope = inner(g, d);
    }
    const double noise =
        32.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(e));
    bool accepted = false;
    double trial_step = step;
    for (int bt = 0; bt < cfg.max_backtracks; ++bt) {
      if (cfg.armijo * trial_step * slope <= noise) break;
      GridFunction vt = v;
      axpy(-trial_step, d, vt);
      double et = obj.energy(vt);
      if (et <= e - cfg.armijo * trial_step * slope) {
        v = std::move(vt);
        e = et;
        step = std::min(trial_step * 2.0, 64.0);
        accepted = true;
        break;
      }
      trial_step *= 0.5;
    }
    if (!accepted) {
      // Same residual-certified rescue as the constrained solver: once the
      // energy decrease falls below round-off, accept any step that strictly
      // contracts the gradient norm.
      trial_step = step;
      for (int bt = 0; bt < cfg.max_backtracks && !accepted; ++bt) {
        GridFunction vt = v;
        axpy(-trial_step, d, vt);
        GridFunction gt = obj.gradient(vt);
        if (l2_norm(gt) <= (1.0 - 1e-4) * rnorm) {
          v = std::move(vt);
          e = obj.energy(v);
          step = std::min(trial_step * 2.0, 64.0);
          accepted = true;
        }
        trial_step *= 0.5;
      }
    }
    if (!accepted) break;
  }
  res.iters = it;
  res.energy = e;
  res.v = std::move(v);
  return res;
}

} // namespace

SolveResult minimize_constrained(const TfwParams& p, const PeriodicKernel& kernel,
                                 const GridFunction& rho_nuc, double Q, const SolverConfig& cfg,
                                 const GridFunction* u_start, const GridFunction* u_ref) {
  SphereObjective obj{
      [&](const GridFunction& w) { return tfw_energy(p, kernel, rho_nuc, w); },
      [&](const GridFunction& w) { return tfw_gradient(p, kernel, rho_nuc, w); }};
  GridFunction w0 = u_start ? *u_start : GridFunction(rho_nuc.lat);
  if (!u_start)
    for (double& x : w0.v) x = std::sqrt(Q / rho_nuc.lat.volume());
  SolveResult res = sphere_minimize(obj, std::move(w0), Q, p.c_w, cfg);
  double orient = u_ref ? inner(res.v, *u_ref) : integrate(res.v);
  if (orient < 0.0) scale(res.v, -1.0);
  return res;
}

SolveResult minimize_defect_constrained(const PerfectCrystalState& host,
                                        const PeriodicKernel& kernel, const GridFunction& nu,
                                        double q, const SolverConfig& cfg,
                                        const GridFunction* v_start) {
  double Q = inner(host.u0, host.u0) + q;
  if (Q <= 0.0) throw std::invalid_argument("minimize_defect_constrained: removed charge exceeds host mass");
  // descend in w = u0 + v; defect_energy is evaluated in v, where the
  // difference form stays well-conditioned
  SphereObjective obj{
      [&](const GridFunction& w) {
        GridFunction v = w;
        axpy(-1.0, host.u0, v);
        return defect_energy(host, kernel, nu, v);
      },
      [&](const GridFunction& w) {
        GridFunction v = w;
        axpy(-1.0, host.u0, v);
        return defect_gradient(host, kernel, nu, v);
      }};
  GridFunction w0 = host.u0;
  if (v_start) axpy(1.0, *v_start, w0);
  SolveResult res = sphere_minimize(obj, std::move(w0), Q, host.params.c_w, cfg);
  if (inner(res.v, host.u0) < 0.0) scale(res.v, -1.0);
  GridFunction v = std::move(res.v);
  axpy(-1.0, host.u0, v);
  res.v = std::move(v);
  return res;
}

SolveResult minimize_defect_free(const PerfectCrystalState& host, const PeriodicKernel& kernel,
                                 const GridFunction& nu, const SolverConfig& cfg,
                                 const GridFunction* v_start) {
  SphereObjective obj{
      [&](const GridFunction& v) { return defect_energy(host, kernel, nu, v); },
      [&](const GridFunction& v) { return defect_gradient(host, kernel, nu, v); }};
  GridFunction v0 = v_start ? *v_start : GridFunction(host.lat);
  SolveResult res = free_minimize(obj, std::move(v0), host.params.c_w, cfg);
  for (int retry = 0; retry < 3; ++retry) {
    GridFunction w = res.v;
    axpy(1.0, host.u0, w);
    if (min_value(w) >= 0.0) break;
    // reparametrize through |u0 + v| and keep minimizing
    for (double& x : w.v) x = std::fabs(x);
    GridFunction v1 = std::move(w);
    axpy(-1.0, host.u0, v1);
    res = free_minimize(obj, std::move(v1), host.params.c_w, cfg);
  }
  res.multiplier = 0.0;
  return res;
}

UniquenessReport uniqueness_probe(const TfwParams& p, const PeriodicKernel& kernel,
                                  const GridFunction& rho_nuc, double Q, int n_starts,
                                  const SolverConfig& cfg) {
  UniquenessReport rep;
  GridFunction ref;
  for (int i = 0; i < n_starts; ++i) {
    GridFunction w0 = random_field(rho_nuc.lat, cfg.seed + std::uint64_t(i) * 7919, 0.2, 1.2);
    const GridFunction* refp = (i == 0) ? nullptr : &ref;
    SolveResult r = minimize_constrained(p, kernel, rho_nuc, Q, cfg, &w0, refp);
    if (i == 0) ref = r.v;
    rep.runs.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < rep.runs.size(); ++i) {
    GridFunction rho_i = rep.runs[i].v;
    for (std::size_t k = 0; k < rho_i.v.size(); ++k) rho_i.v[k] *= rho_i.v[k];
    double ni = l2_norm(rho_i);
    for (std::size_t j = i + 1; j < rep.runs.size(); ++j) {
      GridFunction diff = rep.runs[j].v;
      for (std::size_t k = 0; k < diff.v.size(); ++k) diff.v[k] = diff.v[k] * diff.v[k] - rho_i.v[k];
      rep.max_density_distance = std::max(rep.max_density_distance, l2_norm(diff) / ni);
    }
  }
  return rep;
}

GridFunction random_field(const Lattice& lat, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  GridFunction f(lat);
  for (double& x : f.v) x = dist(rng);
  return f;
}

} // namespace tfw
