// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#ifndef TFW_MINIMIZE_HPP
#define TFW_MINIMIZE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "tfw/functional.hpp"

namespace tfw {

struct SolverConfig {
  int max_iters = 5000;
  // L2 norm of the projected gradient at which to stop; <= 0 selects the
  // default 1e-8 * sqrt(total grid points)
  double grad_tol = 0.0;
  std::uint64_t seed = 0;
  bool trace = false;       // record per-iteration rows
  double armijo = 1e-4;     // sufficient-decrease constant
  int max_backtracks = 48;
};

struct TraceRow {
  int iter;
  double energy;
  double residual;
  double constraint_violation;
  double multiplier;
};

struct SolveResult {
  GridFunction v;          // minimizer (u for host solves, v for defect solves)
  double energy = 0.0;
  double multiplier = 0.0; // Lagrange multiplier of the mass constraint
  double residual = 0.0;   // L2 norm of the (projected) gradient at exit
  int iters = 0;
  bool converged = false;
  std::vector<TraceRow> trace;
};

// Minimizes tfw_energy over {u : int u^2 = Q} by preconditioned projected
// gradient descent with backtracking line search and the rescale retraction.
// Preconditioner: (1 + c_w |k|^2)^{-1} on Fourier coefficients. Start from
// the constant positive state unless u_start is given. The sign of the result
// is fixed by inner(u, u_ref) >= 0 when u_ref is given, else by making the
// grid mean positive. multiplier is the Fermi-level estimate
// inner(grad, u) / (2 Q).
SolveResult minimize_constrained(const TfwParams& p, const PeriodicKernel& kernel,
                                 const GridFunction& rho_nuc, double Q,
                                 const SolverConfig& cfg,
                                 const GridFunction* u_start = nullptr,
                                 const GridFunction* u_ref = nullptr);

// Minimizes defect_energy subject to int(2 u0 v + v^2) = q, via the rescale
// retraction on w = u0 + v (the constraint is int w^2 = int u0^2 + q).
// multiplier is the defect Euler multiplier, equivalently the Fermi-level
// shift of the perturbed problem.
SolveResult minimize_defect_constrained(const PerfectCrystalState& host,
                                        const PeriodicKernel& kernel, const GridFunction& nu,
                                        double q, const SolverConfig& cfg,
                                        const GridFunction* v_start = nullptr);

// Unconstrained minimization of defect_energy (multiplier 0). If the
// converged u0 + v dips negative, restarts from |u0 + v| - u0 until sign-
// stable or the iteration budget runs out.
SolveResult minimize_defect_free(const PerfectCrystalState& host, const PeriodicKernel& kernel,
                                 const GridFunction& nu, const SolverConfig& cfg,
                                 const GridFunction* v_start = nullptr);

// Runs minimize_constrained from n_starts seeded random fields and reports
// the maximum pairwise relative L2 distance of the resulting densities u^2.
struct UniquenessReport {
  double max_density_distance = 0.0;
  std::vector<SolveResult> runs;
};
UniquenessReport uniqueness_probe(const TfwParams& p, const PeriodicKernel& kernel,
                                  const GridFunction& rho_nuc, double Q, int n_starts,
                                  const SolverConfig& cfg);

// Seeded uniform field with samples in [lo, hi), used for probe starts.
GridFunction random_field(const Lattice& lat, std::uint64_t seed, double lo, double hi);

} // namespace tfw

#endif
