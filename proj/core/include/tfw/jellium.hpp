// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#ifndef TFW_JELLIUM_HPP
#define TFW_JELLIUM_HPP

#include "tfw/field.hpp"
#include "tfw/minimize.hpp"

namespace tfw {

// Homogeneous host of density alpha^2 (u0 = alpha, Fermi level
// (5/3) c_tf alpha^{4/3}). The linearized defect response is governed by the
// rational symbol D(k) = c_w k^4 + (20/9) c_tf alpha^{4/3} k^2 + 8 pi alpha^2.
struct JelliumParams {
  double alpha = 1.0;
  TfwParams params;

  double quadratic_coef() const; // (20/9) c_tf alpha^{4/3}
  double constant_coef() const;  // 8 pi alpha^2
  double denom(double k2) const; // D at |k|^2 = k2
};

// Unitary-convention Fourier profiles of the response kernels:
//   g_hat(k) = (2 pi)^{-3/2} 4 pi alpha / D(k),
//   h_hat(k) = (2 pi)^{-3/2} k^2 / D(k).
// g_hat peaks at k = 0; h_hat peaks at |k|^2 = sqrt(8 pi alpha^2 / c_w).
double kernel_g_hat(const JelliumParams& jp, double k);
double kernel_h_hat(const JelliumParams& jp, double k);

// Radial real-space profiles by oscillatory quadrature of the inversion
// f(r) = sqrt(2/pi) (1/r) int_0^inf t f_hat(t) sin(r t) dt. The h integrand
// decays only like 1/t, so its known 1/(c_w t) tail is integrated
// analytically and the remainder numerically. Requires r > 0.
struct KernelProfile {
  double g;
  double h;
};
KernelProfile kernel_realspace(const JelliumParams& jp, double r);

// |2 alpha int_R3 g - 1|, the total screening of the linear-response kernel,
// with int g evaluated by radial quadrature of the real-space profile plus an
// exponential tail bound (the symbol D has no real zeros).
double linear_screening_check(const JelliumParams& jp);

// Closure of the k = 0 mode on a finite periodic box. analytic uses the
// whole-space limits g_hat(0), h_hat(0) = 0 and enforces exact screening;
// supercell uses the weights induced by the periodic Coulomb kernel of the
// box, making the fixed point identical to the supercell defect problem on
// the same grid. The two coincide as the box grows.
enum class ZeroMode { analytic, supercell };

// v = g * (nu - v^2) + h * kappa(v) with
// kappa = -(5/3) c_tf (|alpha+v|^{4/3}(alpha+v) - alpha^{7/3}
//          - (7/3) alpha^{4/3} v) + (Coul(nu - 2 alpha v - v^2)) v,
// iterated with adaptive damping (start 0.5); steps that do not reduce the
// fixed-point residual are rejected and the damping halved.
struct JelliumResult {
  GridFunction v;
  double residual = 0.0;
  int iters = 0;
  bool converged = false;
  double screening = 0.0; // int (nu - 2 alpha v - v^2)
};
JelliumResult jellium_solve(const JelliumParams& jp, const GridFunction& nu,
                            const SolverConfig& cfg, ZeroMode mode = ZeroMode::analytic);

// Linear response g * f on the box (the first-order small-nu solution).
GridFunction jellium_linear_response(const JelliumParams& jp, const GridFunction& f,
                                     ZeroMode mode = ZeroMode::analytic);

} // namespace tfw

#endif
