// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#ifndef TFW_FUNCTIONAL_HPP
#define TFW_FUNCTIONAL_HPP

#include <cmath>

#include "tfw/coulomb.hpp"
#include "tfw/field.hpp"

namespace tfw {

// Energy coefficients. The Thomas-Fermi constant defaults to the physical
// (10/3)(3 pi^2)^{2/3}; derivations and most experiment configs use 1.
struct TfwParams {
  double c_w = 1.0;
  double c_tf = (10.0 / 3.0) * std::pow(3.0 * M_PI * M_PI, 2.0 / 3.0);
};

// signed power |t|^{4/3} t, the derivative direction of |t|^{7/3}
inline double pow73(double t) { return std::pow(std::fabs(t), 4.0 / 3.0) * t; }

// E(rho_nuc, w) = c_w int |grad w|^2 + c_tf int |w|^{10/3}
//               + (1/2) D(rho_nuc - w^2, rho_nuc - w^2),
// kinetic term spectral, local terms by grid quadrature.
double tfw_energy(const TfwParams& p, const PeriodicKernel& kernel,
                  const GridFunction& rho_nuc, const GridFunction& w);

// L2 gradient of tfw_energy:
//   2 [ -c_w Lap w + (5/3) c_tf |w|^{4/3} w + (G * (w^2 - rho_nuc)) w ].
GridFunction tfw_gradient(const TfwParams& p, const PeriodicKernel& kernel,
                          const GridFunction& rho_nuc, const GridFunction& w);

// Converged unit-cell ground state and derived data, replicable to Gamma_L.
struct PerfectCrystalState {
  Lattice lat;
  TfwParams params;
  GridFunction u0;   // positive ground state, int u0^2 = Q
  GridFunction rho0; // u0^2
  GridFunction v0;   // zero-mean periodic Coulomb potential of rho0 - rho_nuc
  double eps_f = 0.0;
  double m = 0.0; // min u0
  double M = 0.0; // max u0
  double Q = 0.0; // grid integral of rho_nuc
  double energy = 0.0;

  // homogeneous host: u0 = alpha, rho0 = alpha^2, v0 = 0,
  // eps_f = (5/3) c_tf alpha^{4/3}
  static PerfectCrystalState homogeneous(double alpha, const Lattice& lat, const TfwParams& p);
  // tile the unit-cell state over an l^3 supercell with the same n_per_cell
  PerfectCrystalState replicate(int l) const;
};

// Defect perturbation energy built around the host state:
//   <(H0 - eps_f) v, v>
//   + c_tf int(|u0+v|^{10/3} - u0^{10/3} - (5/3) u0^{4/3} (2 u0 v + v^2))
//   + (1/2) D(2 u0 v + v^2 - nu, same),
// with <(H0 - eps_f) v, v> = c_w int |grad v|^2
//   + int ((5/3) c_tf rho0^{2/3} + v0 - eps_f) v^2.
double defect_energy(const PerfectCrystalState& host, const PeriodicKernel& kernel,
                     const GridFunction& nu, const GridFunction& v);

// L2 gradient of defect_energy:
//   2 [ (H0 - eps_f) v
//      + (5/3) c_tf (|u0+v|^{4/3}(u0+v) - u0^{7/3} - u0^{4/3} v)
//      + (G * (2 u0 v + v^2 - nu)) (u0 + v) ].
GridFunction defect_gradient(const PerfectCrystalState& host, const PeriodicKernel& kernel,
                             const GridFunction& nu, const GridFunction& v);

// Two-sided Taylor gap of t -> t^gamma: for a in [m, M], b >= -a, gamma >= 2,
//   (gamma-1) a^{gamma-2} b^2 <= (a+b)^gamma - a^gamma - gamma a^{gamma-1} b
//                             <= C (1 + |b|^{gamma-2}) b^2,
// C calibrated once per (m, M, gamma) by coarse maximization of the middle /
// envelope ratio, inflated by 1.5.
class ConvexityBound {
 public:
  ConvexityBound(double m, double M, double gamma);

  struct Gap {
    double lower;
    double middle;
    double upper;
  };
  Gap gap(double a, double b) const;
  double c_upper() const { return c_; }

 private:
  double m_, M_, gamma_, c_;
};

} // namespace tfw

#endif
