// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#ifndef TFW_COULOMB_HPP
#define TFW_COULOMB_HPP

#include <array>
#include <vector>

#include "tfw/field.hpp"
#include "tfw/lattice.hpp"

namespace tfw {

// Periodic Coulomb kernel G on the supercell: -Delta G = 4 pi (sum of lattice
// deltas - |Gamma|^{-1}), normalized so the grid minimum of G is exactly 0.
// Fourier multipliers (acting on c_k): 4 pi / |k|^2 for k != 0 and
// weight0 = int G = g1 * |Gamma| at k = 0. g1 is the cell mean of G and obeys
// g1(l) = g1(1)/l on matching grids.
class PeriodicKernel {
 public:
  static PeriodicKernel build(const Lattice& lat);

  const Lattice& lattice() const { return lat_; }
  double g1() const { return g1_; }
  double weight0() const { return g1_ * lat_.volume(); }
  const GridFunction& realspace() const { return field_; }

  // (G * f), including the k = 0 mean term weight0 * c_0(f).
  GridFunction convolve(const GridFunction& f) const;

  // Bilinear form D(f, g) = weight0 conj(c_0 f) c_0 g
  //                        + sum_{k!=0} 4 pi conj(c_k f) c_k g / |k|^2.
  double form(const GridFunction& f, const GridFunction& g) const;
  double form(const SpectralField& f, const SpectralField& g) const;

 private:
  Lattice lat_;
  double g1_ = 0.0;
  GridFunction field_;
};

// Zero-mean solution of -Delta W = 4 pi (rho - mean rho):
// W_k = 4 pi rho_k / |k|^2, W_0 = 0.
GridFunction poisson_periodic(const GridFunction& rho);

// Isotropic Gaussian of total charge q: q (2 pi sigma^2)^{-3/2}
// exp(-|x - center|^2 / (2 sigma^2)).
struct GaussianSite {
  double charge = 0.0;
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double width = 1.0; // sigma > 0

  bool operator==(const GaussianSite&) const = default;
};

// Whole-space Coulomb energy D(nu, nu) = int int nu(x) nu(y) / |x-y| of a sum
// of Gaussians, by the closed form
//   sum_ij q_i q_j erf(d_ij / sqrt(2 (s_i^2 + s_j^2))) / d_ij,
// coincident centers contributing q_i q_j sqrt(2/pi) / sqrt(s_i^2 + s_j^2).
double coulomb_form_free(const std::vector<GaussianSite>& sites);

} // namespace tfw

#endif
