// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#ifndef TFW_NUCLEAR_MODEL_HPP
#define TFW_NUCLEAR_MODEL_HPP

#include <vector>

#include "tfw/coulomb.hpp"
#include "tfw/field.hpp"

namespace tfw {

// Nuclear charge data: a periodic part (uniform background plus Gaussian
// sites replicated over the unit-cell lattice) and a local defect part nu
// (Gaussian sites, not replicated).
struct NuclearModel {
  double uniform = 0.0; // constant background charge density
  std::vector<GaussianSite> periodic;
  std::vector<GaussianSite> defect;

  // charge per unit cell of the periodic part
  double cell_charge(double a) const;
  // whole-space charge of the defect part, int nu
  double defect_charge() const;
};

// Periodic density on the supercell grid, synthesized spectrally: the
// replicated Gaussians carry coefficients only on unit-cell reciprocal modes
// (m divisible by l), where c_k = l^{3/2} |Gamma_1|^{-1/2} sum_i q_i
// e^{-i k.c_i} e^{-sigma_i^2 |k|^2 / 2}; the background adds to c_0 only.
GridFunction periodic_density(const NuclearModel& model, const Lattice& lat);

// nu_L: pointwise samples of nu at the wrapped grid points of Gamma_L,
// no periodic image summation.
GridFunction restrict_to_cell(const std::vector<GaussianSite>& sites, const Lattice& lat);
GridFunction restrict_to_cell(const NuclearModel& model, const Lattice& lat);

} // namespace tfw

#endif
