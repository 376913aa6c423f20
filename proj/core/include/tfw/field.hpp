// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#ifndef TFW_FIELD_HPP
#define TFW_FIELD_HPP

#include <complex>
#include <vector>

#include "tfw/lattice.hpp"

namespace tfw {

// Real scalar field sampled on the lattice grid, index (ix*N + iy)*N + iz,
// axis index j at coordinate grid_coord(lat, j).
struct GridFunction {
  Lattice lat;
  std::vector<double> v;

  GridFunction() = default;
  explicit GridFunction(const Lattice& l) : lat(l), v(l.num_points(), 0.0) {}
  double& at(int ix, int iy, int iz) {
    int n = lat.n_axis();
    return v[(std::size_t(ix) * n + iy) * n + iz];
  }
  double at(int ix, int iy, int iz) const {
    int n = lat.n_axis();
    return v[(std::size_t(ix) * n + iy) * n + iz];
  }
};

// Fourier coefficients c_k in the cell-normalized convention
//   v(x) = |Gamma|^{-1/2} sum_k c_k e^{i k.x},
//   c_k  = |Gamma|^{-1/2} int_Gamma v e^{-i k.x} dx,
// stored in FFT array order (same linear layout as GridFunction, axis index
// <-> signed mode via signed_mode/mode_index).
struct SpectralField {
  Lattice lat;
  std::vector<std::complex<double>> c;

  SpectralField() = default;
  explicit SpectralField(const Lattice& l) : lat(l), c(l.num_points(), 0.0) {}
};

// Trapezoidal analysis c_k = (|Gamma|^{1/2}/N^3) sum_j v_j e^{-i k.x_j} and
// the matching synthesis; from_fourier(to_fourier(f)) == f to round-off.
SpectralField to_fourier(const GridFunction& f);
GridFunction from_fourier(const SpectralField& g);

// sqrt(sum_k (1 + |k|^2)^s |c_k|^2)
double sobolev_norm(const SpectralField& f, double s);
double sobolev_norm(const GridFunction& f, double s);

// Periodic convolution (f * g)(x) = int_Gamma f(x-y) g(y) dy, computed as
// c_k(f*g) = |Gamma|^{1/2} c_k(f) c_k(g).
GridFunction periodic_convolve(const GridFunction& f, const GridFunction& g);

// Quadrature-weighted integrals and norms (weight h^3 per sample).
double integrate(const GridFunction& f);
double inner(const GridFunction& f, const GridFunction& g);
double l2_norm(const GridFunction& f);
double min_value(const GridFunction& f);
double max_value(const GridFunction& f);

// In-place helpers; lattices must match.
void axpy(double alpha, const GridFunction& x, GridFunction& y); // y += alpha*x
void scale(GridFunction& f, double alpha);

} // namespace tfw

#endif
