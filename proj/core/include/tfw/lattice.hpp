// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#ifndef TFW_LATTICE_HPP
#define TFW_LATTICE_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace tfw {

// Cubic supercell Gamma_L = (-a*l/2, a*l/2]^3 built from l^3 unit cells of
// edge a, sampled with n_per_cell points per unit-cell edge. The sample grid
// has N = n_per_cell*l points per axis at spacing h = a/n_per_cell, so grids
// for different l share the same physical sample points near the origin.
struct Lattice {
  double a = 1.0;     // unit-cell edge
  int l = 1;          // supercell multiplier
  int n_per_cell = 4; // samples per unit-cell edge, even, >= 4

  int n_axis() const { return n_per_cell * l; }
  std::int64_t num_points() const {
    std::int64_t n = n_axis();
    return n * n * n;
  }
  double edge() const { return a * l; }
  double h() const { return a / n_per_cell; }
  double volume() const { return edge() * edge() * edge(); }
  // quadrature weight per grid point: volume() / num_points()
  double point_volume() const { return h() * h() * h(); }
  // reciprocal-lattice spacing 2*pi/(a*l)
  double dk() const { return 2.0 * M_PI / edge(); }

  bool operator==(const Lattice&) const = default;
};

// Integer Fourier mode m, one component per axis, signed representative in
// [-N/2, N/2-1]. Negation is taken modulo N, so the mode set is closed under
// k -> -k (the Nyquist row is its own partner).
struct KIndex {
  std::array<int, 3> m{0, 0, 0};
};

// pre: a > 0, l >= 1, n_per_cell even and >= 4
// Throws std::invalid_argument otherwise.
Lattice build_grid(double a, int l, int n_per_cell);

// Representative of x in (-edge/2, edge/2], component-wise.
double wrap_coord(double x, double edge);
std::array<double, 3> wrap_to_cell(const std::array<double, 3>& x, const Lattice& lat);

// Grid point for axis index j in [0, N): j*h wrapped into the cell.
double grid_coord(const Lattice& lat, int j);
// Inverse of grid_coord on grid points (exact round-trip).
int grid_index(const Lattice& lat, double x);

// Signed mode for array index i in [0, N): i for i < N/2, else i - N.
inline int signed_mode(int i, int n) { return i < n / 2 ? i : i - n; }
// Array index for a signed mode (mod N).
inline int mode_index(int m, int n) { return m >= 0 ? m : m + n; }

// k vector of a mode, |k|^2, and mode enumeration order. Modes are laid out
// in FFT array order: linear index (ix*N + iy)*N + iz, each axis index in
// [0, N) mapping to the signed representative.
std::array<double, 3> k_vector(const Lattice& lat, const KIndex& k);
double k_norm_sq(const Lattice& lat, const KIndex& k);
KIndex k_at(const Lattice& lat, std::int64_t linear);
KIndex k_negate(const Lattice& lat, const KIndex& k);

} // namespace tfw

#endif
