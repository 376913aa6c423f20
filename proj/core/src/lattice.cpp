// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "tfw/lattice.hpp"

#include <cmath>

namespace tfw {

Lattice build_grid(double a, int l, int n_per_cell) {
  if (!(a > 0.0)) throw std::invalid_argument("build_grid: cell edge a must be positive");
  if (l < 1) throw std::invalid_argument("build_grid: supercell multiplier l must be >= 1");
  if (n_per_cell < 4 || n_per_cell % 2 != 0)
    throw std::invalid_argument("build_grid: n_per_cell must be even and >= 4");
  return Lattice{a, l, n_per_cell};
}

double wrap_coord(double x, double edge) {
  double r = std::remainder(x, edge);
  double half = 0.5 * edge;
  if (r <= -half) r += edge;
  return r;
}

std::array<double, 3> wrap_to_cell(const std::array<double, 3>& x, const Lattice& lat) {
  double e = lat.edge();
  return {wrap_coord(x[0], e), wrap_coord(x[1], e), wrap_coord(x[2], e)};
}

double grid_coord(const Lattice& lat, int j) {
  return wrap_coord(j * lat.h(), lat.edge());
}

int grid_index(const Lattice& lat, double x) {
  int n = lat.n_axis();
  long j = std::lround(x / lat.h()) % n;
  if (j < 0) j += n;
  return static_cast<int>(j);
}

std::array<double, 3> k_vector(const Lattice& lat, const KIndex& k) {
  double d = lat.dk();
  return {d * k.m[0], d * k.m[1], d * k.m[2]};
}

double k_norm_sq(const Lattice& lat, const KIndex& k) {
  double d = lat.dk();
  double m2 = double(k.m[0]) * k.m[0] + double(k.m[1]) * k.m[1] + double(k.m[2]) * k.m[2];
  return d * d * m2;
}

KIndex k_at(const Lattice& lat, std::int64_t linear) {
  int n = lat.n_axis();
  int iz = static_cast<int>(linear % n);
  int iy = static_cast<int>((linear / n) % n);
  int ix = static_cast<int>(linear / (std::int64_t(n) * n));
  return KIndex{{signed_mode(ix, n), signed_mode(iy, n), signed_mode(iz, n)}};
}

KIndex k_negate(const Lattice& lat, const KIndex& k) {
  int n = lat.n_axis();
  KIndex r;
  for (int i = 0; i < 3; ++i) r.m[i] = signed_mode(mode_index(-k.m[i], n) % n, n);
  return r;
}

} // namespace tfw
