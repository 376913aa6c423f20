// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "tfw/nuclear_model.hpp"

#include <cmath>
#include <complex>

namespace tfw {

double NuclearModel::cell_charge(double a) const {
  double z = uniform * a * a * a;
  for (const auto& s : periodic) z += s.charge;
  return z;
}

double NuclearModel::defect_charge() const {
  double q = 0.0;
  for (const auto& s : defect) q += s.charge;
  return q;
}

GridFunction periodic_density(const NuclearModel& model, const Lattice& lat) {
  SpectralField c(lat);
  const int n = lat.n_axis();
  const int l = lat.l;
  const double dk = lat.dk();
  const double cell_vol = lat.a * lat.a * lat.a;
  const double coef = std::pow(double(l), 1.5) / std::sqrt(cell_vol);
  std::size_t idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    int mx = signed_mode(ix, n);
    for (int iy = 0; iy < n; ++iy) {
      int my = signed_mode(iy, n);
      for (int iz = 0; iz < n; ++iz, ++idx) {
        int mz = signed_mode(iz, n);
        if (mx % l != 0 || my % l != 0 || mz % l != 0) continue;
        double kx = dk * mx, ky = dk * my, kz = dk * mz;
        double k2 = kx * kx + ky * ky + kz * kz;
        std::complex<double> acc = 0.0;
        for (const auto& s : model.periodic) {
          double phase = kx * s.center[0] + ky * s.center[1] + kz * s.center[2];
          double amp = s.charge * std::exp(-0.5 * s.width * s.width * k2);
          acc += amp * std::exp(std::complex<double>(0.0, -phase));
        }
        c.c[idx] = coef * acc;
      }
    }
  }
  c.c[0] += model.uniform * std::sqrt(lat.volume());
  // Nyquist rows are self-paired under k -> -k; keep them real so the
  // synthesized field is real to round-off.
  idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    bool nx = (ix == n / 2);
    for (int iy = 0; iy < n; ++iy) {
      bool ny = (iy == n / 2);
      for (int iz = 0; iz < n; ++iz, ++idx) {
        if (nx || ny || iz == n / 2) c.c[idx] = c.c[idx].real();
      }
    }
  }
  return from_fourier(c);
}

GridFunction restrict_to_cell(const std::vector<GaussianSite>& sites, const Lattice& lat) {
  GridFunction f(lat);
  const int n = lat.n_axis();
  std::vector<double> coord(n);
  for (int j = 0; j < n; ++j) coord[j] = grid_coord(lat, j);
  // values at the wrapped representatives, differences deliberately unwrapped
  for (const auto& s : sites) {
    double norm = s.charge / std::pow(2.0 * M_PI * s.width * s.width, 1.5);
    double inv2s2 = 1.0 / (2.0 * s.width * s.width);
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
      double dx = coord[ix] - s.center[0];
      for (int iy = 0; iy < n; ++iy) {
        double dy = coord[iy] - s.center[1];
        for (int iz = 0; iz < n; ++iz, ++idx) {
          double dz = coord[iz] - s.center[2];
          f.v[idx] += norm * std::exp(-(dx * dx + dy * dy + dz * dz) * inv2s2);
        }
      }
    }
  }
  return f;
}

GridFunction restrict_to_cell(const NuclearModel& model, const Lattice& lat) {
  return restrict_to_cell(model.defect, lat);
}

} // namespace tfw
