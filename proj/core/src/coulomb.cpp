// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "tfw/coulomb.hpp"

#include <cmath>
#include <stdexcept>

namespace tfw {

namespace {

// Applies m(k): c_k *= 4 pi / |k|^2 for k != 0, c_0 *= w0.
void apply_coulomb_multiplier(SpectralField& f, double w0) {
  const int n = f.lat.n_axis();
  const double dk2 = f.lat.dk() * f.lat.dk();
  std::size_t idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    double mx = double(signed_mode(ix, n));
    for (int iy = 0; iy < n; ++iy) {
      double my = double(signed_mode(iy, n));
      for (int iz = 0; iz < n; ++iz, ++idx) {
        double mz = double(signed_mode(iz, n));
        double m2 = mx * mx + my * my + mz * mz;
        f.c[idx] *= (m2 == 0.0) ? w0 : 4.0 * M_PI / (dk2 * m2);
      }
    }
  }
}

} // namespace

PeriodicKernel PeriodicKernel::build(const Lattice& lat) {
  PeriodicKernel k;
  k.lat_ = lat;
  // synthesize the zero-mean part, then shift so the grid minimum is 0
  SpectralField c(lat);
  const int n = lat.n_axis();
  const double dk2 = lat.dk() * lat.dk();
  const double inv_sqrt_vol = 1.0 / std::sqrt(lat.volume());
  std::size_t idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    double mx = double(signed_mode(ix, n));
    for (int iy = 0; iy < n; ++iy) {
      double my = double(signed_mode(iy, n));
      for (int iz = 0; iz < n; ++iz, ++idx) {
        double mz = double(signed_mode(iz, n));
        double m2 = mx * mx + my * my + mz * mz;
        c.c[idx] = (m2 == 0.0) ? 0.0 : 4.0 * M_PI / (dk2 * m2) * inv_sqrt_vol;
      }
    }
  }
  k.field_ = from_fourier(c);
  double m0 = min_value(k.field_);
  for (double& x : k.field_.v) x -= m0;
  k.g1_ = -m0;
  return k;
}

GridFunction PeriodicKernel::convolve(const GridFunction& f) const {
  if (!(f.lat == lat_)) throw std::invalid_argument("PeriodicKernel::convolve: lattice mismatch");
  SpectralField c = to_fourier(f);
  apply_coulomb_multiplier(c, weight0());
  return from_fourier(c);
}

double PeriodicKernel::form(const SpectralField& f, const SpectralField& g) const {
  if (!(f.lat == lat_) || !(g.lat == lat_))
    throw std::invalid_argument("PeriodicKernel::form: lattice mismatch");
  const int n = lat_.n_axis();
  const double dk2 = lat_.dk() * lat_.dk();
  double acc = weight0() * (std::conj(f.c[0]) * g.c[0]).real();
  std::size_t idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    double mx = double(signed_mode(ix, n));
    for (int iy = 0; iy < n; ++iy) {
      double my = double(signed_mode(iy, n));
      for (int iz = 0; iz < n; ++iz, ++idx) {
        double mz = double(signed_mode(iz, n));
        double m2 = mx * mx + my * my + mz * mz;
        if (m2 == 0.0) continue;
        acc += 4.0 * M_PI / (dk2 * m2) * (std::conj(f.c[idx]) * g.c[idx]).real();
      }
    }
  }
  return acc;
}

double PeriodicKernel::form(const GridFunction& f, const GridFunction& g) const {
  return form(to_fourier(f), to_fourier(g));
}

GridFunction poisson_periodic(const GridFunction& rho) {
  SpectralField c = to_fourier(rho);
  apply_coulomb_multiplier(c, 0.0);
  return from_fourier(c);
}

double coulomb_form_free(const std::vector<GaussianSite>& sites) {
  double acc = 0.0;
  for (const auto& si : sites) {
    for (const auto& sj : sites) {
      double dx = si.center[0] - sj.center[0];
      double dy = si.center[1] - sj.center[1];
      double dz = si.center[2] - sj.center[2];
      double d = std::sqrt(dx * dx + dy * dy + dz * dz);
      double s2 = si.width * si.width + sj.width * sj.width;
      if (d == 0.0) {
        acc += si.charge * sj.charge * std::sqrt(2.0 / M_PI) / std::sqrt(s2);
      } else {
        acc += si.charge * sj.charge * std::erf(d / std::sqrt(2.0 * s2)) / d;
      }
    }
  }
  return acc;
}

} // namespace tfw
