// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "tfw/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tfw/fft.hpp"

namespace tfw {

SpectralField to_fourier(const GridFunction& f) {
  SpectralField out(f.lat);
  std::vector<std::complex<double>> in(f.v.begin(), f.v.end());
  detail::dft_forward(f.lat.n_axis(), in.data(), out.c.data());
  double scale = std::sqrt(f.lat.volume()) / double(f.lat.num_points());
  for (auto& c : out.c) c *= scale;
  return out;
}

GridFunction from_fourier(const SpectralField& g) {
  std::vector<std::complex<double>> out(g.c.size());
  detail::dft_backward(g.lat.n_axis(), g.c.data(), out.data());
  GridFunction f(g.lat);
  double scale = 1.0 / std::sqrt(g.lat.volume());
  for (std::size_t i = 0; i < out.size(); ++i) f.v[i] = out[i].real() * scale;
  return f;
}

double sobolev_norm(const SpectralField& f, double s) {
  const int n = f.lat.n_axis();
  const double dk2 = f.lat.dk() * f.lat.dk();
  double acc = 0.0;
  std::size_t idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    double kx = double(signed_mode(ix, n));
    for (int iy = 0; iy < n; ++iy) {
      double ky = double(signed_mode(iy, n));
      for (int iz = 0; iz < n; ++iz, ++idx) {
        double kz = double(signed_mode(iz, n));
        double k2 = dk2 * (kx * kx + ky * ky + kz * kz);
        acc += std::pow(1.0 + k2, s) * std::norm(f.c[idx]);
      }
    }
  }
  return std::sqrt(acc);
}

double sobolev_norm(const GridFunction& f, double s) { return sobolev_norm(to_fourier(f), s); }

GridFunction periodic_convolve(const GridFunction& f, const GridFunction& g) {
  if (!(f.lat == g.lat)) throw std::invalid_argument("periodic_convolve: lattice mismatch");
  SpectralField cf = to_fourier(f);
  SpectralField cg = to_fourier(g);
  double r = std::sqrt(f.lat.volume());
  for (std::size_t i = 0; i < cf.c.size(); ++i) cf.c[i] *= r * cg.c[i];
  return from_fourier(cf);
}

double integrate(const GridFunction& f) {
  double acc = 0.0;
  for (double x : f.v) acc += x;
  return acc * f.lat.point_volume();
}

double inner(const GridFunction& f, const GridFunction& g) {
  if (!(f.lat == g.lat)) throw std::invalid_argument("inner: lattice mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < f.v.size(); ++i) acc += f.v[i] * g.v[i];
  return acc * f.lat.point_volume();
}

double l2_norm(const GridFunction& f) { return std::sqrt(inner(f, f)); }

double min_value(const GridFunction& f) { return *std::min_element(f.v.begin(), f.v.end()); }
double max_value(const GridFunction& f) { return *std::max_element(f.v.begin(), f.v.end()); }

void axpy(double alpha, const GridFunction& x, GridFunction& y) {
  if (!(x.lat == y.lat)) throw std::invalid_argument("axpy: lattice mismatch");
  for (std::size_t i = 0; i < x.v.size(); ++i) y.v[i] += alpha * x.v[i];
}

void scale(GridFunction& f, double alpha) {
  for (double& x : f.v) x *= alpha;
}

} // namespace tfw
