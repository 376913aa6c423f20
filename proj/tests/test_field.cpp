// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "doctest.h"

#include <cmath>
#include <complex>

#include "tfw/field.hpp"
#include "tfw/minimize.hpp"

using namespace tfw;

namespace {

GridFunction cosine_mode(const Lattice& lat, int mx, int my, int mz, double amp) {
  GridFunction f(lat);
  int n = lat.n_axis();
  double dk = lat.dk();
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz) {
        double phase = dk * (mx * grid_coord(lat, ix) + my * grid_coord(lat, iy) +
                             mz * grid_coord(lat, iz));
        f.at(ix, iy, iz) = amp * std::cos(phase);
      }
  return f;
}

} // namespace

TEST_CASE("plane wave analysis hits the analytic coefficient") {
  // cos(k0.x) has c_k = sqrt(|Gamma|)/2 exactly at k = +-k0, 0 elsewhere
  Lattice lat = build_grid(2.0, 1, 8);
  GridFunction f = cosine_mode(lat, 1, 2, -3, 1.0);
  SpectralField c = to_fourier(f);
  double expect = 0.5 * std::sqrt(lat.volume());
  int n = lat.n_axis();
  std::size_t ip = (std::size_t(mode_index(1, n)) * n + mode_index(2, n)) * n + mode_index(-3, n);
  std::size_t im =
      (std::size_t(mode_index(-1, n)) * n + mode_index(-2, n)) * n + mode_index(3, n);
  CHECK(std::abs(c.c[ip] - expect) < 1e-12 * expect);
  CHECK(std::abs(c.c[im] - expect) < 1e-12 * expect);
  double off = 0.0;
  for (std::size_t i = 0; i < c.c.size(); ++i)
    if (i != ip && i != im) off = std::max(off, std::abs(c.c[i]));
  CHECK(off < 1e-12 * expect);
}

TEST_CASE("analysis/synthesis round trip and Parseval") {
  Lattice lat = build_grid(1.3, 2, 6);
  GridFunction f = random_field(lat, 7, -2.0, 2.0);
  SpectralField c = to_fourier(f);
  GridFunction back = from_fourier(c);
  double err = 0.0;
  for (std::size_t i = 0; i < f.v.size(); ++i)
    err = std::max(err, std::fabs(back.v[i] - f.v[i]));
  CHECK(err < 1e-12);

  double lhs = inner(f, f);
  double rhs = 0.0;
  for (const std::complex<double>& z : c.c) rhs += std::norm(z);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("constant field maps to the zero mode only") {
  Lattice lat = build_grid(2.5, 1, 6);
  GridFunction f(lat);
  for (double& x : f.v) x = 3.25;
  SpectralField c = to_fourier(f);
  CHECK(std::abs(c.c[0] - 3.25 * std::sqrt(lat.volume())) < 1e-12);
  CHECK(integrate(f) == doctest::Approx(3.25 * lat.volume()).epsilon(1e-13));
}

TEST_CASE("periodic convolution against the direct double sum") {
  Lattice lat = build_grid(1.5, 1, 6);
  GridFunction f = random_field(lat, 21, -1.0, 1.0);
  GridFunction g = random_field(lat, 22, -1.0, 1.0);
  GridFunction fast = periodic_convolve(f, g);
  int n = lat.n_axis();
  double h3 = lat.point_volume();
  double err = 0.0, ref = 0.0;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz) {
        double s = 0.0;
        for (int jx = 0; jx < n; ++jx)
          for (int jy = 0; jy < n; ++jy)
            for (int jz = 0; jz < n; ++jz)
              s += f.at(((ix - jx) % n + n) % n, ((iy - jy) % n + n) % n,
                        ((iz - jz) % n + n) % n) *
                   g.at(jx, jy, jz);
        s *= h3;
        err = std::max(err, std::fabs(s - fast.at(ix, iy, iz)));
        ref = std::max(ref, std::fabs(s));
      }
  CHECK(err < 1e-11 * ref);
}

TEST_CASE("convolving with a constant integrates the other factor") {
  Lattice lat = build_grid(2.0, 1, 8);
  GridFunction f = random_field(lat, 31, -1.0, 1.0);
  GridFunction one(lat);
  for (double& x : one.v) x = 1.0;
  GridFunction conv = periodic_convolve(f, one);
  double expect = integrate(f);
  for (double x : conv.v) CHECK(x == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("convolution theorem for the spectral coefficients") {
  Lattice lat = build_grid(1.5, 1, 6);
  GridFunction f = random_field(lat, 41, -1.0, 1.0);
  GridFunction g = random_field(lat, 42, -1.0, 1.0);
  SpectralField cf = to_fourier(f), cg = to_fourier(g);
  SpectralField cc = to_fourier(periodic_convolve(f, g));
  double scale = std::sqrt(lat.volume());
  double err = 0.0;
  for (std::size_t i = 0; i < cc.c.size(); ++i)
    err = std::max(err, std::abs(cc.c[i] - scale * cf.c[i] * cg.c[i]));
  CHECK(err < 1e-10);
}

TEST_CASE("sobolev norm agrees between real and spectral entry points") {
  Lattice lat = build_grid(2.0, 1, 8);
  GridFunction f = random_field(lat, 51, -1.0, 1.0);
  SpectralField c = to_fourier(f);
  for (double s : {-1.0, 0.0, 1.0, 2.0}) {
    double direct = 0.0;
    for (std::size_t i = 0; i < c.c.size(); ++i) {
      double k2 = k_norm_sq(lat, k_at(lat, std::int64_t(i)));
      direct += std::pow(1.0 + k2, s) * std::norm(c.c[i]);
    }
    direct = std::sqrt(direct);
    CHECK(sobolev_norm(f, s) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(sobolev_norm(c, s) == doctest::Approx(direct).epsilon(1e-12));
  }
  // s = 0 reduces to the L2 norm by Parseval
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
}

TEST_CASE("mismatched lattices are rejected") {
  GridFunction f(build_grid(1.0, 1, 6));
  GridFunction g(build_grid(1.0, 1, 8));
  CHECK_THROWS(periodic_convolve(f, g));
}

TEST_CASE("axpy, scale and extrema helpers") {
  Lattice lat = build_grid(1.0, 1, 4);
  GridFunction x(lat), y(lat);
  for (std::size_t i = 0; i < x.v.size(); ++i) {
    x.v[i] = double(i);
    y.v[i] = 1.0;
  }
  axpy(2.0, x, y);
  CHECK(y.v[3] == doctest::Approx(7.0));
  scale(y, 0.5);
  CHECK(y.v[3] == doctest::Approx(3.5));
  CHECK(min_value(y) == doctest::Approx(0.5));
  CHECK(max_value(y) == doctest::Approx(0.5 * (1.0 + 2.0 * 63.0)));
}
