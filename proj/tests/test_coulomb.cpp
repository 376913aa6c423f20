// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "doctest.h"

#include <cmath>

#include "tfw/coulomb.hpp"
#include "tfw/minimize.hpp"
#include "tfw/nuclear_model.hpp"

using namespace tfw;

TEST_CASE("kernel field is min-normalized with matching mean") {
  Lattice lat = build_grid(2.0, 1, 12);
  PeriodicKernel K = PeriodicKernel::build(lat);
  CHECK(min_value(K.realspace()) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(integrate(K.realspace()) / lat.volume() == doctest::Approx(K.g1()).epsilon(1e-12));
  CHECK(K.weight0() == doctest::Approx(K.g1() * lat.volume()));
  CHECK(K.g1() > 0.0);
}

TEST_CASE("kernel spectral coefficients carry the Coulomb multiplier") {
  Lattice lat = build_grid(2.0, 1, 8);
  PeriodicKernel K = PeriodicKernel::build(lat);
  SpectralField c = to_fourier(K.realspace());
  double rootv = std::sqrt(lat.volume());
  CHECK(std::abs(c.c[0] - K.weight0() / rootv) < 1e-10);
  for (std::size_t i = 1; i < c.c.size(); ++i) {
    double k2 = k_norm_sq(lat, k_at(lat, std::int64_t(i)));
    CHECK(std::abs(c.c[i] - 4.0 * M_PI / (k2 * rootv)) < 1e-10);
  }
}

TEST_CASE("convolve and bilinear form are mutually consistent") {
  Lattice lat = build_grid(1.7, 1, 8);
  PeriodicKernel K = PeriodicKernel::build(lat);
  GridFunction f = random_field(lat, 61, -1.0, 1.0);
  GridFunction g = random_field(lat, 62, -1.0, 1.0);
  double direct = K.form(f, g);
  CHECK(direct == doctest::Approx(inner(f, K.convolve(g))).epsilon(1e-11));
  CHECK(direct == doctest::Approx(K.form(g, f)).epsilon(1e-11));
  CHECK(direct == doctest::Approx(K.form(to_fourier(f), to_fourier(g))).epsilon(1e-11));
  CHECK(K.form(f, f) >= 0.0);
}

TEST_CASE("kernel scales exactly between geometrically similar boxes") {
  // G for edge 2a equals (1/2) G for edge a at the matching grid point
  Lattice lat1 = build_grid(1.6, 1, 10);
  Lattice lat2 = build_grid(3.2, 1, 10);
  PeriodicKernel k1 = PeriodicKernel::build(lat1);
  PeriodicKernel k2 = PeriodicKernel::build(lat2);
  double ref = max_value(k1.realspace());
  for (std::size_t i = 0; i < k1.realspace().v.size(); ++i)
    CHECK(std::fabs(k2.realspace().v[i] - 0.5 * k1.realspace().v[i]) < 1e-12 * ref);
  CHECK(k2.g1() == doctest::Approx(0.5 * k1.g1()).epsilon(1e-12));
}

TEST_CASE("supercell mean weight decays like 1/l on matching grids") {
  // The continuum law is g1(l) = g1(1)/l; on matching grids the supercell
  // keeps the mode cutoff but refines the mode spacing, so the law holds up
  // to a quadrature deviation that shrinks as the grid is refined.
  auto deviation = [](int n_per_cell, int l) {
    PeriodicKernel k1 = PeriodicKernel::build(build_grid(2.0, 1, n_per_cell));
    PeriodicKernel kl = PeriodicKernel::build(build_grid(2.0, l, n_per_cell));
    return std::fabs(kl.g1() * l / k1.g1() - 1.0);
  };
  for (int l : {2, 3}) {
    double coarse = deviation(8, l);
    double fine = deviation(16, l);
    CHECK(coarse < 5e-3);
    CHECK(fine < coarse);
  }
}

TEST_CASE("poisson solve satisfies the discrete equation with zero mean") {
  Lattice lat = build_grid(2.0, 1, 12);
  GridFunction rho = random_field(lat, 71, -1.0, 1.0);
  GridFunction W = poisson_periodic(rho);
  SpectralField cr = to_fourier(rho), cw = to_fourier(W);
  CHECK(std::abs(cw.c[0]) < 1e-12);
  double err = 0.0;
  for (std::size_t i = 1; i < cw.c.size(); ++i) {
    double k2 = k_norm_sq(lat, k_at(lat, std::int64_t(i)));
    err = std::max(err, std::abs(k2 * cw.c[i] - 4.0 * M_PI * cr.c[i]));
  }
  CHECK(err < 1e-11);
}

TEST_CASE("free Coulomb energy of Gaussians against radial quadrature") {
  // pair term q_i q_j (2/pi) int_0^inf exp(-(s_i^2+s_j^2) k^2 / 2)
  //                                  sinc(k d_ij) dk
  std::vector<GaussianSite> sites = {
      {1.0, {0.0, 0.0, 0.0}, 0.4},
      {-0.7, {0.8, -0.3, 0.2}, 0.3},
      {0.5, {-0.5, 0.6, -0.4}, 0.55},
  };
  double oracle = 0.0;
  for (const GaussianSite& si : sites)
    for (const GaussianSite& sj : sites) {
      double s2 = si.width * si.width + sj.width * sj.width;
      double dx = si.center[0] - sj.center[0];
      double dy = si.center[1] - sj.center[1];
      double dz = si.center[2] - sj.center[2];
      double d = std::sqrt(dx * dx + dy * dy + dz * dz);
      // composite Simpson, integrand decays like exp(-s2 k^2/2)
      double kmax = 12.0 / std::sqrt(s2);
      int nq = 40001;
      double dkq = kmax / (nq - 1);
      double sum = 0.0;
      for (int m = 0; m < nq; ++m) {
        double k = m * dkq;
        double sinc = (k * d < 1e-8) ? 1.0 : std::sin(k * d) / (k * d);
        double w = (m == 0 || m == nq - 1) ? 1.0 : (m % 2 ? 4.0 : 2.0);
        sum += w * std::exp(-0.5 * s2 * k * k) * sinc;
      }
      sum *= dkq / 3.0;
      oracle += si.charge * sj.charge * (2.0 / M_PI) * sum;
    }
  CHECK(coulomb_form_free(sites) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("free Coulomb energy is continuous at coincident centers") {
  GaussianSite a{1.0, {0.0, 0.0, 0.0}, 0.4};
  GaussianSite b{1.0, {1e-9, 0.0, 0.0}, 0.3};
  GaussianSite b0{1.0, {0.0, 0.0, 0.0}, 0.3};
  double near = coulomb_form_free({a, b});
  double at = coulomb_form_free({a, b0});
  CHECK(near == doctest::Approx(at).epsilon(1e-8));
}

TEST_CASE("periodic form approaches the free-space energy as the box grows") {
  GaussianSite s{1.0, {0.0, 0.0, 0.0}, 0.2};
  double dfree = coulomb_form_free({s});
  double prev = 1e300;
  for (int l : {1, 2, 3}) {
    Lattice lat = build_grid(2.0, l, 10);
    PeriodicKernel K = PeriodicKernel::build(lat);
    GridFunction nu = restrict_to_cell({s}, lat);
    double rel = std::fabs(K.form(nu, nu) - dfree) / dfree;
    CHECK(rel < prev);
    prev = rel;
  }
}
