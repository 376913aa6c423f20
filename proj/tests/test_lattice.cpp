// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "tfw/lattice.hpp"

using namespace tfw;

TEST_CASE("build_grid derived quantities") {
  Lattice lat = build_grid(2.0, 3, 8);
  CHECK(lat.n_axis() == 24);
  CHECK(lat.num_points() == 24 * 24 * 24);
  CHECK(lat.edge() == doctest::Approx(6.0));
  CHECK(lat.h() == doctest::Approx(0.25));
  CHECK(lat.volume() == doctest::Approx(216.0));
  CHECK(lat.point_volume() == doctest::Approx(216.0 / (24.0 * 24.0 * 24.0)));
  CHECK(lat.dk() == doctest::Approx(2.0 * M_PI / 6.0));
}

TEST_CASE("build_grid rejects bad parameters") {
  CHECK_THROWS_AS(build_grid(0.0, 1, 8), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(-1.0, 1, 8), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(1.0, 0, 8), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(1.0, 1, 7), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(1.0, 1, 2), std::invalid_argument);
}

TEST_CASE("wrap_coord lands in the half-open cell") {
  Lattice lat = build_grid(2.0, 1, 8);
  double e = lat.edge();
  for (double x : {-3.7, -1.0, -0.999, 0.0, 0.3, 0.999, 1.0, 1.001, 5.25}) {
    double w = wrap_coord(x, e);
    CHECK(w > -e / 2);
    CHECK(w <= e / 2);
    CHECK(std::remainder(w - x, e) == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(wrap_coord(-e / 2, e) == doctest::Approx(e / 2));
  CHECK(wrap_coord(e / 2, e) == doctest::Approx(e / 2));
}

TEST_CASE("grid_coord / grid_index round trip") {
  Lattice lat = build_grid(1.6, 2, 6);
  for (int j = 0; j < lat.n_axis(); ++j) {
    double x = grid_coord(lat, j);
    CHECK(grid_index(lat, x) == j);
    CHECK(grid_index(lat, x + lat.edge()) == j);
    CHECK(grid_index(lat, x - 2.0 * lat.edge()) == j);
  }
}

TEST_CASE("signed_mode / mode_index are inverse") {
  int n = 12;
  for (int i = 0; i < n; ++i) {
    int m = signed_mode(i, n);
    CHECK(m >= -n / 2);
    CHECK(m <= n / 2 - 1);
    CHECK(mode_index(m, n) == i);
  }
}

TEST_CASE("k_at follows the linear layout and k_vector the signed modes") {
  Lattice lat = build_grid(2.0, 1, 6);
  int n = lat.n_axis();
  std::size_t idx = 0;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz, ++idx) {
        KIndex k = k_at(lat, idx);
        CHECK(k.m[0] == signed_mode(ix, n));
        CHECK(k.m[1] == signed_mode(iy, n));
        CHECK(k.m[2] == signed_mode(iz, n));
        std::array<double, 3> kv = k_vector(lat, k);
        CHECK(kv[0] == doctest::Approx(lat.dk() * k.m[0]));
        double k2 = kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2];
        CHECK(k_norm_sq(lat, k) == doctest::Approx(k2));
      }
}

TEST_CASE("k_negate pairs modes modulo n, Nyquist is self-paired") {
  Lattice lat = build_grid(2.0, 1, 8);
  int n = lat.n_axis();
  // generic mode
  KIndex k{{1, 2, -3}};
  KIndex nk = k_negate(lat, k);
  CHECK(nk.m[0] == -1);
  CHECK(nk.m[1] == -2);
  CHECK(nk.m[2] == 3);
  // the -n/2 row has no +n/2 partner; negation keeps it fixed
  KIndex ny{{-n / 2, 0, -n / 2}};
  KIndex nny = k_negate(lat, ny);
  CHECK(nny.m[0] == -n / 2);
  CHECK(nny.m[2] == -n / 2);
}
