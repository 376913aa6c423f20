// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "tfw/functional.hpp"

#include <cmath>
#include <stdexcept>

namespace tfw {

namespace {

// sum_k |k|^2 |c_k|^2 (spectral Dirichlet energy of the trig interpolant)
double dirichlet_energy(const SpectralField& f) {
  const int n = f.lat.n_axis();
  const double dk2 = f.lat.dk() * f.lat.dk();
  double acc = 0.0;
  std::size_t idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    double mx = double(signed_mode(ix, n));
    for (int iy = 0; iy < n; ++iy) {
      double my = double(signed_mode(iy, n));
      for (int iz = 0; iz < n; ++iz, ++idx) {
        double mz = double(signed_mode(iz, n));
        acc += dk2 * (mx * mx + my * my + mz * mz) * std::norm(f.c[idx]);
      }
    }
  }
  return acc;
}

// -Lap f via the spectral multiplier |k|^2
GridFunction neg_laplacian(const SpectralField& f) {
  SpectralField g = f;
  const int n = f.lat.n_axis();
  const double dk2 = f.lat.dk() * f.lat.dk();
  std::size_t idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    double mx = double(signed_mode(ix, n));
    for (int iy = 0; iy < n; ++iy) {
      double my = double(signed_mode(iy, n));
      for (int iz = 0; iz < n; ++iz, ++idx) {
        double mz = double(signed_mode(iz, n));
        g.c[idx] *= dk2 * (mx * mx + my * my + mz * mz);
      }
    }
  }
  return from_fourier(g);
}

} // namespace

double tfw_energy(const TfwParams& p, const PeriodicKernel& kernel,
                  const GridFunction& rho_nuc, const GridFunction& w) {
  SpectralField cw = to_fourier(w);
  double kin = p.c_w * dirichlet_energy(cw);
  double tf = 0.0;
  GridFunction net(w.lat);
  for (std::size_t i = 0; i < w.v.size(); ++i) {
    double t = w.v[i];
    tf += std::pow(std::fabs(t), 10.0 / 3.0);
    net.v[i] = rho_nuc.v[i] - t * t;
  }
  tf *= p.c_tf * w.lat.point_volume();
  double coul = 0.5 * kernel.form(net, net);
  return kin + tf + coul;
}

GridFunction tfw_gradient(const TfwParams& p, const PeriodicKernel& kernel,
                          const GridFunction& rho_nuc, const GridFunction& w) {
  SpectralField cw = to_fourier(w);
  GridFunction lap = neg_laplacian(cw);
  GridFunction net(w.lat);
  for (std::size_t i = 0; i < w.v.size(); ++i) net.v[i] = w.v[i] * w.v[i] - rho_nuc.v[i];
  GridFunction pot = kernel.convolve(net);
  GridFunction g(w.lat);
  for (std::size_t i = 0; i < w.v.size(); ++i) {
    g.v[i] = 2.0 * (p.c_w * lap.v[i] + (5.0 / 3.0) * p.c_tf * pow73(w.v[i]) +
                    pot.v[i] * w.v[i]);
  }
  return g;
}

PerfectCrystalState PerfectCrystalState::homogeneous(double alpha, const Lattice& lat,
                                                     const TfwParams& p) {
  PerfectCrystalState s;
  s.lat = lat;
  s.params = p;
  s.u0 = GridFunction(lat);
  s.rho0 = GridFunction(lat);
  s.v0 = GridFunction(lat);
  for (std::size_t i = 0; i < s.u0.v.size(); ++i) {
    s.u0.v[i] = alpha;
    s.rho0.v[i] = alpha * alpha;
  }
  s.eps_f = (5.0 / 3.0) * p.c_tf * std::pow(alpha, 4.0 / 3.0);
  s.m = s.M = alpha;
  s.Q = alpha * alpha * lat.volume();
  s.energy = p.c_tf * std::pow(alpha, 10.0 / 3.0) * lat.volume();
  return s;
}

PerfectCrystalState PerfectCrystalState::replicate(int l) const {
  if (lat.l != 1) throw std::invalid_argument("replicate: host state must live on a unit cell");
  PerfectCrystalState s;
  s.lat = Lattice{lat.a, l, lat.n_per_cell};
  s.params = params;
  auto tile = [&](const GridFunction& f) {
    GridFunction out(s.lat);
    const int n1 = lat.n_axis();
    const int nl = s.lat.n_axis();
    std::size_t idx = 0;
    for (int ix = 0; ix < nl; ++ix)
      for (int iy = 0; iy < nl; ++iy)
        for (int iz = 0; iz < nl; ++iz, ++idx)
          out.v[idx] = f.at(ix % n1, iy % n1, iz % n1);
    return out;
  };
  s.u0 = tile(u0);
  s.rho0 = tile(rho0);
  s.v0 = tile(v0);
  s.eps_f = eps_f;
  s.m = m;
  s.M = M;
  s.Q = Q * l * l * l;
  s.energy = energy * l * l * l;
  return s;
}

double defect_energy(const PerfectCrystalState& host, const PeriodicKernel& kernel,
                     const GridFunction& nu, const GridFunction& v) {
  const TfwParams& p = host.params;
  SpectralField cv = to_fourier(v);
  double quad = p.c_w * dirichlet_energy(cv);
  double tf_rem = 0.0;
  GridFunction rho_t(v.lat);
  const double cvq = v.lat.point_volume();
  for (std::size_t i = 0; i < v.v.size(); ++i) {
    double u = host.u0.v[i];
    double t = v.v[i];
    double u43 = std::pow(u, 4.0 / 3.0);
    double wloc = (5.0 / 3.0) * p.c_tf * std::pow(host.rho0.v[i], 2.0 / 3.0) + host.v0.v[i] -
                  host.eps_f;
    quad += wloc * t * t * cvq;
    double lin = 2.0 * u * t + t * t;
    tf_rem += std::pow(std::fabs(u + t), 10.0 / 3.0) - std::pow(u, 10.0 / 3.0) -
              (5.0 / 3.0) * u43 * lin;
    rho_t.v[i] = lin - nu.v[i];
  }
  tf_rem *= p.c_tf * cvq;
  double coul = 0.5 * kernel.form(rho_t, rho_t);
  return quad + tf_rem + coul;
}

GridFunction defect_gradient(const PerfectCrystalState& host, const PeriodicKernel& kernel,
                             const GridFunction& nu, const GridFunction& v) {
  const TfwParams& p = host.params;
  SpectralField cv = to_fourier(v);
  GridFunction lap = neg_laplacian(cv);
  GridFunction rho_t(v.lat);
  for (std::size_t i = 0; i < v.v.size(); ++i) {
    double u = host.u0.v[i];
    double t = v.v[i];
    rho_t.v[i] = 2.0 * u * t + t * t - nu.v[i];
  }
  GridFunction pot = kernel.convolve(rho_t);
  GridFunction g(v.lat);
  for (std::size_t i = 0; i < v.v.size(); ++i) {
    double u = host.u0.v[i];
    double t = v.v[i];
    double u43 = std::pow(u, 4.0 / 3.0);
    double wloc = (5.0 / 3.0) * p.c_tf * std::pow(host.rho0.v[i], 2.0 / 3.0) + host.v0.v[i] -
                  host.eps_f;
    double tf_rem = (5.0 / 3.0) * p.c_tf * (pow73(u + t) - u43 * u - u43 * t);
    g.v[i] = 2.0 * (p.c_w * lap.v[i] + wloc * t + tf_rem + pot.v[i] * (u + t));
  }
  return g;
}

ConvexityBound::ConvexityBound(double m, double M, double gamma)
    : m_(m), M_(M), gamma_(gamma) {
  if (!(0.0 < m && m <= M)) throw std::invalid_argument("ConvexityBound: need 0 < m <= M");
  if (gamma < 2.0) throw std::invalid_argument("ConvexityBound: need gamma >= 2");
  // coarse deterministic maximization of middle / ((1+|b|^{gamma-2}) b^2);
  // the b -> 0 limit gamma (gamma-1) a^{gamma-2} / 2 is added analytically
  // because the raw expression cancels catastrophically for tiny b
  double cmax = 0.5 * gamma * (gamma - 1.0) * std::pow(std::max(M, 1.0), gamma - 2.0);
  const int na = 64, nb = 4096;
  for (int i = 0; i <= na; ++i) {
    long double a = m + (M - m) * i / double(na);
    for (int j = 0; j <= nb; ++j) {
      // b sweeps (-a, 200] with cubic density toward the far end
      double t = -1.0 + 2.0 * j / double(nb);
      long double b = (t < 0.0) ? -a * (1.0 - 1e-6) * (-t) : 200.0 * std::pow(t, 3.0);
      if (std::fabs(double(b)) < 1e-4) continue;
      long double middle = std::pow(std::fabs(double(a + b)), (long double)gamma) -
                           std::pow(a, (long double)gamma) -
                           (long double)gamma * std::pow(a, (long double)gamma - 1.0L) * b;
      long double env = (1.0L + std::pow(std::fabs(double(b)), (long double)gamma - 2.0L)) * b * b;
      cmax = std::max(cmax, double(middle / env));
    }
  }
  c_ = 1.5 * cmax;
}

ConvexityBound::Gap ConvexityBound::gap(double a, double b) const {
  double middle = std::pow(std::fabs(a + b), gamma_) - std::pow(a, gamma_) -
                  gamma_ * std::pow(a, gamma_ - 1.0) * b;
  double lower = (gamma_ - 1.0) * std::pow(a, gamma_ - 2.0) * b * b;
  double upper = c_ * (1.0 + std::pow(std::fabs(b), gamma_ - 2.0)) * b * b;
  return {lower, middle, upper};
}

} // namespace tfw
