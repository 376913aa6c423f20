// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "tfw/jellium.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "tfw/coulomb.hpp"

namespace tfw {

double JelliumParams::quadratic_coef() const {
  return (20.0 / 9.0) * params.c_tf * std::pow(alpha, 4.0 / 3.0);
}
double JelliumParams::constant_coef() const { return 8.0 * M_PI * alpha * alpha; }
double JelliumParams::denom(double k2) const {
  return params.c_w * k2 * k2 + quadratic_coef() * k2 + constant_coef();
}

double kernel_g_hat(const JelliumParams& jp, double k) {
  return std::pow(2.0 * M_PI, -1.5) * 4.0 * M_PI * jp.alpha / jp.denom(k * k);
}

double kernel_h_hat(const JelliumParams& jp, double k) {
  return std::pow(2.0 * M_PI, -1.5) * k * k / jp.denom(k * k);
}

namespace {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

const int kGlOrder = 16;

// int_0^inf phi(t) sin(r t) dt for smooth phi with decaying tail. Panels
// resolve both the envelope scale kappa and the oscillation; partial sums at
// half-period boundaries are iteratively averaged to accelerate the
// alternating tail.
double osc_sin_integral(const std::function<double(double)>& phi, double r, double kappa) {
  static thread_local std::vector<double> gx, gw;
  if (gx.empty()) gauss_legendre(kGlOrder, gx, gw);
  const double H = M_PI / r;
  const double sub = M_PI / (4.0 * (kappa + r));
  const long per = std::max<long>(1, long(std::ceil(H / sub)));
  const double width = H / double(per);

  std::vector<double> sums; // partial sums at half-period boundaries
  double acc = 0.0, est = 0.0, prev_est = 0.0;
  long total_panels = 0;
  const long max_panels = 400000;
  bool have_prev = false;

  auto averaged = [&]() {
    std::size_t take = std::min<std::size_t>(sums.size(), 12);
    std::vector<double> a(sums.end() - take, sums.end());
    while (a.size() > 1) {
      for (std::size_t i = 0; i + 1 < a.size(); ++i) a[i] = 0.5 * (a[i] + a[i + 1]);
      a.pop_back();
    }
    return a[0];
  };

  for (long m = 0;; ++m) {
    double t0 = m * H;
    double piece = 0.0;
    for (long p = 0; p < per; ++p) {
      double a = t0 + p * width, b = a + width;
      double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      double s = 0.0;
      for (int i = 0; i < kGlOrder; ++i) {
        double t = mid + half * gx[i];
        s += gw[i] * phi(t) * std::sin(r * t);
      }
      piece += s * half;
      ++total_panels;
    }
    acc += piece;
    sums.push_back(acc);
    est = averaged();
    double tail_scale = 1e-14 * (1.0 + std::fabs(est));
    bool settled = have_prev && std::fabs(est - prev_est) < tail_scale;
    bool envelope_dead = std::fabs(piece) < tail_scale;
    prev_est = est;
    have_prev = true;
    if ((m + 1) * H > 12.0 * kappa && (settled || envelope_dead)) break;
    if (total_panels > max_panels) break;
  }
  return est;
}

// envelope/structure scale of the symbol D in k
double k_scale(const JelliumParams& jp) {
  double s = std::max(1.0, std::pow(jp.constant_coef() / jp.params.c_w, 0.25));
  return std::max(s, std::sqrt(jp.quadratic_coef() / jp.params.c_w));
}

double g_profile(const JelliumParams& jp, double r) {
  const double pref = std::pow(2.0 * M_PI, -1.5) * 4.0 * M_PI * jp.alpha;
  auto phi = [&](double t) { return pref * t / jp.denom(t * t); };
  double integral = osc_sin_integral(phi, r, k_scale(jp));
  return std::sqrt(2.0 / M_PI) * integral / r;
}

double h_profile(const JelliumParams& jp, double r) {
  // t^3/D = (1/(c_w t)) (1 - (B t^2 + A)/D); the 1/(c_w t) part integrates
  // to pi/(2 c_w) against sin(r t)
  const double cw = jp.params.c_w;
  const double B = jp.quadratic_coef(), A = jp.constant_coef();
  const double pref = std::pow(2.0 * M_PI, -1.5);
  auto psi = [&](double t) { return pref * (B * t * t + A) / (cw * t * jp.denom(t * t)); };
  double integral = pref * M_PI / (2.0 * cw) - osc_sin_integral(psi, r, k_scale(jp));
  return std::sqrt(2.0 / M_PI) * integral / r;
}

// spatial decay rate: min |Im sqrt(z)| over roots z of c_w z^2 + B z + A
double x_decay_rate(const JelliumParams& jp) {
  const double cw = jp.params.c_w;
  std::complex<double> B(jp.quadratic_coef(), 0.0), A(jp.constant_coef(), 0.0);
  std::complex<double> disc = std::sqrt(B * B - 4.0 * cw * A);
  std::complex<double> z1 = (-B + disc) / (2.0 * cw);
  std::complex<double> z2 = (-B - disc) / (2.0 * cw);
  double d1 = std::fabs(std::sqrt(z1).imag());
  double d2 = std::fabs(std::sqrt(z2).imag());
  return std::max(1e-6, std::min(d1, d2));
}

} // namespace

KernelProfile kernel_realspace(const JelliumParams& jp, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("kernel_realspace: requires r > 0");
  return {g_profile(jp, r), h_profile(jp, r)};
}

double linear_screening_check(const JelliumParams& jp) {
  static thread_local std::vector<double> gx, gw;
  if (gx.empty()) gauss_legendre(kGlOrder, gx, gw);
  const double kx = x_decay_rate(jp);
  const double R = std::min(300.0, std::max(15.0, 35.0 / kx));
  const double width = std::min(0.5, 0.4 / kx);
  const long panels = long(std::ceil(R / width));
  double acc = 0.0;
  for (long p = 0; p < panels; ++p) {
    double a = p * (R / panels), b = a + R / panels;
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < kGlOrder; ++i) {
      double r = mid + half * gx[i];
      s += gw[i] * r * r * g_profile(jp, r);
    }
    acc += s * half;
  }
  double integral = 4.0 * M_PI * acc;
  return std::fabs(2.0 * jp.alpha * integral - 1.0);
}

namespace {

struct ModeTables {
  std::vector<double> mg, mh, wc;
};

ModeTables build_tables(const JelliumParams& jp, const Lattice& lat, ZeroMode mode) {
  ModeTables t;
  const std::size_t n3 = lat.num_points();
  t.mg.resize(n3);
  t.mh.resize(n3);
  t.wc.resize(n3);
  const int n = lat.n_axis();
  const double dk2 = lat.dk() * lat.dk();
  const double B = jp.quadratic_coef();
  double w0 = 0.0, mg0, mh0;
  if (mode == ZeroMode::analytic) {
    mg0 = 1.0 / (2.0 * jp.alpha); // (2 pi)^{3/2} g_hat(0)
    mh0 = 0.0;
  } else {
    w0 = PeriodicKernel::build(lat).weight0();
    double den = B + 2.0 * jp.alpha * jp.alpha * w0;
    mg0 = jp.alpha * w0 / den;
    mh0 = 1.0 / den;
  }
  std::size_t idx = 0;
  for (int ix = 0; ix < n; ++ix) {
    double mx = double(signed_mode(ix, n));
    for (int iy = 0; iy < n; ++iy) {
      double my = double(signed_mode(iy, n));
      for (int iz = 0; iz < n; ++iz, ++idx) {
        double mz = double(signed_mode(iz, n));
        double k2 = dk2 * (mx * mx + my * my + mz * mz);
        if (k2 == 0.0) {
          t.mg[idx] = mg0;
          t.mh[idx] = mh0;
          t.wc[idx] = w0;
        } else {
          double D = jp.denom(k2);
          t.mg[idx] = 4.0 * M_PI * jp.alpha / D;
          t.mh[idx] = k2 / D;
          t.wc[idx] = 4.0 * M_PI / k2;
        }
      }
    }
  }
  return t;
}

GridFunction apply_table(const std::vector<double>& m, const GridFunction& f) {
  SpectralField c = to_fourier(f);
  for (std::size_t i = 0; i < c.c.size(); ++i) c.c[i] *= m[i];
  return from_fourier(c);
}

} // namespace

GridFunction jellium_linear_response(const JelliumParams& jp, const GridFunction& f,
                                     ZeroMode mode) {
  ModeTables t = build_tables(jp, f.lat, mode);
  return apply_table(t.mg, f);
}

JelliumResult jellium_solve(const JelliumParams& jp, const GridFunction& nu,
                            const SolverConfig& cfg, ZeroMode mode) {
  const Lattice& lat = nu.lat;
  ModeTables tab = build_tables(jp, lat, mode);
  const double alpha = jp.alpha;
  const double ctf = jp.params.c_tf;
  const double a73 = std::pow(alpha, 7.0 / 3.0);
  const double a43 = std::pow(alpha, 4.0 / 3.0);
  const double tol =
      cfg.grad_tol > 0.0 ? cfg.grad_tol : 1e-8 * std::sqrt(double(lat.num_points()));

  auto fixed_point_map = [&](const GridFunction& v) {
    GridFunction lin(lat), rho_t(lat);
    for (std::size_t i = 0; i < v.v.size(); ++i) {
      double t = v.v[i];
      lin.v[i] = nu.v[i] - t * t;
      rho_t.v[i] = nu.v[i] - 2.0 * alpha * t - t * t;
    }
    GridFunction pot = apply_table(tab.wc, rho_t);
    GridFunction kappa(lat);
    for (std::size_t i = 0; i < v.v.size(); ++i) {
      double t = v.v[i];
      double rem = pow73(alpha + t) - a73 - (7.0 / 3.0) * a43 * t;
      kappa.v[i] = -(5.0 / 3.0) * ctf * rem + pot.v[i] * t;
    }
    SpectralField ca = to_fourier(lin);
    SpectralField ck = to_fourier(kappa);
    for (std::size_t i = 0; i < ca.c.size(); ++i)
      ca.c[i] = tab.mg[i] * ca.c[i] + tab.mh[i] * ck.c[i];
    return from_fourier(ca);
  };

  JelliumResult res;
  GridFunction v = apply_table(tab.mg, nu); // linear-response start
  GridFunction F = fixed_point_map(v);
  GridFunction r = F;
  axpy(-1.0, v, r);
  double rn = l2_norm(r);
  double theta = 0.5;
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    if (rn <= tol) {
      res.converged = true;
      break;
    }
    GridFunction vt = v;
    axpy(theta, r, vt);
    GridFunction Ft = fixed_point_map(vt);
    GridFunction rt = Ft;
    axpy(-1.0, vt, rt);
    double rtn = l2_norm(rt);
    if (rtn < rn) {
      v = std::move(vt);
      F = std::move(Ft);
      r = std::move(rt);
      rn = rtn;
      theta = std::min(theta * 1.2, 1.0);
    } else {
      theta *= 0.5;
      if (theta < 1e-8) break;
    }
  }
  res.iters = it;
  res.residual = rn;
  GridFunction scr(lat);
  for (std::size_t i = 0; i < v.v.size(); ++i)
    scr.v[i] = nu.v[i] - 2.0 * alpha * v.v[i] - v.v[i] * v.v[i];
  res.screening = integrate(scr);
  res.v = std::move(v);
  return res;
}

} // namespace tfw
