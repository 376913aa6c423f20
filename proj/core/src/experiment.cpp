// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "tfw/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"

#include "tfw/crystal.hpp"
#include "tfw/io.hpp"
#include "tfw/jellium.hpp"

namespace tfw {
namespace {

using nlohmann::json;

#ifndef TFW_VERSION
#define TFW_VERSION "0.0.0"
#endif

struct OutputSink {
  std::filesystem::path dir;
  std::map<std::string, std::string> checksums;

  void write(const std::string& name, const std::string& content) {
    write_text_file(dir / name, content);
    checksums[name] = checksum_hex(content);
  }
  void write_raw(const std::string& name, const GridFunction& f) {
    std::vector<unsigned char> bytes = field_raw(f);
    std::string_view view(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    write_text_file(dir / name, std::string(view));
    checksums[name] = checksum_hex(view);
  }
};

std::string bool_cell(bool b) { return b ? "1" : "0"; }

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  double den = n * sxx - sx * sx;
  return den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

void run_perfect(const ExperimentConfig& cfg, OutputSink& out, json& extra,
                 std::vector<std::string>& failures) {
  Lattice lat = build_grid(cfg.a, 1, cfg.n_per_cell);
  PerfectCrystalState host = solve_perfect(cfg.tfw, cfg.model, lat, cfg.solver);
  std::string csv = "m,M,Q,energy,eps_f\n";
  csv += csv_join({format_float(host.m), format_float(host.M), format_float(host.Q),
                   format_float(host.energy), format_float(host.eps_f)});
  out.write("host.csv", csv);
  out.write("u0.csv", field_csv(host.u0));
  out.write_raw("u0.raw", host.u0);
  extra["m"] = host.m;
  extra["M"] = host.M;
  extra["Q"] = host.Q;
  extra["eps_f"] = host.eps_f;
  extra["energy"] = host.energy;
  if (!(host.m > 0.0)) failures.push_back("host ground state is not strictly positive");
}

void run_defect(const ExperimentConfig& cfg, OutputSink& out, json& extra,
                std::vector<std::string>& failures) {
  Lattice lat1 = build_grid(cfg.a, 1, cfg.n_per_cell);
  PerfectCrystalState host1 = solve_perfect(cfg.tfw, cfg.model, lat1, cfg.solver);
  PerfectCrystalState host = cfg.box == 1 ? host1 : host1.replicate(cfg.box);
  PeriodicKernel kernel = PeriodicKernel::build(host.lat);
  GridFunction nu = restrict_to_cell(cfg.model, host.lat);
  double q = cfg.q_list.front();

  SolveResult con = minimize_defect_constrained(host, kernel, nu, q, cfg.solver);
  SolveResult fre = minimize_defect_free(host, kernel, nu, cfg.solver);
  DefectDiagnostics dc = defect_diagnostics(host, nu, con.v);
  DefectDiagnostics df = defect_diagnostics(host, nu, fre.v);

  std::string csv = "path,q_target,q_actual,energy,multiplier,screening,residual,iters,converged\n";
  csv += csv_join({"constrained", format_float(q), format_float(dc.q_actual),
                   format_float(con.energy), format_float(con.multiplier),
                   format_float(dc.screening), format_float(con.residual),
                   std::to_string(con.iters), bool_cell(con.converged)});
  csv += csv_join({"free", format_float(0.0), format_float(df.q_actual),
                   format_float(fre.energy), format_float(fre.multiplier),
                   format_float(df.screening), format_float(fre.residual),
                   std::to_string(fre.iters), bool_cell(fre.converged)});
  out.write("defect.csv", csv);
  out.write_raw("v.raw", con.v);
  out.write_raw("v_free.raw", fre.v);

  extra["shell_radii"] = dc.shell_radii;
  extra["constrained"] = {{"q_actual", dc.q_actual}, {"screening", dc.screening},
                          {"energy", con.energy},    {"multiplier", con.multiplier},
                          {"shell_avg", dc.shell_avg}};
  extra["free"] = {{"q_actual", df.q_actual}, {"screening", df.screening},
                   {"energy", fre.energy},    {"multiplier", fre.multiplier},
                   {"shell_avg", df.shell_avg}};
  if (!con.converged) failures.push_back("constrained defect solve did not converge");
  if (!fre.converged) failures.push_back("free defect solve did not converge");
}

void run_scan_mode(const ExperimentConfig& cfg, OutputSink& out, json& extra,
                   std::vector<std::string>& failures) {
  Lattice lat1 = build_grid(cfg.a, 1, cfg.n_per_cell);
  ThermoScanReport rep = run_thermo_scan(cfg.tfw, cfg.model, lat1, cfg.l_list, cfg.q_list,
                                         /*include_free=*/true, cfg.solver, cfg.threads);
  std::string csv =
      "L,path,q,energy,multiplier,screening_integral,local_distance,iters,converged\n";
  for (const ScanRow& r : rep.rows) {
    csv += csv_join({std::to_string(r.l), r.constrained ? "constrained" : "free",
                     format_float(r.constrained ? r.q : r.diag.q_actual),
                     format_float(r.energy), format_float(r.multiplier),
                     format_float(r.screening), format_float(r.local_distance),
                     std::to_string(r.iters), bool_cell(r.converged)});
    if (!r.converged)
      failures.push_back("scan cell L=" + std::to_string(r.l) +
                         (r.constrained ? " q=" + format_float(r.q) : " free") +
                         " did not converge");
  }
  out.write("scan.csv", csv);
  extra["rows"] = rep.rows.size();
  extra["host_m"] = rep.host1.m;
  extra["host_eps_f"] = rep.host1.eps_f;
}

void run_jellium(const ExperimentConfig& cfg, OutputSink& out, json& extra,
                 std::vector<std::string>& failures) {
  Lattice lat = build_grid(cfg.a, cfg.box, cfg.n_per_cell);
  JelliumParams jp{cfg.alpha, cfg.tfw};
  GridFunction nu = restrict_to_cell(cfg.model.defect, lat);

  std::string kcsv = "r,g,h\n";
  const int n_radii = 32;
  for (int j = 1; j <= n_radii; ++j) {
    double r = 0.5 * lat.edge() * double(j) / double(n_radii);
    KernelProfile prof = kernel_realspace(jp, r);
    kcsv += csv_join({format_float(r), format_float(prof.g), format_float(prof.h)});
  }
  out.write("kernel.csv", kcsv);

  std::string lcsv = "epsilon,linear_residual\n";
  std::vector<double> eps = cfg.epsilon_list, res;
  // the deviation from linear response scales like epsilon^2, so the ladder
  // solves need a tolerance well below it or small-epsilon rows read 0
  SolverConfig lcfg = cfg.solver;
  if (lcfg.grad_tol <= 0.0) lcfg.grad_tol = 1e-13 * std::sqrt(double(lat.num_points()));
  for (double e : eps) {
    GridFunction nue = nu;
    scale(nue, e);
    JelliumResult jr = jellium_solve(jp, nue, lcfg, cfg.zero_mode);
    GridFunction lin = jellium_linear_response(jp, nue, cfg.zero_mode);
    axpy(-1.0, jr.v, lin);
    res.push_back(l2_norm(lin));
    lcsv += csv_join({format_float(e), format_float(res.back())});
    if (!jr.converged)
      failures.push_back("jellium solve at epsilon=" + format_float(e) + " did not converge");
  }
  out.write("ladder.csv", lcsv);
  extra["slope"] = fit_loglog_slope(eps, res);

  JelliumResult full = jellium_solve(jp, nu, cfg.solver, cfg.zero_mode);
  out.write_raw("v.raw", full.v);
  extra["screening"] = full.screening;
  extra["residual"] = full.residual;
  extra["iters"] = full.iters;
  extra["converged"] = full.converged;
  if (!full.converged) failures.push_back("jellium solve did not converge");
}

void run_validate(const ExperimentConfig& cfg, OutputSink& out, json& extra,
                  std::vector<std::string>& failures, std::vector<CheckResult>& checks) {
  auto record = [&](const std::string& name, double value, double bound) {
    bool ok = value <= bound;
    checks.push_back({name, ok, value, bound});
    if (!ok) failures.push_back("check failed: " + name);
  };

  { // analysis/synthesis pair: Parseval and round trip
    Lattice lat = build_grid(2.0, 1, 16);
    GridFunction f = random_field(lat, 11, -1.0, 1.0);
    SpectralField c = to_fourier(f);
    double lhs = inner(f, f), rhs = 0.0;
    for (const std::complex<double>& z : c.c) rhs += std::norm(z);
    record("parseval", std::fabs(lhs - rhs) / lhs, 1e-12);
    GridFunction back = from_fourier(c);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < f.v.size(); ++i) {
      num = std::max(num, std::fabs(back.v[i] - f.v[i]));
      den = std::max(den, std::fabs(f.v[i]));
    }
    record("fourier_round_trip", num / den, 1e-12);
  }

  { // spectral convolution against the direct double sum
    Lattice lat = build_grid(1.5, 1, 8);
    GridFunction f = random_field(lat, 21, -1.0, 1.0);
    GridFunction g = random_field(lat, 22, -1.0, 1.0);
    GridFunction fast = periodic_convolve(f, g);
    int n = lat.n_axis();
    double h3 = lat.h() * lat.h() * lat.h();
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
    record("convolution_direct", err / ref, 1e-10);
  }

  { // Coulomb kernel scaling between boxes of edge a and 2a
    Lattice lat1 = build_grid(1.7, 1, 8);
    Lattice lat2 = build_grid(3.4, 1, 8);
    PeriodicKernel k1 = PeriodicKernel::build(lat1);
    PeriodicKernel k2 = PeriodicKernel::build(lat2);
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < k1.realspace().v.size(); ++i) {
      err = std::max(err, std::fabs(k2.realspace().v[i] - 0.5 * k1.realspace().v[i]));
      ref = std::max(ref, std::fabs(k1.realspace().v[i]));
    }
    record("kernel_scaling", err / ref, 1e-12);
    record("kernel_mean_scaling", std::fabs(k2.g1() - 0.5 * k1.g1()) / k1.g1(), 1e-12);
  }

  { // -Lap W = 4 pi (rho - mean), zero-mean W
    Lattice lat = build_grid(2.0, 1, 16);
    GridFunction rho = random_field(lat, 31, -1.0, 1.0);
    GridFunction W = poisson_periodic(rho);
    SpectralField cr = to_fourier(rho), cw = to_fourier(W);
    int n = lat.n_axis();
    double err = std::abs(cw.c[0]);
    double ref = 0.0;
    for (std::size_t i = 1; i < cw.c.size(); ++i) {
      double k2 = k_norm_sq(lat, k_at(lat, i));
      err = std::max(err, std::abs(k2 * cw.c[i] - 4.0 * M_PI * cr.c[i]));
      ref = std::max(ref, 4.0 * M_PI * std::abs(cr.c[i]));
    }
    (void)n;
    record("poisson_identity", err / ref, 1e-12);
  }

  { // finite-difference consistency of both gradients
    Lattice lat = build_grid(2.0, 1, 12);
    TfwParams p{1.0, 1.0};
    NuclearModel model;
    model.periodic.push_back({2.0, {0.0, 0.0, 0.0}, 0.35});
    GridFunction rho_nuc = periodic_density(model, lat);
    PeriodicKernel kernel = PeriodicKernel::build(lat);
    GridFunction w = random_field(lat, 41, 0.5, 1.5);
    GridFunction dir = random_field(lat, 42, -1.0, 1.0);
    double t = 1e-5;
    GridFunction wp = w, wm = w;
    axpy(t, dir, wp);
    axpy(-t, dir, wm);
    double fd =
        (tfw_energy(p, kernel, rho_nuc, wp) - tfw_energy(p, kernel, rho_nuc, wm)) / (2.0 * t);
    double an = inner(tfw_gradient(p, kernel, rho_nuc, w), dir);
    record("gradient_energy", std::fabs(fd - an) / std::fabs(an), 1e-6);

    PerfectCrystalState host = PerfectCrystalState::homogeneous(0.9, lat, p);
    GridFunction nu = restrict_to_cell({{0.5, {0.1, -0.2, 0.3}, 0.3}}, lat);
    GridFunction v = random_field(lat, 43, -0.1, 0.1);
    GridFunction vp = v, vm = v;
    axpy(t, dir, vp);
    axpy(-t, dir, vm);
    double fdd =
        (defect_energy(host, kernel, nu, vp) - defect_energy(host, kernel, nu, vm)) / (2.0 * t);
    double and_ = inner(defect_gradient(host, kernel, nu, v), dir);
    record("gradient_defect", std::fabs(fdd - and_) / std::fabs(and_), 1e-6);
  }

  { // two-sided Taylor gap sampling
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (double gamma : {2.0, 10.0 / 3.0}) {
      ConvexityBound cb(0.2, 5.0, gamma);
      long violations = 0;
      for (int i = 0; i < 20000; ++i) {
        double a = 0.2 + (5.0 - 0.2) * u01(rng);
        double b;
        if (i % 2 == 0) b = -a * (1.0 - 1e-9) * u01(rng);
        else {
          double t = u01(rng);
          b = 100.0 * t * t * t;
        }
        if (std::fabs(b) < 1e-3) continue;
        ConvexityBound::Gap gp = cb.gap(a, b);
        double slack = 1e-10 * (1.0 + std::fabs(gp.middle));
        if (gp.lower > gp.middle + slack) ++violations;
        if (gp.middle > gp.upper + slack) ++violations;
      }
      record("convexity_gap_gamma_" + std::to_string(int(std::lround(gamma * 3))) + "_thirds",
             double(violations), 0.0);
    }
  }

  { // response kernel peak location and total screening
    JelliumParams jp{cfg.alpha, cfg.tfw};
    double kstar = std::pow(jp.constant_coef() / jp.params.c_w, 0.25);
    double hs = kernel_h_hat(jp, kstar);
    double hp = kernel_h_hat(jp, kstar * (1.0 + 1e-3));
    double hm = kernel_h_hat(jp, kstar * (1.0 - 1e-3));
    record("response_peak", std::max(hp - hs, hm - hs), 0.0);
    record("kernel_screening", linear_screening_check(jp), 1e-8);
  }

  std::string csv = "check,value,bound,passed\n";
  json jchecks = json::array();
  for (const CheckResult& c : checks) {
    csv += csv_join({c.name, format_float(c.value), format_float(c.bound), bool_cell(c.passed)});
    jchecks.push_back(
        {{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"passed", c.passed}});
  }
  out.write("validate.csv", csv);
  extra["checks"] = jchecks;
}

} // namespace

RunReport run_experiment(const ExperimentConfig& cfg) {
  RunReport rep;
  auto t0 = std::chrono::steady_clock::now();

  std::filesystem::path dir = cfg.output_dir;
  if (const char* env = std::getenv("TFW_OUTPUT_DIR"); env && *env) dir = env;
  rep.output_dir = dir;

  OutputSink out;
  out.dir = dir;
  json extra = json::object();

  try {
    std::filesystem::create_directories(dir);
    switch (cfg.mode) {
    case ExperimentMode::perfect: run_perfect(cfg, out, extra, rep.failures); break;
    case ExperimentMode::defect: run_defect(cfg, out, extra, rep.failures); break;
    case ExperimentMode::thermo_scan: run_scan_mode(cfg, out, extra, rep.failures); break;
    case ExperimentMode::jellium: run_jellium(cfg, out, extra, rep.failures); break;
    case ExperimentMode::validate: run_validate(cfg, out, extra, rep.failures, rep.checks); break;
    }
  } catch (const ConfigError& e) {
    rep.failures.push_back(e.what());
    rep.exit_code = 2;
  } catch (const std::exception& e) {
    rep.failures.push_back(e.what());
  }

  if (rep.exit_code == 0 && !rep.failures.empty()) rep.exit_code = 1;

  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json manifest;
  manifest["tool"] = "tfw";
  manifest["version"] = TFW_VERSION;
  manifest["mode"] = mode_name(cfg.mode);
  manifest["config"] = canonical_config_text(cfg);
  manifest["wall_seconds"] = wall;
  manifest["outputs"] = out.checksums;
  manifest["failures"] = rep.failures;
  manifest["summary"] = extra;
  manifest["exit_code"] = rep.exit_code;

  rep.manifest_path = dir / "manifest.json";
  try {
    write_text_file(rep.manifest_path, manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    rep.failures.push_back(std::string("manifest write failed: ") + e.what());
    if (rep.exit_code == 0) rep.exit_code = 1;
  }
  return rep;
}

} // namespace tfw
