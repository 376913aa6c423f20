// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "tfw/experiment.hpp"
#include "tfw/io.hpp"

using namespace tfw;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("tfw_test_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

ExperimentConfig small_scan_config() {
  ExperimentConfig cfg;
  cfg.mode = ExperimentMode::thermo_scan;
  cfg.a = 2.0;
  cfg.n_per_cell = 8;
  cfg.model.periodic.push_back({2.0, {0.0, 0.0, 0.0}, 0.35});
  cfg.model.defect.push_back({0.3, {0.0, 0.0, 0.0}, 0.25});
  cfg.q_list = {0.2};
  cfg.l_list = {1};
  return cfg;
}

ExperimentConfig small_jellium_config() {
  ExperimentConfig cfg;
  cfg.mode = ExperimentMode::jellium;
  cfg.a = 6.0;
  cfg.n_per_cell = 8;
  cfg.alpha = 0.8;
  cfg.model.defect.push_back({1.0, {0.0, 0.0, 0.0}, 0.6});
  cfg.epsilon_list = {1e-1, 1e-2};
  return cfg;
}

} // namespace

TEST_CASE("validate mode passes and writes a complete manifest") {
  ExperimentConfig cfg;
  cfg.mode = ExperimentMode::validate;
  cfg.output_dir = fresh_dir("validate").string();
  RunReport rep = run_experiment(cfg);
  CHECK(rep.exit_code == 0);
  CHECK(rep.failures.empty());
  REQUIRE(rep.checks.size() >= 10);
  for (const CheckResult& c : rep.checks) {
    INFO("check ", c.name, " value ", c.value, " bound ", c.bound);
    CHECK(c.passed);
  }
  CHECK(fs::exists(rep.manifest_path));
  CHECK(fs::exists(rep.output_dir / "validate.csv"));

  // manifest checksum matches the bytes on disk
  std::string manifest = read_text_file(rep.manifest_path);
  std::string csv = read_text_file(rep.output_dir / "validate.csv");
  CHECK(manifest.find("\"validate.csv\": \"" + checksum_hex(csv) + "\"") != std::string::npos);
  CHECK(manifest.find("\"tool\": \"tfw\"") != std::string::npos);
  CHECK(manifest.find("\"mode\": \"validate\"") != std::string::npos);
  fs::remove_all(rep.output_dir);
}

TEST_CASE("identical configs produce byte-identical outputs") {
  SUBCASE("thermo-scan") {
    ExperimentConfig cfg = small_scan_config();
    fs::path d1 = fresh_dir("det_scan_1"), d2 = fresh_dir("det_scan_2");
    cfg.output_dir = d1.string();
    RunReport r1 = run_experiment(cfg);
    cfg.output_dir = d2.string();
    RunReport r2 = run_experiment(cfg);
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    CHECK(read_text_file(d1 / "scan.csv") == read_text_file(d2 / "scan.csv"));
    fs::remove_all(d1);
    fs::remove_all(d2);
  }
  SUBCASE("jellium") {
    ExperimentConfig cfg = small_jellium_config();
    fs::path d1 = fresh_dir("det_jel_1"), d2 = fresh_dir("det_jel_2");
    cfg.output_dir = d1.string();
    RunReport r1 = run_experiment(cfg);
    cfg.output_dir = d2.string();
    RunReport r2 = run_experiment(cfg);
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    for (const char* name : {"kernel.csv", "ladder.csv", "v.raw"})
      CHECK(read_text_file(d1 / name) == read_text_file(d2 / name));
    fs::remove_all(d1);
    fs::remove_all(d2);
  }
}

TEST_CASE("TFW_OUTPUT_DIR overrides the configured output directory") {
  ExperimentConfig cfg;
  cfg.mode = ExperimentMode::perfect;
  cfg.a = 2.0;
  cfg.n_per_cell = 8;
  cfg.model.periodic.push_back({2.0, {0.0, 0.0, 0.0}, 0.35});
  fs::path configured = fresh_dir("env_configured");
  fs::path forced = fresh_dir("env_forced");
  cfg.output_dir = configured.string();
  REQUIRE(setenv("TFW_OUTPUT_DIR", forced.string().c_str(), 1) == 0);
  RunReport rep = run_experiment(cfg);
  REQUIRE(unsetenv("TFW_OUTPUT_DIR") == 0);
  CHECK(rep.exit_code == 0);
  CHECK(rep.output_dir == forced);
  CHECK(fs::exists(forced / "host.csv"));
  CHECK(fs::exists(forced / "u0.raw"));
  CHECK(fs::exists(forced / "manifest.json"));
  CHECK(!fs::exists(configured / "host.csv"));
  fs::remove_all(forced);
  fs::remove_all(configured);
}

TEST_CASE("a failed run still writes the manifest and reports exit code 1") {
  ExperimentConfig cfg;
  cfg.mode = ExperimentMode::perfect;
  cfg.a = 2.0;
  cfg.n_per_cell = 8;
  cfg.model.periodic.push_back({2.0, {0.0, 0.0, 0.0}, 0.35});
  cfg.solver.max_iters = 1;
  cfg.solver.grad_tol = 1e-300; // unreachable in one iteration
  cfg.output_dir = fresh_dir("failure").string();
  RunReport rep = run_experiment(cfg);
  CHECK(rep.exit_code == 1);
  REQUIRE(!rep.failures.empty());
  CHECK(rep.failures.front().find("converge") != std::string::npos);
  REQUIRE(fs::exists(rep.manifest_path));
  std::string manifest = read_text_file(rep.manifest_path);
  CHECK(manifest.find("\"exit_code\": 1") != std::string::npos);
  CHECK(manifest.find("converge") != std::string::npos);
  fs::remove_all(rep.output_dir);
}

TEST_CASE("scan with no defect charge reports exact zeros") {
  ExperimentConfig cfg = small_scan_config();
  cfg.model.defect.clear();
  cfg.q_list = {0.0};
  cfg.l_list = {1, 2};
  cfg.output_dir = fresh_dir("zero_defect").string();
  RunReport rep = run_experiment(cfg);
  REQUIRE(rep.exit_code == 0);

  auto rows = parse_csv(read_text_file(rep.output_dir / "scan.csv"));
  REQUIRE(rows.size() >= 2);
  REQUIRE(rows[0] == std::vector<std::string>{"L", "path", "q", "energy", "multiplier",
                                              "screening_integral", "local_distance", "iters",
                                              "converged"});
  // 2 supercell sizes x (1 constrained q + 1 free) = 4 data rows
  CHECK(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    REQUIRE(r.size() == 9);
    CHECK(std::fabs(std::stod(r[3])) < 1e-10); // energy
    CHECK(std::fabs(std::stod(r[4])) < 1e-8);  // multiplier
    CHECK(std::fabs(std::stod(r[5])) < 1e-10); // screening integral
    CHECK(std::fabs(std::stod(r[6])) < 1e-12); // local distance
    CHECK(r[8] == "1");                        // converged
  }
  fs::remove_all(rep.output_dir);
}
