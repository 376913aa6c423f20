// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "doctest.h"

#include <string>

#include "tfw/config.hpp"

using namespace tfw;

namespace {

bool throws_with(const std::string& text, const std::string& needle) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

} // namespace

TEST_CASE("minimal jellium config parses with documented defaults") {
  ExperimentConfig c = parse_config("[run]\n"
                                    "mode = jellium\n"
                                    "[lattice]\n"
                                    "a = 8\n"
                                    "[jellium]\n"
                                    "alpha = 0.5\n"
                                    "[model]\n"
                                    "defect = 1 0.5 0 0 0\n");
  CHECK(c.mode == ExperimentMode::jellium);
  CHECK(c.alpha == 0.5);
  CHECK(c.a == 8.0);
  CHECK(c.n_per_cell == 16);
  CHECK(c.box == 1);
  CHECK(c.threads == 1);
  CHECK(c.epsilon_list == std::vector<double>{1e-1, 1e-2, 1e-3});
  CHECK(c.q_list == std::vector<double>{0.0});
  CHECK(c.l_list == std::vector<int>{1});
  CHECK(c.zero_mode == ZeroMode::analytic);
  REQUIRE(c.model.defect.size() == 1);
  CHECK(c.model.defect[0].charge == 1.0);
  CHECK(c.model.defect[0].width == 0.5);
}

TEST_CASE("comments, blank lines and bracketed lists are accepted") {
  ExperimentConfig c = parse_config("# header comment\n"
                                    "[run]\n"
                                    "mode = thermo-scan   # trailing comment\n"
                                    "\n"
                                    "[model]\n"
                                    "nucleus = 2 0.35 0 0 0\n"
                                    "[scan]\n"
                                    "q_list = [-0.5, 0, 0.5]\n"
                                    "L_list = [1, 2]\n");
  CHECK(c.mode == ExperimentMode::thermo_scan);
  CHECK(c.q_list == std::vector<double>{-0.5, 0.0, 0.5});
  CHECK(c.l_list == std::vector<int>{1, 2});
}

TEST_CASE("invalid supercell sizes name the offending key") {
  std::string base = "[run]\nmode = thermo-scan\n[model]\nnucleus = 2 0.35 0 0 0\n";
  CHECK(throws_with(base + "[scan]\nL_list = [0]\n", "L must be >= 1"));
  CHECK(throws_with(base + "[scan]\nL_list = [0]\n", "scan.L_list"));
  CHECK(throws_with(base + "[lattice]\nbox = 0\n", "L must be >= 1"));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(throws_with("[run]\nmode = jellium\nbogus_key = 1\n", "line 3"));
  CHECK(throws_with("[run]\nmode = jellium\nbogus_key = 1\n", "unknown key"));
  CHECK(throws_with("[run]\nmode = jellium\n[nope]\n", "unknown section"));
  CHECK(throws_with("[run]\nmode = jellium\njust words\n", "expected key = value"));
  CHECK(throws_with("[run]\nmode = jellium\n[lattice]\na = fast\n", "expected a number"));
  CHECK(throws_with("[run]\nmode = jellium\n[model]\ndefect = 1 0.5 0\n", "5 numbers"));
  CHECK(throws_with("mode = jellium\n", "outside any section"));
  CHECK(throws_with("[run]\nmode = warp\n", "unknown mode"));
  CHECK(throws_with("[lattice]\na = 2\n", "run.mode"));
}

TEST_CASE("validation names the failing key") {
  CHECK(throws_with("[run]\nmode = jellium\n[lattice]\na = -2\n", "lattice.a"));
  CHECK(throws_with("[run]\nmode = jellium\n[lattice]\nn_per_cell = 7\n",
                    "lattice.n_per_cell"));
  CHECK(throws_with("[run]\nmode = jellium\n[jellium]\nalpha = 0\n", "jellium.alpha"));
  CHECK(throws_with("[run]\nmode = jellium\n[model]\ndefect = 1 -0.5 0 0 0\n",
                    "model.defect"));
  CHECK(throws_with("[run]\nmode = perfect\n", "cell charge"));
  CHECK(throws_with("[run]\nmode = jellium\n[tfw]\nc_tf = 0\n", "tfw.c_tf"));
  CHECK(throws_with("[run]\nmode = jellium\n[solver]\narmijo = 1\n", "solver.armijo"));
}

TEST_CASE("canonical text round-trips to an equal config") {
  ExperimentConfig c = parse_config("[run]\n"
                                    "mode = thermo-scan\n"
                                    "output_dir = out dir with spaces\n"
                                    "threads = 3\n"
                                    "[lattice]\n"
                                    "a = 2.25\n"
                                    "n_per_cell = 12\n"
                                    "box = 2\n"
                                    "[model]\n"
                                    "uniform = 0.125\n"
                                    "nucleus = 2 0.35 0.1 -0.2 0.3\n"
                                    "nucleus = 1 0.4 0 0 0\n"
                                    "defect = -0.5 0.25 0.3 0 0\n"
                                    "[tfw]\n"
                                    "c_w = 1.5\n"
                                    "c_tf = 31.25\n"
                                    "[solver]\n"
                                    "max_iters = 777\n"
                                    "grad_tol = 1e-9\n"
                                    "seed = 12345\n"
                                    "trace = 1\n"
                                    "armijo = 0.0001\n"
                                    "max_backtracks = 31\n"
                                    "[scan]\n"
                                    "q_list = -0.5 0.5\n"
                                    "L_list = 1 3\n"
                                    "[jellium]\n"
                                    "alpha = 0.875\n"
                                    "epsilon_list = 0.1 0.003\n"
                                    "zero_mode = supercell\n");
  std::string canon = canonical_config_text(c);
  ExperimentConfig c2 = parse_config(canon);
  CHECK(c2 == c);
  // emitting again is a fixed point
  CHECK(canonical_config_text(c2) == canon);
}

TEST_CASE("mode names map one-to-one") {
  CHECK(mode_name(ExperimentMode::perfect) == "perfect");
  CHECK(mode_name(ExperimentMode::defect) == "defect");
  CHECK(mode_name(ExperimentMode::thermo_scan) == "thermo-scan");
  CHECK(mode_name(ExperimentMode::jellium) == "jellium");
  CHECK(mode_name(ExperimentMode::validate) == "validate");
}
