// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include "tfw/functional.hpp"
#include "tfw/jellium.hpp"
#include "tfw/minimize.hpp"
#include "tfw/nuclear_model.hpp"

namespace tfw {

enum class ExperimentMode { perfect, defect, thermo_scan, jellium, validate };

std::string mode_name(ExperimentMode m);

// Parsed and validated experiment description. The on-disk format is an
// INI-style document: `[section]` headers, `key = value` lines, `#` comments.
// See parse_config for the accepted sections and keys.
struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::validate;
  std::string output_dir = "tfw-out";
  int threads = 1;

  double a = 1.0;       // unit cell edge
  int n_per_cell = 16;  // grid points per cell axis, even
  int box = 1;          // supercell multiplier for single-box modes

  NuclearModel model;
  TfwParams tfw;
  SolverConfig solver;

  std::vector<double> q_list; // defect charges for thermo-scan
  std::vector<int> l_list;    // supercell sizes for thermo-scan

  double alpha = 1.0; // homogeneous-host density parameter
  std::vector<double> epsilon_list;
  ZeroMode zero_mode = ZeroMode::analytic;

  bool operator==(const ExperimentConfig& o) const;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses the INI-style document. Unknown sections or keys, malformed values,
// and failed validation all throw ConfigError; parse failures carry the line
// number, validation failures name the offending key.
ExperimentConfig parse_config(const std::string& text);

// Emits a document that parse_config maps back to an equal config.
std::string canonical_config_text(const ExperimentConfig& cfg);

} // namespace tfw
