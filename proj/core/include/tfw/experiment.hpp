// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tfw/config.hpp"

namespace tfw {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0; // measured quantity
  double bound = 0.0; // tolerance it is held to
};

struct RunReport {
  int exit_code = 0; // 0 pass, 1 solver/check failure, 2 config error
  std::vector<std::string> failures;
  std::vector<CheckResult> checks; // populated by mode=validate
  std::filesystem::path output_dir;
  std::filesystem::path manifest_path;
};

// Executes the configured experiment and writes its CSV outputs plus
// manifest.json into the output directory (the TFW_OUTPUT_DIR environment
// variable overrides the configured path). The manifest records the canonical
// config, versions, wall time, output checksums and any failures; it is
// written even when the run fails.
RunReport run_experiment(const ExperimentConfig& cfg);

} // namespace tfw
