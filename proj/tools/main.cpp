// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "tfw/experiment.hpp"
#include "tfw/io.hpp"

namespace {

struct ModeEntry {
  const char* name;
  tfw::ExperimentMode mode;
  const char* help;
};

const ModeEntry kModes[] = {
    {"perfect", tfw::ExperimentMode::perfect, "solve the unit-cell host crystal"},
    {"defect", tfw::ExperimentMode::defect, "solve one defect supercell (constrained and free)"},
    {"thermo-scan", tfw::ExperimentMode::thermo_scan,
     "sweep supercell sizes and defect charges"},
    {"jellium", tfw::ExperimentMode::jellium,
     "homogeneous-host kernels, epsilon ladder and fixed-point solve"},
    {"validate", tfw::ExperimentMode::validate, "run the built-in invariant checks"},
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"TFW crystal and defect experiment driver"};
  std::string config_path;
  int threads = 0;
  long long seed = -1;
  app.add_option("--config", config_path, "experiment config file")->required();
  app.add_option("--threads", threads, "override [run] threads");
  app.add_option("--seed", seed, "override [solver] seed");
  for (const ModeEntry& m : kModes) {
    CLI::App* sub = app.add_subcommand(m.name, m.help);
    sub->fallthrough();
  }
  app.require_subcommand(1);
  CLI11_PARSE(app, argc, argv);
  std::string sub_name = app.get_subcommands().front()->get_name();

  tfw::ExperimentConfig cfg;
  try {
    cfg = tfw::parse_config(tfw::read_text_file(config_path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  for (const ModeEntry& m : kModes)
    if (sub_name == m.name) cfg.mode = m.mode;
  if (threads > 0) cfg.threads = threads;
  if (seed >= 0) cfg.solver.seed = static_cast<std::uint64_t>(seed);

  tfw::RunReport rep = tfw::run_experiment(cfg);

  if (!rep.checks.empty()) {
    std::cout << std::left << std::setw(34) << "check" << std::setw(14) << "value"
              << std::setw(14) << "bound"
              << "result\n";
    for (const tfw::CheckResult& c : rep.checks)
      std::cout << std::left << std::setw(34) << c.name << std::setw(14)
                << std::scientific << std::setprecision(3) << c.value << std::setw(14) << c.bound
                << (c.passed ? "pass" : "FAIL") << "\n";
  }
  for (const std::string& f : rep.failures) std::cerr << "failure: " << f << "\n";
  std::cout << "manifest: " << rep.manifest_path.string() << "\n";
  return rep.exit_code;
}
