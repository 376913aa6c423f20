// Copyright (c) 2026 The tfw authors
// SPDX-License-Identifier: MIT
#include "tfw/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "tfw/io.hpp"

namespace tfw {

std::string mode_name(ExperimentMode m) {
  switch (m) {
  case ExperimentMode::perfect: return "perfect";
  case ExperimentMode::defect: return "defect";
  case ExperimentMode::thermo_scan: return "thermo-scan";
  case ExperimentMode::jellium: return "jellium";
  case ExperimentMode::validate: return "validate";
  }
  return "?";
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  return mode == o.mode && output_dir == o.output_dir && threads == o.threads && a == o.a &&
         n_per_cell == o.n_per_cell && box == o.box && model.uniform == o.model.uniform &&
         model.periodic == o.model.periodic && model.defect == o.model.defect &&
         tfw.c_w == o.tfw.c_w && tfw.c_tf == o.tfw.c_tf &&
         solver.max_iters == o.solver.max_iters && solver.grad_tol == o.solver.grad_tol &&
         solver.seed == o.solver.seed && solver.trace == o.solver.trace &&
         solver.armijo == o.solver.armijo && solver.max_backtracks == o.solver.max_backtracks &&
         q_list == o.q_list && l_list == o.l_list && alpha == o.alpha &&
         epsilon_list == o.epsilon_list && zero_mode == o.zero_mode;
}

namespace {

[[noreturn]] void fail_line(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void fail_key(const std::string& key, const std::string& msg) {
  throw ConfigError("config key " + key + ": " + msg);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& tok, int line) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    fail_line(line, "expected a number, got '" + tok + "'");
  return v;
}

long parse_long(const std::string& tok, int line) {
  long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    fail_line(line, "expected an integer, got '" + tok + "'");
  return v;
}

// list values accept optional brackets and commas: "[1, 2]" == "1 2"
std::vector<std::string> split_list(const std::string& value) {
  std::string s = value;
  for (char& c : s)
    if (c == '[' || c == ']' || c == ',') c = ' ';
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

GaussianSite parse_site(const std::string& value, int line, const std::string& key) {
  std::vector<std::string> tok = split_list(value);
  if (tok.size() != 5)
    fail_line(line, key + " needs 5 numbers: charge width cx cy cz");
  GaussianSite s;
  s.charge = parse_double(tok[0], line);
  s.width = parse_double(tok[1], line);
  s.center = {parse_double(tok[2], line), parse_double(tok[3], line), parse_double(tok[4], line)};
  return s;
}

void validate(const ExperimentConfig& c) {
  if (c.threads < 1) fail_key("run.threads", "must be >= 1");
  if (!(c.a > 0.0)) fail_key("lattice.a", "must be > 0");
  if (c.n_per_cell < 4 || c.n_per_cell % 2 != 0)
    fail_key("lattice.n_per_cell", "must be even and >= 4");
  if (c.box < 1) fail_key("lattice.box", "L must be >= 1");
  for (int l : c.l_list)
    if (l < 1) fail_key("scan.L_list", "L must be >= 1");
  if (!(c.tfw.c_w > 0.0)) fail_key("tfw.c_w", "must be > 0");
  if (!(c.tfw.c_tf > 0.0)) fail_key("tfw.c_tf", "must be > 0");
  if (c.solver.max_iters < 1) fail_key("solver.max_iters", "must be >= 1");
  if (c.solver.grad_tol < 0.0) fail_key("solver.grad_tol", "must be >= 0");
  if (!(c.solver.armijo > 0.0 && c.solver.armijo < 1.0))
    fail_key("solver.armijo", "must be in (0, 1)");
  if (c.solver.max_backtracks < 1) fail_key("solver.max_backtracks", "must be >= 1");
  if (!(c.alpha > 0.0)) fail_key("jellium.alpha", "must be > 0");
  for (double e : c.epsilon_list)
    if (!(e > 0.0)) fail_key("jellium.epsilon_list", "entries must be > 0");
  for (const GaussianSite& s : c.model.periodic)
    if (!(s.width > 0.0)) fail_key("model.nucleus", "width must be > 0");
  for (const GaussianSite& s : c.model.defect)
    if (!(s.width > 0.0)) fail_key("model.defect", "width must be > 0");
  bool needs_host = c.mode == ExperimentMode::perfect || c.mode == ExperimentMode::defect ||
                    c.mode == ExperimentMode::thermo_scan;
  if (needs_host && !(c.model.cell_charge(c.a) > 0.0))
    fail_key("model", "total cell charge must be > 0 for this mode");
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  bool saw_mode = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    std::size_t hash = s.find('#');
    if (hash != std::string::npos) s.erase(hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail_line(line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "run" && section != "lattice" && section != "model" && section != "tfw" &&
          section != "solver" && section != "scan" && section != "jellium")
        fail_line(line, "unknown section [" + section + "]");
      continue;
    }
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail_line(line, "expected key = value");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail_line(line, "empty key");
    if (value.empty()) fail_line(line, "empty value for key '" + key + "'");
    if (section.empty()) fail_line(line, "key '" + key + "' outside any section");
    std::string full = section + "." + key;

    if (full == "run.mode") {
      saw_mode = true;
      if (value == "perfect") c.mode = ExperimentMode::perfect;
      else if (value == "defect") c.mode = ExperimentMode::defect;
      else if (value == "thermo-scan") c.mode = ExperimentMode::thermo_scan;
      else if (value == "jellium") c.mode = ExperimentMode::jellium;
      else if (value == "validate") c.mode = ExperimentMode::validate;
      else fail_line(line, "unknown mode '" + value + "'");
    } else if (full == "run.output_dir") {
      c.output_dir = value;
    } else if (full == "run.threads") {
      c.threads = int(parse_long(value, line));
    } else if (full == "lattice.a") {
      c.a = parse_double(value, line);
    } else if (full == "lattice.n_per_cell") {
      c.n_per_cell = int(parse_long(value, line));
    } else if (full == "lattice.box") {
      c.box = int(parse_long(value, line));
    } else if (full == "model.uniform") {
      c.model.uniform = parse_double(value, line);
    } else if (full == "model.nucleus") {
      c.model.periodic.push_back(parse_site(value, line, key));
    } else if (full == "model.defect") {
      c.model.defect.push_back(parse_site(value, line, key));
    } else if (full == "tfw.c_w") {
      c.tfw.c_w = parse_double(value, line);
    } else if (full == "tfw.c_tf") {
      c.tfw.c_tf = parse_double(value, line);
    } else if (full == "solver.max_iters") {
      c.solver.max_iters = int(parse_long(value, line));
    } else if (full == "solver.grad_tol") {
      c.solver.grad_tol = parse_double(value, line);
    } else if (full == "solver.seed") {
      c.solver.seed = std::uint64_t(parse_long(value, line));
    } else if (full == "solver.trace") {
      c.solver.trace = parse_long(value, line) != 0;
    } else if (full == "solver.armijo") {
      c.solver.armijo = parse_double(value, line);
    } else if (full == "solver.max_backtracks") {
      c.solver.max_backtracks = int(parse_long(value, line));
    } else if (full == "scan.q_list") {
      c.q_list.clear();
      for (const std::string& t : split_list(value)) c.q_list.push_back(parse_double(t, line));
    } else if (full == "scan.L_list") {
      c.l_list.clear();
      for (const std::string& t : split_list(value)) c.l_list.push_back(int(parse_long(t, line)));
    } else if (full == "jellium.alpha") {
      c.alpha = parse_double(value, line);
    } else if (full == "jellium.epsilon_list") {
      c.epsilon_list.clear();
      for (const std::string& t : split_list(value))
        c.epsilon_list.push_back(parse_double(t, line));
    } else if (full == "jellium.zero_mode") {
      if (value == "analytic") c.zero_mode = ZeroMode::analytic;
      else if (value == "supercell") c.zero_mode = ZeroMode::supercell;
      else fail_line(line, "zero_mode must be analytic or supercell");
    } else {
      fail_line(line, "unknown key '" + full + "'");
    }
  }
  if (!saw_mode) throw ConfigError("config key run.mode: required");
  if (c.q_list.empty()) c.q_list = {0.0};
  if (c.l_list.empty()) c.l_list = {1};
  if (c.epsilon_list.empty()) c.epsilon_list = {1e-1, 1e-2, 1e-3};
  validate(c);
  return c;
}

std::string canonical_config_text(const ExperimentConfig& c) {
  std::ostringstream out;
  auto f = [](double v) { return format_float(v); };
  out << "[run]\n";
  out << "mode = " << mode_name(c.mode) << "\n";
  out << "output_dir = " << c.output_dir << "\n";
  out << "threads = " << c.threads << "\n";
  out << "[lattice]\n";
  out << "a = " << f(c.a) << "\n";
  out << "n_per_cell = " << c.n_per_cell << "\n";
  out << "box = " << c.box << "\n";
  out << "[model]\n";
  out << "uniform = " << f(c.model.uniform) << "\n";
  for (const GaussianSite& s : c.model.periodic)
    out << "nucleus = " << f(s.charge) << " " << f(s.width) << " " << f(s.center[0]) << " "
        << f(s.center[1]) << " " << f(s.center[2]) << "\n";
  for (const GaussianSite& s : c.model.defect)
    out << "defect = " << f(s.charge) << " " << f(s.width) << " " << f(s.center[0]) << " "
        << f(s.center[1]) << " " << f(s.center[2]) << "\n";
  out << "[tfw]\n";
  out << "c_w = " << f(c.tfw.c_w) << "\n";
  out << "c_tf = " << f(c.tfw.c_tf) << "\n";
  out << "[solver]\n";
  out << "max_iters = " << c.solver.max_iters << "\n";
  out << "grad_tol = " << f(c.solver.grad_tol) << "\n";
  out << "seed = " << c.solver.seed << "\n";
  out << "trace = " << (c.solver.trace ? 1 : 0) << "\n";
  out << "armijo = " << f(c.solver.armijo) << "\n";
  out << "max_backtracks = " << c.solver.max_backtracks << "\n";
  out << "[scan]\n";
  out << "q_list =";
  for (double q : c.q_list) out << " " << f(q);
  out << "\n";
  out << "L_list =";
  for (int l : c.l_list) out << " " << l;
  out << "\n";
  out << "[jellium]\n";
  out << "alpha = " << f(c.alpha) << "\n";
  out << "epsilon_list =";
  for (double e : c.epsilon_list) out << " " << f(e);
  out << "\n";
  out << "zero_mode = " << (c.zero_mode == ZeroMode::analytic ? "analytic" : "supercell") << "\n";
  return out.str();
}

} // namespace tfw
