#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cosym/error.hpp"

namespace cosym {

inline const std::array<std::string, 13>& canonical_checks() {
  static const std::array<std::string, 13> kChecks = {
      "closed",    "classify", "action", "moment", "clean",    "body", "morse",
      "quasi_iso", "basic",    "orbit",  "arrow",  "holonomy", "reduce"};
  return kChecks;
}

inline bool is_known_check(const std::string& name) {
  const auto& ks = canonical_checks();
  return std::find(ks.begin(), ks.end(), name) != ks.end();
}

struct RunConfig {
  std::string scenario;
  std::vector<std::string> checks;  // empty means every applicable check
  unsigned seed = 12345;
  double tol_rank = 1e-9;
  double tol_closed = 1e-4;
  double tol_action = 1e-6;
  double tol_crit = 1e-4;
  double tol_eig = 1e-6;
  double holonomy_tol = 1e-8;
  std::vector<int> grid;         // optional per-axis grid override
  std::vector<double> clip_box;  // optional lo,hi per moment component
  std::string foliation = "kernel";
};

namespace detail {

inline std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Comma-separated items, with optional surrounding brackets.
inline std::vector<std::string> split_list(std::string s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']')
    s = s.substr(1, s.size() - 2);
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad numeric value for " + key + ": '" + value + "'");
  }
}

inline long parse_long(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad integer value for " + key + ": '" + value + "'");
  }
}

}  // namespace detail

// Applies one key=value setting.  Shared between the file parser and the
// command-line override flags.
inline void apply_config_entry(RunConfig& cfg, const std::string& key,
                               const std::string& value) {
  using detail::parse_double;
  using detail::parse_long;
  auto positive = [&](double v) {
    if (!(v > 0.0))
      fail(ErrorCode::ParseError, key + " must be positive, got '" + value + "'");
    return v;
  };

  if (key == "scenario") {
    cfg.scenario = value;
  } else if (key == "checks") {
    if (value == "all") {
      cfg.checks.clear();
    } else {
      cfg.checks = detail::split_list(value);
      for (const auto& c : cfg.checks)
        if (!is_known_check(c))
          fail(ErrorCode::UnknownCheck, "unknown check '" + c + "'");
    }
  } else if (key == "seed") {
    const long v = parse_long(key, value);
    if (v < 0) fail(ErrorCode::ParseError, "seed must be nonnegative");
    cfg.seed = static_cast<unsigned>(v);
  } else if (key == "tol_rank") {
    cfg.tol_rank = positive(parse_double(key, value));
  } else if (key == "tol_closed") {
    cfg.tol_closed = positive(parse_double(key, value));
  } else if (key == "tol_action") {
    cfg.tol_action = positive(parse_double(key, value));
  } else if (key == "tol_crit") {
    cfg.tol_crit = positive(parse_double(key, value));
  } else if (key == "tol_eig") {
    cfg.tol_eig = positive(parse_double(key, value));
  } else if (key == "holonomy_tol") {
    cfg.holonomy_tol = positive(parse_double(key, value));
  } else if (key == "grid") {
    cfg.grid.clear();
    for (const auto& item : detail::split_list(value)) {
      const long v = parse_long(key, item);
      if (v < 3) fail(ErrorCode::ParseError, "grid counts must be at least 3");
      cfg.grid.push_back(static_cast<int>(v));
    }
    if (cfg.grid.empty()) fail(ErrorCode::ParseError, "grid override is empty");
  } else if (key == "clip_box") {
    cfg.clip_box.clear();
    for (const auto& item : detail::split_list(value))
      cfg.clip_box.push_back(parse_double(key, item));
    if (cfg.clip_box.empty() || cfg.clip_box.size() % 2 != 0)
      fail(ErrorCode::ParseError, "clip_box needs lo,hi pairs");
    for (size_t j = 0; j + 1 < cfg.clip_box.size(); j += 2)
      if (!(cfg.clip_box[j] < cfg.clip_box[j + 1]))
        fail(ErrorCode::ParseError, "clip_box pairs must satisfy lo < hi");
  } else if (key == "foliation") {
    if (value != "kernel" && value != "displayed")
      fail(ErrorCode::ParseError, "foliation must be 'kernel' or 'displayed'");
    cfg.foliation = value;
  } else {
    fail(ErrorCode::ParseError, "unknown config key '" + key + "'");
  }
}

// One setting per line, key = value, with '#' comments and blank lines skipped.
inline RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::ParseError,
           "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      fail(ErrorCode::ParseError,
           "line " + std::to_string(lineno) + ": empty key or value");
    apply_config_entry(cfg, key, value);
  }
  if (cfg.scenario.empty())
    fail(ErrorCode::ParseError, "config must set scenario = <name>");
  return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace cosym
