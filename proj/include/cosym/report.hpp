#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cosym/error.hpp"
#include "cosym/hamiltonian.hpp"
#include "cosym/morse_bott.hpp"

namespace cosym {

using Json = nlohmann::ordered_json;

// All floats in reports pass through a fixed 12-significant-digit rounding so
// that serialized output is stable and byte-identical for a fixed seed.
inline double round12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

inline Json jnum(double v) { return Json(round12(v)); }

inline Json jvec(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(jnum(v(i)));
  return a;
}

inline Json jvec(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(jnum(x));
  return a;
}

struct CheckResult {
  std::string name;
  std::string status;  // pass | fail | skipped | error
  std::string note;    // skip reason or error text
  Json details = Json::object();

  bool counts_as_pass() const { return status == "pass" || status == "skipped"; }
};

struct ScenarioReport {
  std::string scenario;
  unsigned seed = 0;
  std::vector<int> grid;
  std::string foliation_variant;
  Json tolerances = Json::object();
  std::vector<CheckResult> checks;
  bool all_passed = true;
  double wall_seconds = 0.0;  // stderr only; kept out of the JSON for determinism

  Json to_json() const {
    Json j;
    j["report_version"] = 1;
    j["scenario"] = scenario;
    j["all_passed"] = all_passed;
    Json arr = Json::array();
    for (const auto& c : checks) {
      Json cj;
      cj["name"] = c.name;
      cj["status"] = c.status;
      if (!c.note.empty()) cj["note"] = c.note;
      if (!c.details.empty()) cj["details"] = c.details;
      arr.push_back(std::move(cj));
    }
    j["checks"] = std::move(arr);
    Json prov;
    prov["seed"] = seed;
    Json g = Json::array();
    for (int c : grid) g.push_back(c);
    prov["grid"] = std::move(g);
    prov["foliation"] = foliation_variant;
    prov["tolerances"] = tolerances;
    j["provenance"] = std::move(prov);
    return j;
  }

  std::string to_json_string() const { return to_json().dump(2) + "\n"; }
};

// ---------------------------------------------------------------------------
// CSV emission
// ---------------------------------------------------------------------------

namespace detail {
inline std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}
}  // namespace detail

// One row per hull vertex, columns mu_1..mu_m.
inline void write_moment_body_csv(std::ostream& os, const MomentBody& body) {
  const int m = body.components;
  for (int j = 0; j < m; ++j) os << (j ? "," : "") << "mu_" << (j + 1);
  os << "\n";
  for (const Vec& v : body.hull.vertices) {
    for (int j = 0; j < m; ++j) os << (j ? "," : "") << detail::fmt12(v(j));
    os << "\n";
  }
}

// One row per critical component: counts, index data, then the representative.
inline void write_critical_components_csv(std::ostream& os,
                                          const MorseBottReport& rep) {
  int d = 0;
  for (const auto& c : rep.critical)
    d = std::max(d, static_cast<int>(c.representative.size()));
  os << "component,point_count,tangent_dim,index,nullity";
  for (int j = 0; j < d; ++j) os << ",x_" << (j + 1);
  os << "\n";
  for (size_t i = 0; i < rep.critical.size(); ++i) {
    const auto& c = rep.critical[i];
    os << i << "," << c.point_count << "," << c.tangent_dim << "," << c.index
       << "," << c.nullity;
    for (int j = 0; j < d; ++j) os << "," << detail::fmt12(c.representative(j));
    os << "\n";
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::ParseError, "cannot open output file '" + path + "'");
  out << text;
}

}  // namespace cosym
