#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cosym/chart.hpp"
#include "cosym/error.hpp"

namespace cosym {

// A torus action on a charted scenario.  `rank` generators; `act` applies the
// group element with angle vector theta (may be empty for derived scenarios
// where only the infinitesimal data survives).  `moment_map` carries the
// components paired with the generators NOT in the subtorus (one per
// complementary generator, in generator order).
struct TorusActionSpec {
  int rank = 0;
  std::function<Vec(const Vec& theta, const Vec& x)> act;
  std::vector<VectorField> fundamental_fields;
  PointMap moment_map;                   // null when no moment data attached
  Eigen::MatrixXi subtorus;              // k x rank integer matrix, rows = degenerate-direction generators

  int subtorus_rank() const { return static_cast<int>(subtorus.rows()); }
  int moment_components() const { return rank - subtorus_rank(); }
  bool has_act() const { return static_cast<bool>(act); }
  bool has_moment() const { return static_cast<bool>(moment_map); }
};

// A foliation given by pointwise spanning vector fields of constant declared rank.
struct FoliationSpec {
  int rank = 0;
  std::vector<VectorField> spanning_fields;
  std::string variant = "kernel";  // "kernel" (= ker flat) or "displayed"
};

// Dimensions of the product-model scenarios: k angle factors, n-k complex
// factors, one transverse circle.  Needed by the arrow-space construction.
struct CnShape {
  int n = 0;
  int k = 0;
};

// Transversal return map for holonomy runs (2D transversal slice).
struct ReturnMapSpec {
  std::function<Eigen::Vector2d(const Eigen::Vector2d&)> map;
  std::string description;
};

// A parametrized section of the zero level set used by reduction: a chart for
// the quotient candidate plus an embedding into the ambient chart.
struct SliceSpec {
  ChartedManifold chart;
  PointMap param;
};

struct Scenario {
  std::string name;
  ChartedManifold chart;
  FormPair forms;
  std::optional<TorusActionSpec> action;
  std::optional<FoliationSpec> foliation;
  std::optional<CnShape> cn_shape;
  std::optional<ReturnMapSpec> holonomy_return;
  std::optional<SliceSpec> slice;
  bool properness_declared = true;
  std::vector<double> default_clip;  // 2m entries lo,hi per moment component
  std::string notes;
};

}  // namespace cosym
