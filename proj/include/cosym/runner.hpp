#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cosym/config.hpp"
#include "cosym/constructions.hpp"
#include "cosym/error.hpp"
#include "cosym/geometry.hpp"
#include "cosym/groupoid.hpp"
#include "cosym/hamiltonian.hpp"
#include "cosym/holonomy.hpp"
#include "cosym/morse_bott.hpp"
#include "cosym/report.hpp"

namespace cosym {

struct RunOutput {
  ScenarioReport report;
  std::optional<MomentBody> body;        // kept for CSV emission
  std::optional<MorseBottReport> morse;  // kept for CSV emission
};

namespace detail {

inline bool check_applicable(const Scenario& S, const std::string& name,
                             std::string* why) {
  auto no = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  if (name == "closed" || name == "classify") return true;
  if (name == "action") {
    if (!S.action || !S.action->has_act()) return no("scenario has no torus action");
    return true;
  }
  if (name == "clean") {
    if (!S.action || S.action->fundamental_fields.empty())
      return no("scenario has no fundamental vector fields");
    return true;
  }
  if (name == "moment" || name == "body" || name == "morse") {
    if (!S.action || !S.action->has_moment())
      return no("scenario has no moment map");
    if (S.action->moment_components() < 1)
      return no("moment map has no components after the subtorus quotient");
    return true;
  }
  if (name == "quasi_iso" || name == "basic" || name == "orbit") {
    if (!S.foliation) return no("scenario has no foliation data");
    return true;
  }
  if (name == "arrow") {
    if (!S.cn_shape) return no("arrow space is defined for product models only");
    return true;
  }
  if (name == "holonomy") {
    if (!S.holonomy_return) return no("scenario has no transverse return map");
    return true;
  }
  if (name == "reduce") {
    if (!S.action || !S.action->has_moment())
      return no("reduction needs an action with a moment map");
    if (!S.slice) return no("scenario provides no level-set section");
    return true;
  }
  fail(ErrorCode::UnknownCheck, "unknown check '" + name + "'");
}

inline Json classification_json(const StructureClassification& c) {
  Json d;
  d["kind"] = to_string(c.kind);
  d["summary"] = c.describe();
  if (c.is_cosymplectic()) d["n"] = c.n;
  if (c.is_precosymplectic()) d["r"] = c.r;
  if (!c.reason.empty()) d["reason"] = c.reason;
  d["rank_of_flat"] = c.rank_of_flat;
  d["omega_residual"] = jnum(c.omega_residual);
  d["eta_residual"] = jnum(c.eta_residual);
  return d;
}

}  // namespace detail

// Executes one named check against the scenario.  Throws Error on scenario or
// numerical precondition violations; the caller converts those to report rows.
inline CheckResult run_single_check(const Scenario& S, const RunConfig& cfg,
                                    const std::string& name, RunOutput& out) {
  CheckResult r;
  r.name = name;

  if (name == "closed") {
    const ClosednessReport rep = verify_closed(S.chart, S.forms);
    r.status = rep.passes(cfg.tol_closed) ? "pass" : "fail";
    r.details["omega_residual"] = jnum(rep.omega_residual);
    r.details["eta_residual"] = jnum(rep.eta_residual);
  } else if (name == "classify") {
    const StructureClassification c =
        classify_structure(S.chart, S.forms, cfg.tol_rank, cfg.tol_closed);
    r.status = (c.is_cosymplectic() || c.is_precosymplectic()) ? "pass" : "fail";
    r.details = detail::classification_json(c);
  } else if (name == "action") {
    const ActionReport rep = verify_precosymplectic_action(S, 20, cfg.seed);
    r.status = rep.passes(cfg.tol_action) ? "pass" : "fail";
    r.details["identity_residual"] = jnum(rep.identity_residual);
    r.details["composition_residual"] = jnum(rep.composition_residual);
    r.details["omega_invariance"] = jnum(rep.omega_invariance);
    r.details["eta_invariance"] = jnum(rep.eta_invariance);
    r.details["field_residual"] = jnum(rep.field_residual);
    r.details["theta_samples"] = rep.theta_samples;
    r.details["point_samples"] = rep.point_samples;
  } else if (name == "moment") {
    const MomentMapReport rep = verify_moment_map(S, 10, cfg.seed + 1, cfg.tol_rank);
    r.status = rep.passes(cfg.tol_action) ? "pass" : "fail";
    r.details["eta_pairing"] = jnum(rep.eta_pairing);
    r.details["moment_condition"] = jnum(rep.moment_condition);
    r.details["invariance"] = jnum(rep.invariance);
    r.details["kernel_descent"] = jnum(rep.kernel_descent);
    r.details["point_samples"] = rep.point_samples;
  } else if (name == "clean") {
    const CleanActionReport rep = clean_action_check(S, cfg.tol_action, cfg.tol_rank);
    r.status = rep.passes() ? "pass" : "fail";
    Json gens = Json::array();
    for (int g : rep.detected_null_generators) gens.push_back(g);
    r.details["detected_null_generators"] = std::move(gens);
    r.details["declared_consistent"] = rep.declared_consistent;
    r.details["worst_flat_norm"] = jnum(rep.worst_flat_norm);
    r.details["span_failures"] = rep.failures;
  } else if (name == "body") {
    const MomentBody body = moment_body(S, cfg.clip_box);
    r.status = body.hull.vertices.empty() ? "fail" : "pass";
    r.details["components"] = body.components;
    r.details["affine_rank"] = body.hull.affine_rank;
    r.details["clipped"] = body.clipped_any;
    r.details["sample_count"] = static_cast<int>(body.samples.size());
    Json verts = Json::array();
    for (const Vec& v : body.hull.vertices) verts.push_back(jvec(v));
    r.details["vertices"] = std::move(verts);
    Json faces = Json::array();
    for (const Halfspace& h : body.hull.halfspaces) {
      Json hj;
      hj["normal"] = jvec(h.normal);
      hj["offset"] = jnum(h.offset);
      hj["box_artifact"] = h.box_artifact;
      faces.push_back(std::move(hj));
    }
    r.details["halfspaces"] = std::move(faces);
    out.body = body;
  } else if (name == "morse") {
    const MorseBottReport rep = morse_bott_analysis(S, 0, cfg.tol_crit, cfg.tol_eig);
    r.status = (rep.all_nondegenerate() && rep.all_even_index()) ? "pass" : "fail";
    r.details["moment_component"] = rep.component;
    r.details["grad_max"] = jnum(rep.grad_max);
    r.details["crit_threshold"] = jnum(rep.crit_threshold);
    Json comps = Json::array();
    for (const CriticalComponent& c : rep.critical) {
      Json cj;
      cj["point_count"] = c.point_count;
      cj["tangent_dim"] = c.tangent_dim;
      cj["index"] = c.index;
      cj["nullity"] = c.nullity;
      cj["representative"] = jvec(c.representative);
      cj["normal_eigenvalues"] = jvec(c.normal_eigenvalues);
      comps.push_back(std::move(cj));
    }
    r.details["critical_components"] = std::move(comps);
    out.morse = rep;
  } else if (name == "quasi_iso") {
    std::mt19937 rng(cfg.seed + 2);
    int failures = 0;
    const int samples = 50;
    for (int i = 0; i < samples; ++i) {
      const Vec x = S.chart.random_point(rng);
      if (!quasi_iso_check(S, x, kDefaultSubspaceTol, cfg.tol_rank).passes())
        ++failures;
    }
    r.status = failures == 0 ? "pass" : "fail";
    r.details["point_samples"] = samples;
    r.details["failures"] = failures;
  } else if (name == "basic") {
    const BasicFormReport rep = basic_form_check(S);
    r.status = rep.passes(cfg.tol_action) ? "pass" : "fail";
    r.details["omega_horizontal"] = jnum(rep.omega_horizontal);
    r.details["eta_horizontal"] = jnum(rep.eta_horizontal);
    r.details["omega_invariance"] = jnum(rep.omega_invariance);
    r.details["eta_invariance"] = jnum(rep.eta_invariance);
    r.details["point_samples"] = rep.point_samples;
  } else if (name == "orbit") {
    const OrbitInvarianceResult rep =
        orbit_invariance_check(S, 10, 20, cfg.seed + 3, kDefaultSubspaceTol);
    r.status = rep.passes ? "pass" : "fail";
    r.details["flow_points"] = rep.flow_points;
    r.details["failures"] = rep.failures;
  } else if (name == "arrow") {
    const ArrowSpaceReport rep =
        arrow_space_check(S, 50, cfg.seed + 4, kDefaultSubspaceTol, cfg.tol_rank);
    r.status = rep.passes(1e-9) ? "pass" : "fail";
    r.details["pullback_mismatch"] = jnum(rep.pullback_mismatch);
    r.details["kernel_checks"] = rep.kernel_checks;
    r.details["kernel_failures"] = rep.kernel_failures;
  } else if (name == "holonomy") {
    const HolonomyResult rep =
        scenario_holonomy(S, Eigen::Vector2d(0.1, 0.0), cfg.holonomy_tol, 10000);
    r.status = "pass";
    r.details["kind"] = to_string(rep.kind);
    r.details["order"] = rep.order;
    r.details["iterations_used"] = rep.iterations_used;
    r.details["closest_return"] = jnum(rep.closest_return);
    r.details["generator_angle"] = jnum(rep.generator_angle);
    r.details["summary"] = rep.describe();
    r.details["iteration_cap"] = 10000;
  } else if (name == "reduce") {
    const ReduceResult rep = reduce_at_zero(S, {}, 1e-8, cfg.tol_rank);
    const StructureClassification c = classify_structure(
        rep.reduced.chart, rep.reduced.forms, cfg.tol_rank, cfg.tol_closed);
    r.status = (c.is_cosymplectic() || c.is_precosymplectic()) ? "pass" : "fail";
    r.details["level_residual"] = jnum(rep.level_residual);
    r.details["transversality_gap"] = jnum(rep.transversality_gap);
    r.details["reduced_dim"] = rep.reduced.chart.dim;
    r.details["reduced"] = detail::classification_json(c);
  } else {
    fail(ErrorCode::UnknownCheck, "unknown check '" + name + "'");
  }
  return r;
}

// Applies config overrides (grid counts, foliation variant) to a freshly built
// scenario.  The displayed foliation variant appends the transverse circle
// direction to the leaf span; the kernel variant leaves the span untouched.
inline Scenario configure_scenario(const RunConfig& cfg) {
  Scenario S = make_scenario(cfg.scenario);
  if (!cfg.grid.empty()) {
    if (cfg.grid.size() == 1) {
      std::fill(S.chart.grid_counts.begin(), S.chart.grid_counts.end(), cfg.grid[0]);
    } else if (static_cast<int>(cfg.grid.size()) == S.chart.dim) {
      S.chart.grid_counts = cfg.grid;
    } else {
      fail(ErrorCode::ShapeMismatch,
           "grid override needs one count or one per axis");
    }
  }
  if (cfg.foliation == "displayed" && S.foliation) {
    const int d = S.chart.dim;
    S.foliation->spanning_fields.push_back([d](const Vec&) {
      Vec v = Vec::Zero(d);
      v(d - 1) = 1.0;
      return v;
    });
    S.foliation->rank += 1;
    S.foliation->variant = "displayed";
  }
  return S;
}

inline RunOutput run(const RunConfig& cfg) {
  RunOutput out;
  ScenarioReport& rep = out.report;
  rep.scenario = cfg.scenario;
  rep.seed = cfg.seed;
  rep.foliation_variant = cfg.foliation;
  rep.tolerances["tol_rank"] = jnum(cfg.tol_rank);
  rep.tolerances["tol_closed"] = jnum(cfg.tol_closed);
  rep.tolerances["tol_action"] = jnum(cfg.tol_action);
  rep.tolerances["tol_crit"] = jnum(cfg.tol_crit);
  rep.tolerances["tol_eig"] = jnum(cfg.tol_eig);
  rep.tolerances["holonomy_tol"] = jnum(cfg.holonomy_tol);

  const Scenario S = configure_scenario(cfg);
  rep.grid = S.chart.grid_counts;

  const bool run_all = cfg.checks.empty();
  auto requested = [&](const std::string& name) {
    return run_all || std::find(cfg.checks.begin(), cfg.checks.end(), name) !=
                          cfg.checks.end();
  };

  for (const std::string& name : canonical_checks()) {
    CheckResult r;
    r.name = name;
    std::string why;
    if (!requested(name)) {
      r.status = "skipped";
      r.note = "not requested";
    } else if (!detail::check_applicable(S, name, &why)) {
      if (run_all) {
        r.status = "skipped";
        r.note = "not applicable: " + why;
      } else {
        r.status = "error";
        r.note = "check not applicable: " + why;
      }
    } else {
      try {
        r = run_single_check(S, cfg, name, out);
      } catch (const Error& e) {
        r.status = "error";
        r.note = std::string(error_code_name(e.code())) + ": " + e.what();
      } catch (const std::exception& e) {
        r.status = "error";
        r.note = std::string("internal: ") + e.what();
      }
    }
    rep.checks.push_back(std::move(r));
  }

  rep.all_passed = std::all_of(rep.checks.begin(), rep.checks.end(),
                               [](const CheckResult& c) { return c.counts_as_pass(); });
  return out;
}

}  // namespace cosym
