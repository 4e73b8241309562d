#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "cosym/diff.hpp"
#include "cosym/error.hpp"
#include "cosym/geometry.hpp"
#include "cosym/hull.hpp"
#include "cosym/scenario.hpp"
#include "cosym/subspace.hpp"

namespace cosym {

namespace detail {

// Deterministic point budget for grid sweeps: every grid point when the grid
// is small, otherwise a fixed stride subsample.
inline std::vector<std::int64_t> sweep_indices(const ChartedManifold& M,
                                               std::int64_t cap = 20000) {
  const std::int64_t n = M.grid_size();
  std::vector<std::int64_t> out;
  const std::int64_t stride = std::max<std::int64_t>(1, (n + cap - 1) / cap);
  for (std::int64_t f = 0; f < n; f += stride) out.push_back(f);
  return out;
}

inline std::vector<Vec> sample_group_elements(int rank, int count, std::mt19937& rng) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  std::vector<Vec> out;
  out.push_back(Vec::Zero(rank));
  for (int i = 1; i < count; ++i) {
    Vec t(rank);
    for (int j = 0; j < rank; ++j) t(j) = ang(rng);
    out.push_back(t);
  }
  return out;
}

}  // namespace detail

// ===========================================================================
// Action verification
// ===========================================================================

struct ActionReport {
  double identity_residual = 0.0;     // act(0, x) vs x
  double composition_residual = 0.0;  // act(s, act(t, x)) vs act(s+t, x)
  double omega_invariance = 0.0;      // J^T omega(act x) J vs omega(x)
  double eta_invariance = 0.0;        // J^T eta(act x) vs eta(x)
  double field_residual = 0.0;        // fundamental fields vs d/dt act(t xi)|_0
  int theta_samples = 0;
  int point_samples = 0;

  double worst() const {
    return std::max({identity_residual, composition_residual, omega_invariance,
                     eta_invariance, field_residual});
  }
  bool passes(double tol) const { return worst() <= tol; }
};

// Pullback invariance of both forms under sampled group elements, plus the
// group laws and the consistency of the declared fundamental fields.
inline ActionReport verify_precosymplectic_action(const Scenario& S, int theta_count = 20,
                                                  unsigned seed = 12345) {
  if (!S.action || !S.action->has_act())
    fail(ErrorCode::NoAction, "scenario has no applicable torus action");
  const TorusActionSpec& A = *S.action;
  const ChartedManifold& M = S.chart;
  std::mt19937 rng(seed);
  const auto thetas = detail::sample_group_elements(A.rank, theta_count, rng);
  const auto idx = detail::sweep_indices(M, 2000);

  ActionReport rep;
  rep.theta_samples = static_cast<int>(thetas.size());
  rep.point_samples = static_cast<int>(idx.size());

  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  for (std::int64_t f : idx) {
    const Vec x = M.grid_point(f);
    const Mat Wx = S.forms.omega_at(x);
    const Vec ex = S.forms.eta_at(x);

    rep.identity_residual = std::max(
        rep.identity_residual,
        (A.act(Vec::Zero(A.rank), x) - x).cwiseAbs().maxCoeff());

    for (const Vec& t : thetas) {
      PointMap phi = [&](const Vec& y) { return A.act(t, y); };
      const Mat J = jacobian_raw(M, phi, x);
      const Vec px = M.wrap(phi(x));
      rep.omega_invariance = std::max(
          rep.omega_invariance,
          (J.transpose() * S.forms.omega_at(px) * J - Wx).cwiseAbs().maxCoeff());
      rep.eta_invariance = std::max(
          rep.eta_invariance,
          (J.transpose() * S.forms.eta_at(px) - ex).cwiseAbs().maxCoeff());
    }

    // Group law on a couple of sampled pairs per point.
    for (int rep_i = 0; rep_i < 2; ++rep_i) {
      Vec s(A.rank), t(A.rank);
      for (int j = 0; j < A.rank; ++j) {
        s(j) = ang(rng);
        t(j) = ang(rng);
      }
      const Vec lhs = M.wrap(A.act(s, A.act(t, x)));
      const Vec rhs = M.wrap(A.act(s + t, x));
      Vec diff = lhs - rhs;
      for (int i = 0; i < M.dim; ++i) {
        if (!M.periodic[i]) continue;
        const double r = M.range(i);
        diff(i) = std::remainder(diff(i), r);
      }
      rep.composition_residual =
          std::max(rep.composition_residual, diff.cwiseAbs().maxCoeff());
    }

    // Fundamental fields against the t-derivative of the action.
    const double ht = 1e-5;
    for (int j = 0; j < A.rank; ++j) {
      Vec ej = Vec::Zero(A.rank);
      ej(j) = 1.0;
      const Vec dplus = A.act(ht * ej, x);
      const Vec dminus = A.act(-ht * ej, x);
      const Vec numeric = (dplus - dminus) / (2.0 * ht);
      rep.field_residual = std::max(
          rep.field_residual,
          (numeric - A.fundamental_fields[j](x)).cwiseAbs().maxCoeff());
    }
  }
  return rep;
}

// ===========================================================================
// Moment map verification
// ===========================================================================

struct MomentMapReport {
  double eta_pairing = 0.0;       // |eta(xi_M)| over all generators
  double moment_condition = 0.0;  // |d mu^xi - i_{xi_M} omega| over paired generators
  double invariance = 0.0;        // |mu(act(theta, x)) - mu(x)|
  double kernel_descent = 0.0;    // |d mu^xi (u)| over kernel vectors u of L
  int point_samples = 0;

  double worst() const {
    return std::max({eta_pairing, moment_condition, invariance, kernel_descent});
  }
  bool passes(double tol) const { return worst() <= tol; }
};

// Checks the defining identities of the moment data: orbit directions are
// eta-horizontal, each paired generator satisfies d mu^xi = i_{xi_M} omega,
// mu is invariant under sampled group elements, and mu descends through the
// pointwise kernel of the structure matrix.
inline MomentMapReport verify_moment_map(const Scenario& S, int theta_count = 10,
                                         unsigned seed = 23456,
                                         double tol_rank = kDefaultRankTol) {
  if (!S.action) fail(ErrorCode::NoAction, "scenario has no torus action");
  if (!S.action->has_moment())
    fail(ErrorCode::NoMomentMap, "scenario has no moment map");
  const TorusActionSpec& A = *S.action;
  const ChartedManifold& M = S.chart;
  const int m = A.moment_components();
  std::mt19937 rng(seed);
  const auto thetas =
      A.has_act() ? detail::sample_group_elements(A.rank, theta_count, rng)
                  : std::vector<Vec>{};
  const auto idx = detail::sweep_indices(M, 20000);

  // Complementary generators, in order: those not spanned by subtorus rows.
  std::vector<int> paired;
  {
    std::vector<bool> in_sub(A.rank, false);
    for (int r = 0; r < A.subtorus_rank(); ++r)
      for (int c = 0; c < A.rank; ++c)
        if (A.subtorus(r, c) != 0) in_sub[c] = true;
    for (int c = 0; c < A.rank; ++c)
      if (!in_sub[c]) paired.push_back(c);
  }
  if (static_cast<int>(paired.size()) != m)
    fail(ErrorCode::ShapeMismatch, "moment components do not match complementary generators");

  MomentMapReport rep;
  rep.point_samples = static_cast<int>(idx.size());
  for (std::int64_t f : idx) {
    const Vec x = M.grid_point(f);
    const PointTensor pt = tensor_at(S.forms, x);
    const Vec mu0 = A.moment_map(x);
    if (mu0.size() != m)
      fail(ErrorCode::ShapeMismatch, "moment map returns wrong component count");

    for (int j = 0; j < A.rank; ++j) {
      rep.eta_pairing = std::max(
          rep.eta_pairing, std::abs(pt.eta.dot(A.fundamental_fields[j](x))));
    }

    Mat dmu(m, M.dim);
    for (int i = 0; i < M.dim; ++i) dmu.col(i) = partial(M, A.moment_map, x, i);
    for (int jj = 0; jj < m; ++jj) {
      const Vec xi = A.fundamental_fields[paired[jj]](x);
      const Vec lhs = dmu.row(jj).transpose();
      const Vec rhs = pt.interior_omega(xi);
      rep.moment_condition =
          std::max(rep.moment_condition, (lhs - rhs).cwiseAbs().maxCoeff());
    }

    for (const Vec& t : thetas) {
      const Vec mu1 = A.moment_map(M.wrap(A.act(t, x)));
      rep.invariance =
          std::max(rep.invariance, (mu1 - mu0).cwiseAbs().maxCoeff());
    }

    const SubspaceBasis ker = kernel_basis(lichnerowicz_matrix(pt), tol_rank);
    for (int u = 0; u < ker.rank(); ++u) {
      const Vec kv = ker.basis.col(u);
      rep.kernel_descent = std::max(
          rep.kernel_descent, (dmu * kv).cwiseAbs().maxCoeff());
    }
  }
  return rep;
}

// ===========================================================================
// Clean action check
// ===========================================================================

struct CleanActionReport {
  std::vector<int> detected_null_generators;  // generators killed by the flat map
  bool declared_consistent = true;  // declared subtorus generators are detected
  double worst_flat_norm = 0.0;     // max |L xi_M| over detected generators
  int point_samples = 0;
  int failures = 0;                 // points where the subspace identity fails
  bool clean = false;

  bool passes() const { return clean && declared_consistent; }
};

// Detects the generators whose fundamental fields the flat map kills on the
// whole grid, then checks pointwise that span(detected fields) equals the
// intersection of the full orbit tangent with ker(flat).
inline CleanActionReport clean_action_check(const Scenario& S,
                                            double tol = 1e-6,
                                            double tol_rank = kDefaultRankTol,
                                            double tol_subspace = kDefaultSubspaceTol) {
  if (!S.action) fail(ErrorCode::NoAction, "scenario has no torus action");
  const TorusActionSpec& A = *S.action;
  const ChartedManifold& M = S.chart;
  const auto idx = detail::sweep_indices(M, 4000);

  CleanActionReport rep;
  rep.point_samples = static_cast<int>(idx.size());

  std::vector<double> flat_norm(A.rank, 0.0);
  for (std::int64_t f : idx) {
    const Vec x = M.grid_point(f);
    const Mat L = lichnerowicz_matrix(tensor_at(S.forms, x));
    for (int j = 0; j < A.rank; ++j)
      flat_norm[j] = std::max(flat_norm[j], (L * A.fundamental_fields[j](x)).norm());
  }
  for (int j = 0; j < A.rank; ++j)
    if (flat_norm[j] <= tol) {
      rep.detected_null_generators.push_back(j);
      rep.worst_flat_norm = std::max(rep.worst_flat_norm, flat_norm[j]);
    }

  for (int r = 0; r < A.subtorus_rank(); ++r) {
    for (int c = 0; c < A.rank; ++c) {
      if (A.subtorus(r, c) != 0 &&
          std::find(rep.detected_null_generators.begin(),
                    rep.detected_null_generators.end(),
                    c) == rep.detected_null_generators.end())
        rep.declared_consistent = false;
    }
  }

  const auto spot = detail::sweep_indices(M, 256);
  for (std::int64_t f : spot) {
    const Vec x = M.grid_point(f);
    const PointTensor pt = tensor_at(S.forms, x);

    Mat orbit(M.dim, A.rank);
    for (int j = 0; j < A.rank; ++j) orbit.col(j) = A.fundamental_fields[j](x);
    Mat null_orbit(M.dim, rep.detected_null_generators.size());
    for (size_t j = 0; j < rep.detected_null_generators.size(); ++j)
      null_orbit.col(j) = orbit.col(rep.detected_null_generators[j]);

    const SubspaceBasis orbit_span = column_span(orbit, 1e-8);
    const SubspaceBasis null_span = column_span(null_orbit, 1e-8);
    const SubspaceBasis ker = kernel_basis(lichnerowicz_matrix(pt), tol_rank);
    const SubspaceBasis inter = span_intersection(orbit_span, ker);
    if (subspace_relation(null_span, inter, tol_subspace) != SubspaceRelation::Equal)
      ++rep.failures;
  }
  rep.clean = (rep.failures == 0);
  return rep;
}

// ===========================================================================
// Moment body
// ===========================================================================

struct MomentBody {
  int components = 0;
  std::vector<double> clip_box;  // lo, hi per component
  std::vector<Vec> samples;      // deduped, clamped to the clip box
  HullResult hull;
  bool clipped_any = false;

  double violation(const Vec& mu) const { return hull.violation(mu); }
};

// Image of the moment map over the grid: samples are clamped componentwise to
// the clip box, deduplicated, and hulled.  Facets that lie on a clip plane
// which actually clamped a sample are flagged as clipping artifacts.
inline MomentBody moment_body(const Scenario& S, std::vector<double> clip_box = {}) {
  if (!S.action) fail(ErrorCode::NoAction, "scenario has no torus action");
  if (!S.action->has_moment())
    fail(ErrorCode::NoMomentMap, "scenario has no moment map");
  const TorusActionSpec& A = *S.action;
  const ChartedManifold& M = S.chart;
  const int m = A.moment_components();
  if (clip_box.empty()) clip_box = S.default_clip;
  if (static_cast<int>(clip_box.size()) != 2 * m)
    fail(ErrorCode::OutOfRange, "clip box needs a lo,hi pair per moment component");
  for (int j = 0; j < m; ++j)
    if (!(clip_box[2 * j] < clip_box[2 * j + 1]))
      fail(ErrorCode::OutOfRange, "clip box pairs must satisfy lo < hi");

  MomentBody body;
  body.components = m;
  body.clip_box = clip_box;

  std::vector<bool> plane_hit(2 * m, false);
  std::map<std::vector<long long>, Vec> dedupe;
  const std::int64_t n = M.grid_size();
  for (std::int64_t f = 0; f < n; ++f) {
    Vec mu = A.moment_map(M.grid_point(f));
    for (int j = 0; j < m; ++j) {
      if (mu(j) < clip_box[2 * j]) {
        mu(j) = clip_box[2 * j];
        plane_hit[2 * j] = true;
      } else if (mu(j) > clip_box[2 * j + 1]) {
        mu(j) = clip_box[2 * j + 1];
        plane_hit[2 * j + 1] = true;
      }
    }
    std::vector<long long> key(m);
    for (int j = 0; j < m; ++j) key[j] = std::llround(mu(j) * 1e9);
    dedupe.emplace(std::move(key), mu);
  }
  body.clipped_any =
      std::any_of(plane_hit.begin(), plane_hit.end(), [](bool b) { return b; });
  body.samples.reserve(dedupe.size());
  for (const auto& [k, v] : dedupe) {
    (void)k;
    body.samples.push_back(v);
  }
  if (body.samples.empty()) fail(ErrorCode::EmptyImage, "moment image has no samples");

  body.hull = convex_hull(body.samples);

  for (auto& h : body.hull.halfspaces) {
    for (int j = 0; j < m; ++j) {
      Vec up = Vec::Zero(m), dn = Vec::Zero(m);
      up(j) = 1.0;
      dn(j) = -1.0;
      if (plane_hit[2 * j + 1] && (h.normal - up).cwiseAbs().maxCoeff() <= 1e-6 &&
          std::abs(h.offset - clip_box[2 * j + 1]) <= 1e-6)
        h.box_artifact = true;
      if (plane_hit[2 * j] && (h.normal - dn).cwiseAbs().maxCoeff() <= 1e-6 &&
          std::abs(h.offset + clip_box[2 * j]) <= 1e-6)
        h.box_artifact = true;
    }
  }
  return body;
}

// ===========================================================================
// Reduction at the zero level
// ===========================================================================

struct ReduceResult {
  Scenario reduced;
  double level_residual = 0.0;        // |mu| along the slice
  double transversality_gap = 0.0;    // smallest singular value of [slice | orbit]
};

// Pulls the structure back along a section of the zero level set that is
// transverse to the group orbits.  The section must land in mu^{-1}(0), zero
// must be a regular value along it, and slice directions plus orbit directions
// must fill the level set's tangent space.
inline ReduceResult reduce_at_zero(const Scenario& S,
                                   std::optional<SliceSpec> slice_override = {},
                                   double tol_level = 1e-8,
                                   double tol_rank = kDefaultRankTol) {
  if (!S.action) fail(ErrorCode::NoAction, "scenario has no torus action");
  if (!S.action->has_moment())
    fail(ErrorCode::NoMomentMap, "scenario has no moment map");
  const std::optional<SliceSpec>& sl = slice_override ? slice_override : S.slice;
  if (!sl) fail(ErrorCode::SliceNotTransverse, "scenario provides no level-set section");
  const TorusActionSpec& A = *S.action;
  const ChartedManifold& M = S.chart;
  const ChartedManifold model = sl->chart;
  const PointMap param = sl->param;
  const int m = A.moment_components();

  ReduceResult out;
  double min_sv = std::numeric_limits<double>::infinity();
  const std::int64_t gn = model.grid_size();
  for (std::int64_t f = 0; f < gn; ++f) {
    const Vec u = model.grid_point(f);
    const Vec x = param(u);
    const Vec mu = A.moment_map(x);
    out.level_residual = std::max(out.level_residual, mu.cwiseAbs().maxCoeff());

    // Regular value: d mu has full rank m at the section point.
    Mat dmu(m, M.dim);
    for (int i = 0; i < M.dim; ++i) {
      Vec xp = x, xm = x;
      const double h = default_step(M, i);
      xp(i) += h;
      xm(i) -= h;
      dmu.col(i) = (A.moment_map(M.wrap(xp)) - A.moment_map(M.wrap(xm))) / (2.0 * h);
    }
    if (numerical_rank(dmu, tol_rank) < m)
      fail(ErrorCode::NotRegularValue, "d mu drops rank along the section");

    // Transversality inside the level set: slice directions + orbit directions
    // must be independent and fill dim - m directions.
    const Mat J = jacobian_raw(model, param, u);
    Mat span(M.dim, model.dim + A.rank);
    span.leftCols(model.dim) = J;
    for (int j = 0; j < A.rank; ++j)
      span.col(model.dim + j) = A.fundamental_fields[j](x);
    Eigen::JacobiSVD<Mat> svd(span);
    const auto& sv = svd.singularValues();
    const int need = model.dim + A.rank;
    if (need > M.dim || numerical_rank(span, 1e-8) < need)
      fail(ErrorCode::SliceNotTransverse,
           "slice and orbit directions do not combine to full level-set rank");
    min_sv = std::min(min_sv, sv(std::min<int>(need, sv.size()) - 1));
  }
  if (out.level_residual > tol_level)
    fail(ErrorCode::NotInLevelSet, "section leaves the zero level set");
  out.transversality_gap = std::isfinite(min_sv) ? min_sv : 0.0;

  Scenario R;
  R.name = S.name + "_reduced";
  R.chart = model;
  const MatrixField amb_w = S.forms.omega_at;
  const VectorField amb_e = S.forms.eta_at;
  R.forms.omega_at = [amb_w, param, model](const Vec& u) {
    const Mat J = jacobian_raw(model, param, u);
    Mat W = J.transpose() * amb_w(param(u)) * J;
    W = 0.5 * (W - W.transpose().eval());
    return W;
  };
  R.forms.eta_at = [amb_e, param, model](const Vec& u) {
    const Mat J = jacobian_raw(model, param, u);
    return Vec(J.transpose() * amb_e(param(u)));
  };
  R.foliation = FoliationSpec{0, {}, "kernel"};
  R.notes = "pullback along a level-set section transverse to the orbits";
  out.reduced = std::move(R);
  return out;
}

}  // namespace cosym
