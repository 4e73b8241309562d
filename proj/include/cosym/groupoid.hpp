#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "cosym/diff.hpp"
#include "cosym/error.hpp"
#include "cosym/geometry.hpp"
#include "cosym/scenario.hpp"
#include "cosym/subspace.hpp"

namespace cosym {

// ===========================================================================
// Quasi-isomorphism check (anchor against the flat kernel)
// ===========================================================================

struct QuasiIsoResult {
  bool rank_ok = false;       // spanning fields independent at the point
  bool kernel_match = false;  // span equals ker(flat) at the point
  SubspaceRelation relation = SubspaceRelation::Incomparable;

  bool passes() const { return rank_ok && kernel_match; }
};

// Pointwise check that the foliation's anchor hits the flat kernel exactly:
// the spanning fields stay independent and their span equals ker(L).
inline QuasiIsoResult quasi_iso_check(const Scenario& S, const Vec& x,
                                      double tol_subspace = kDefaultSubspaceTol,
                                      double tol_rank = kDefaultRankTol) {
  if (!S.foliation) fail(ErrorCode::NoFoliation, "scenario has no foliation data");
  const FoliationSpec& F = *S.foliation;
  const int d = S.chart.dim;

  Mat V(d, F.spanning_fields.size());
  for (size_t j = 0; j < F.spanning_fields.size(); ++j)
    V.col(j) = F.spanning_fields[j](x);

  QuasiIsoResult out;
  const int vrank = V.cols() == 0 ? 0 : numerical_rank(V, 1e-8);
  out.rank_ok = (vrank == F.rank && F.rank == static_cast<int>(F.spanning_fields.size()));

  const SubspaceBasis span = column_span(V, 1e-8);
  const SubspaceBasis ker =
      kernel_basis(lichnerowicz_matrix(tensor_at(S.forms, x)), tol_rank);
  out.relation = subspace_relation(span, ker, tol_subspace);
  out.kernel_match = (out.relation == SubspaceRelation::Equal);
  return out;
}

// ===========================================================================
// Basic-form check along the foliation
// ===========================================================================

struct BasicFormReport {
  double omega_horizontal = 0.0;   // |i_v omega| over spanning fields and grid
  double eta_horizontal = 0.0;     // |eta(v)|
  double omega_invariance = 0.0;   // |d(i_v omega)| (Cartan, with d omega checked separately)
  double eta_invariance = 0.0;     // |d(eta(v))|
  int point_samples = 0;

  double worst() const {
    return std::max({omega_horizontal, eta_horizontal, omega_invariance, eta_invariance});
  }
  bool passes(double tol) const { return worst() <= tol; }
};

// Both forms are basic for the foliation: horizontal (the spanning fields feed
// to zero) and invariant along the leaves.  Invariance is measured through the
// Cartan rule: with d omega = d eta = 0, the Lie derivative along v reduces to
// d(i_v omega) and d(eta(v)).
inline BasicFormReport basic_form_check(const Scenario& S, std::int64_t sample_cap = 4000) {
  if (!S.foliation) fail(ErrorCode::NoFoliation, "scenario has no foliation data");
  const FoliationSpec& F = *S.foliation;
  const ChartedManifold& M = S.chart;

  BasicFormReport rep;
  const std::int64_t n = M.grid_size();
  const std::int64_t stride = std::max<std::int64_t>(1, (n + sample_cap - 1) / sample_cap);
  for (std::int64_t f = 0; f < n; f += stride) {
    const Vec x = M.grid_point(f);
    ++rep.point_samples;
    for (const auto& field : F.spanning_fields) {
      const PointTensor pt = tensor_at(S.forms, x);
      rep.omega_horizontal = std::max(
          rep.omega_horizontal, pt.interior_omega(field(x)).cwiseAbs().maxCoeff());
      rep.eta_horizontal =
          std::max(rep.eta_horizontal, std::abs(pt.eta.dot(field(x))));

      const MatrixField omega_at = S.forms.omega_at;
      const VectorField eta_at = S.forms.eta_at;
      VectorField iv_omega = [omega_at, field](const Vec& y) {
        return Vec(-(omega_at(y) * field(y)));
      };
      ScalarField eta_v = [eta_at, field](const Vec& y) {
        return eta_at(y).dot(field(y));
      };
      rep.omega_invariance =
          std::max(rep.omega_invariance, one_form_d_residual(M, iv_omega, x));
      rep.eta_invariance =
          std::max(rep.eta_invariance, gradient(M, eta_v, x).norm());
    }
  }
  return rep;
}

// ===========================================================================
// Orbit invariance along leaf flows
// ===========================================================================

struct OrbitInvarianceResult {
  bool passes = true;
  int flow_points = 0;
  int failures = 0;
  double max_drift = 0.0;  // worst kernel-match defect along the flows (0/1 scale)
};

// Flows random words in the spanning fields from sampled starting points and
// re-runs the pointwise kernel check at each step.  Leaves must stay inside
// the chart (periodic directions wrap; a non-periodic exit is an error).
inline OrbitInvarianceResult orbit_invariance_check(const Scenario& S,
                                                    int start_points = 10,
                                                    int steps_per_flow = 20,
                                                    unsigned seed = 777,
                                                    double tol_subspace = kDefaultSubspaceTol) {
  if (!S.foliation) fail(ErrorCode::NoFoliation, "scenario has no foliation data");
  const FoliationSpec& F = *S.foliation;
  const ChartedManifold& M = S.chart;
  std::mt19937 rng(seed);

  OrbitInvarianceResult out;
  if (F.spanning_fields.empty()) {
    // Zero foliation: the orbit is the point itself.
    for (int s = 0; s < start_points; ++s) {
      const Vec x = M.random_point(rng);
      const auto q = quasi_iso_check(S, x, tol_subspace);
      ++out.flow_points;
      if (!q.passes()) ++out.failures;
    }
    out.passes = (out.failures == 0);
    out.max_drift = out.failures > 0 ? 1.0 : 0.0;
    return out;
  }

  std::uniform_int_distribution<int> pick(0, static_cast<int>(F.spanning_fields.size()) - 1);
  std::uniform_real_distribution<double> tstep(0.02, 0.08);
  for (int s = 0; s < start_points; ++s) {
    Vec x = M.random_point(rng);
    for (int step = 0; step < steps_per_flow; ++step) {
      const VectorField& v = F.spanning_fields[pick(rng)];
      x = rk4_step(M, v, x, tstep(rng));
      if (!M.in_bounds(x, 1e-9))
        fail(ErrorCode::FlowLeftChart, "leaf flow left a non-periodic chart direction");
      x = M.wrap(x);
      const auto q = quasi_iso_check(S, x, tol_subspace);
      ++out.flow_points;
      if (!q.passes()) ++out.failures;
    }
  }
  out.passes = (out.failures == 0);
  out.max_drift = out.failures > 0 ? 1.0 : 0.0;
  return out;
}

// ===========================================================================
// Arrow space of the product models
// ===========================================================================

// Arrows of the leaf equivalence on a product model: two angle blocks (source
// and target leaf coordinates), the planar block, and the transverse circle.
// Source and target forget one angle block each.
struct ArrowSpace {
  ChartedManifold chart;
  PointMap source;
  PointMap target;
  MatrixField omega_tilde;  // source pullback of the base omega
  VectorField eta_tilde;    // source pullback of the base eta
  int k = 0;
  int base_dim = 0;
};

inline ArrowSpace make_arrow_space(const Scenario& S) {
  if (!S.cn_shape)
    fail(ErrorCode::NotSubmersionGroupoidShape,
         "arrow-space check needs a product-model scenario");
  const int n = S.cn_shape->n, k = S.cn_shape->k;
  const int m = n - k;
  const int bd = S.chart.dim;       // k + 2m + 1
  const int ad = bd + k;            // extra angle block

  ArrowSpace A;
  A.k = k;
  A.base_dim = bd;
  Vec lo(ad), hi(ad);
  std::vector<bool> per(ad);
  std::vector<int> counts(ad);
  for (int j = 0; j < k; ++j) {
    lo(j) = S.chart.lower(j);
    hi(j) = S.chart.upper(j);
    per[j] = true;
    counts[j] = S.chart.grid_counts[j];
    lo(k + j) = S.chart.lower(j);
    hi(k + j) = S.chart.upper(j);
    per[k + j] = true;
    counts[k + j] = S.chart.grid_counts[j];
  }
  for (int j = 0; j < 2 * m + 1; ++j) {
    lo(2 * k + j) = S.chart.lower(k + j);
    hi(2 * k + j) = S.chart.upper(k + j);
    per[2 * k + j] = S.chart.periodic[k + j];
    counts[2 * k + j] = S.chart.grid_counts[k + j];
  }
  A.chart = ChartedManifold::box(lo, hi, per, counts);

  // source forgets the first angle block, target the second.
  A.source = [k, bd](const Vec& a) {
    Vec x(bd);
    x.head(k) = a.segment(k, k);
    x.tail(bd - k) = a.tail(bd - k);
    return x;
  };
  A.target = [k, bd](const Vec& a) {
    Vec x(bd);
    x.head(k) = a.head(k);
    x.tail(bd - k) = a.tail(bd - k);
    return x;
  };

  const MatrixField base_w = S.forms.omega_at;
  const VectorField base_e = S.forms.eta_at;
  const PointMap src = A.source;
  const ChartedManifold achart = A.chart;
  A.omega_tilde = [base_w, src, achart](const Vec& a) {
    const Mat J = jacobian_raw(achart, src, a);
    Mat W = J.transpose() * base_w(src(a)) * J;
    W = 0.5 * (W - W.transpose().eval());
    return W;
  };
  A.eta_tilde = [base_e, src, achart](const Vec& a) {
    const Mat J = jacobian_raw(achart, src, a);
    return Vec(J.transpose() * base_e(src(a)));
  };
  return A;
}

struct ArrowSpaceReport {
  double pullback_mismatch = 0.0;  // |s^* omega - t^* omega| over samples
  int kernel_checks = 0;
  int kernel_failures = 0;

  bool passes(double tol_pullback = 1e-9) const {
    return pullback_mismatch <= tol_pullback && kernel_failures == 0;
  }
};

// Split out so tests can perturb the arrow forms and watch the first gate fail.
inline ArrowSpaceReport arrow_space_verify(const Scenario& S, const ArrowSpace& A,
                                           int samples, unsigned seed,
                                           double tol_subspace, double tol_rank) {
  const MatrixField base_w = S.forms.omega_at;
  const VectorField base_e = S.forms.eta_at;
  std::mt19937 rng(seed);

  ArrowSpaceReport rep;
  for (int i = 0; i < samples; ++i) {
    const Vec a = A.chart.random_point(rng);

    const Mat Js = jacobian_raw(A.chart, A.source, a);
    const Mat Jt = jacobian_raw(A.chart, A.target, a);

    const Mat ws = A.omega_tilde(a);
    const Mat wt = Jt.transpose() * base_w(A.target(a)) * Jt;
    rep.pullback_mismatch =
        std::max(rep.pullback_mismatch, (ws - wt).cwiseAbs().maxCoeff());
    const Vec es = A.eta_tilde(a);
    const Vec et = Jt.transpose() * base_e(A.target(a));
    rep.pullback_mismatch =
        std::max(rep.pullback_mismatch, (es - et).cwiseAbs().maxCoeff());

    PointTensor pt;
    pt.dim = A.chart.dim;
    pt.omega = ws;
    pt.eta = es;
    const SubspaceBasis ker_flat = kernel_basis(lichnerowicz_matrix(pt), tol_rank);
    const SubspaceBasis ker_s = kernel_basis(Js, 1e-8);
    const SubspaceBasis ker_t = kernel_basis(Jt, 1e-8);
    const SubspaceBasis sum = span_sum(ker_s, ker_t);
    ++rep.kernel_checks;
    if (subspace_relation(sum, ker_flat, tol_subspace) != SubspaceRelation::Equal)
      ++rep.kernel_failures;
  }
  return rep;
}

// Verification on the arrow space: both structural maps pull the base forms
// back to the same pair, and the kernel of the induced flat map splits as
// ker(ds) + ker(dt) at sampled arrows.
inline ArrowSpaceReport arrow_space_check(const Scenario& S, int samples = 50,
                                          unsigned seed = 4242,
                                          double tol_subspace = kDefaultSubspaceTol,
                                          double tol_rank = kDefaultRankTol) {
  ArrowSpace A = make_arrow_space(S);
  return arrow_space_verify(S, A, samples, seed, tol_subspace, tol_rank);
}

}  // namespace cosym
