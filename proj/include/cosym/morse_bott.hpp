#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cosym/diff.hpp"
#include "cosym/error.hpp"
#include "cosym/parallel.hpp"
#include "cosym/scenario.hpp"
#include "cosym/subspace.hpp"

namespace cosym {

struct CriticalComponent {
  Vec representative;
  int point_count = 0;
  int tangent_dim = 0;
  int index = 0;    // negative eigenvalues of the normal Hessian
  int nullity = 0;  // near-zero eigenvalues of the normal Hessian
  std::vector<double> normal_eigenvalues;

  bool nondegenerate() const { return nullity == 0; }
};

struct MorseBottReport {
  int component = 0;        // which moment component was analyzed
  double grad_max = 0.0;    // largest gradient norm over the grid
  double crit_threshold = 0.0;
  std::vector<CriticalComponent> critical;

  bool all_nondegenerate() const {
    return std::all_of(critical.begin(), critical.end(),
                       [](const CriticalComponent& c) { return c.nondegenerate(); });
  }
  bool all_even_index() const {
    return std::all_of(critical.begin(), critical.end(),
                       [](const CriticalComponent& c) { return c.index % 2 == 0; });
  }
};

// Critical locus analysis of one moment component over the grid:
//  1. flag grid points where |grad| <= tol_crit_rel * max |grad|,
//  2. cluster flagged points by grid adjacency (wrapping on periodic axes),
//  3. per cluster, estimate the tangent space of the critical set from the
//     principal directions of the point cloud, project the finite-difference
//     Hessian onto the normal directions, and read off index and nullity with
//     the relative eigenvalue cutoff.
inline MorseBottReport morse_bott_analysis(const Scenario& S, int component = 0,
                                           double tol_crit_rel = 1e-4,
                                           double tol_eig_rel = 1e-6) {
  if (!S.action) fail(ErrorCode::NoAction, "scenario has no torus action");
  if (!S.action->has_moment())
    fail(ErrorCode::NoMomentMap, "scenario has no moment map");
  const TorusActionSpec& A = *S.action;
  if (component < 0 || component >= A.moment_components())
    fail(ErrorCode::OutOfRange, "moment component out of range");
  const ChartedManifold& M = S.chart;
  const PointMap mu = A.moment_map;
  ScalarField f = [mu, component](const Vec& x) { return mu(x)(component); };

  MorseBottReport rep;
  rep.component = component;

  const std::int64_t n = M.grid_size();
  std::vector<double> gnorm(n);
  parallel_for(n, [&](std::int64_t i, int) {
    gnorm[i] = gradient(M, f, M.grid_point(i)).norm();
  });
  for (std::int64_t i = 0; i < n; ++i) rep.grad_max = std::max(rep.grad_max, gnorm[i]);
  rep.crit_threshold = tol_crit_rel * rep.grad_max;

  std::vector<char> flagged(n, 0);
  std::int64_t flag_count = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    if (gnorm[i] <= rep.crit_threshold) {
      flagged[i] = 1;
      ++flag_count;
    }
  }
  if (flag_count == 0)
    fail(ErrorCode::NoCriticalPoints, "no critical grid points for this component");

  // Cluster by grid adjacency.
  std::vector<int> comp_of(n, -1);
  int n_comps = 0;
  for (std::int64_t seed = 0; seed < n; ++seed) {
    if (!flagged[seed] || comp_of[seed] >= 0) continue;
    const int cid = n_comps++;
    std::queue<std::int64_t> q;
    q.push(seed);
    comp_of[seed] = cid;
    while (!q.empty()) {
      const std::int64_t cur = q.front();
      q.pop();
      std::vector<int> idx;
      M.decode(cur, idx);
      for (int axis = 0; axis < M.dim; ++axis) {
        for (int dir : {-1, 1}) {
          std::vector<int> nb;
          if (!M.neighbor(idx, axis, dir, nb)) continue;
          const std::int64_t fl = M.encode(nb);
          if (flagged[fl] && comp_of[fl] < 0) {
            comp_of[fl] = cid;
            q.push(fl);
          }
        }
      }
    }
  }

  for (int cid = 0; cid < n_comps; ++cid) {
    std::vector<Vec> pts;
    for (std::int64_t i = 0; i < n; ++i)
      if (comp_of[i] == cid) pts.push_back(M.grid_point(i));

    CriticalComponent cc;
    cc.point_count = static_cast<int>(pts.size());

    Vec centroid = Vec::Zero(M.dim);
    for (const auto& p : pts) centroid += p;
    centroid /= static_cast<double>(pts.size());

    // Representative: cluster point closest to the centroid.
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
      const double d = (p - centroid).norm();
      if (d < best) {
        best = d;
        cc.representative = p;
      }
    }

    // Tangent estimate from the principal directions of the cluster.
    Mat T(M.dim, 0);
    if (pts.size() > 1) {
      Mat C(M.dim, pts.size());
      for (size_t i = 0; i < pts.size(); ++i) C.col(i) = pts[i] - centroid;
      Eigen::JacobiSVD<Mat> svd(C, Eigen::ComputeFullU);
      const auto& sv = svd.singularValues();
      int td = 0;
      for (int i = 0; i < sv.size(); ++i)
        if (sv(i) >= 0.1 * sv(0) && sv(0) > 0.0) ++td;
      T = svd.matrixU().leftCols(td);
    }
    cc.tangent_dim = static_cast<int>(T.cols());

    // Normal directions and the projected Hessian.
    Mat U(M.dim, M.dim);
    U.leftCols(T.cols()) = T;
    {
      // Complete T to an orthonormal basis via full SVD of the projector.
      Mat P = Mat::Identity(M.dim, M.dim);
      if (T.cols() > 0) P -= T * T.transpose();
      Eigen::JacobiSVD<Mat> svd(P, Eigen::ComputeFullU);
      U.rightCols(M.dim - T.cols()) =
          svd.matrixU().leftCols(M.dim - T.cols());
    }
    const Mat N = U.rightCols(M.dim - T.cols());

    const Mat H = hessian(M, f, cc.representative);
    const Mat Hn = N.transpose() * H * N;
    Eigen::SelfAdjointEigenSolver<Mat> es(Hn);
    const Vec ev = es.eigenvalues();
    double emax = 0.0;
    for (int i = 0; i < ev.size(); ++i) emax = std::max(emax, std::abs(ev(i)));
    const double cut = tol_eig_rel * emax;
    for (int i = 0; i < ev.size(); ++i) {
      cc.normal_eigenvalues.push_back(ev(i));
      if (ev(i) < -cut) ++cc.index;
      else if (std::abs(ev(i)) <= cut) ++cc.nullity;
    }
    if (emax == 0.0) {
      cc.index = 0;
      cc.nullity = static_cast<int>(ev.size());
    }
    rep.critical.push_back(std::move(cc));
  }
  return rep;
}

}  // namespace cosym
