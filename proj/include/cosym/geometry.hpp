#pragma once

#include <atomic>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cosym/chart.hpp"
#include "cosym/diff.hpp"
#include "cosym/error.hpp"
#include "cosym/parallel.hpp"
#include "cosym/point_tensor.hpp"
#include "cosym/subspace.hpp"

namespace cosym {

inline constexpr double kEtaFloor = 1e-10;

inline PointTensor tensor_at(const FormPair& F, const Vec& x) {
  PointTensor pt;
  pt.dim = static_cast<int>(x.size());
  pt.omega = F.omega_at(x);
  pt.eta = F.eta_at(x);
  return pt;
}

// ===========================================================================
// Closedness verification
// ===========================================================================

struct ClosednessReport {
  double omega_residual = 0.0;  // max cyclic-sum residual of d(omega)
  double eta_residual = 0.0;    // max curl residual of d(eta)

  bool passes(double tol) const {
    return omega_residual <= tol && eta_residual <= tol;
  }
};

// Max exterior-derivative residuals of both forms over the chart grid.
inline ClosednessReport verify_closed(const ChartedManifold& M, const FormPair& F) {
  M.validate();
  for (int i = 0; i < M.dim; ++i) check_step(M, default_step(M, i));
  const std::int64_t n = M.grid_size();
  const int slots = parallel_slots(n);
  std::vector<double> womega(slots, 0.0), weta(slots, 0.0);
  parallel_for(n, [&](std::int64_t f, int w) {
    const Vec x = M.grid_point(f);
    womega[w] = std::max(womega[w], two_form_d_residual(M, F.omega_at, x));
    weta[w] = std::max(weta[w], one_form_d_residual(M, F.eta_at, x));
  });
  ClosednessReport rep;
  for (int w = 0; w < slots; ++w) {
    rep.omega_residual = std::max(rep.omega_residual, womega[w]);
    rep.eta_residual = std::max(rep.eta_residual, weta[w]);
  }
  return rep;
}

// ===========================================================================
// Structure classification
// ===========================================================================

enum class StructureKind { Cosymplectic, Precosymplectic, Degenerate };

inline const char* to_string(StructureKind k) {
  switch (k) {
    case StructureKind::Cosymplectic: return "Cosymplectic";
    case StructureKind::Precosymplectic: return "Precosymplectic";
    case StructureKind::Degenerate: return "Degenerate";
  }
  return "?";
}

struct StructureClassification {
  StructureKind kind = StructureKind::Degenerate;
  int n = -1;                // kind == Cosymplectic: dim == 2n+1
  int r = -1;                // kind == Precosymplectic: rank(omega) == 2r
  std::string reason;        // kind == Degenerate
  int rank_of_flat = -1;     // constant rank of L across the grid (-1 if varying)
  double omega_residual = 0.0;
  double eta_residual = 0.0;

  bool is_cosymplectic() const { return kind == StructureKind::Cosymplectic; }
  bool is_precosymplectic() const { return kind == StructureKind::Precosymplectic; }

  std::string describe() const {
    std::ostringstream os;
    switch (kind) {
      case StructureKind::Cosymplectic: os << "Cosymplectic(" << n << ")"; break;
      case StructureKind::Precosymplectic: os << "Precosymplectic(" << r << ")"; break;
      case StructureKind::Degenerate: os << "Degenerate(" << reason << ")"; break;
    }
    return os.str();
  }
};

// Pointwise rank census of L = -Omega + eta eta^T over the grid, then a verdict:
//  * rank(L) == dim everywhere, dim odd        -> Cosymplectic((dim-1)/2)
//  * rank(L) == rank(Omega)+1 constant < dim   -> Precosymplectic(rank(Omega)/2)
//  * rank(L) == rank(Omega) (eta dies on ker)  -> Degenerate("ker(flat)=ker(omega)")
//  * ranks vary across the grid                -> Degenerate("rank_varies")
// A vanishing eta or a failed closedness check is a precondition violation and
// throws (EtaVanishes / NotClosed).  Kernel consistency ker(L) = ker(Omega) n
// ker(eta) is spot checked on a deterministic subsample.
inline StructureClassification classify_structure(const ChartedManifold& M,
                                                  const FormPair& F,
                                                  double tol_rank = kDefaultRankTol,
                                                  double tol_closed = 1e-4) {
  M.validate();
  const ClosednessReport closed = verify_closed(M, F);
  if (!closed.passes(tol_closed)) {
    std::ostringstream os;
    os << "d-residuals (omega " << closed.omega_residual << ", eta "
       << closed.eta_residual << ") exceed " << tol_closed;
    fail(ErrorCode::NotClosed, os.str());
  }

  const std::int64_t n_pts = M.grid_size();
  const int d = M.dim;
  std::vector<std::int8_t> rank_L(n_pts), rank_O(n_pts);
  std::atomic<std::int64_t> eta_bad{-1};
  parallel_for(n_pts, [&](std::int64_t f, int) {
    const Vec x = M.grid_point(f);
    const PointTensor pt = tensor_at(F, x);
    if (pt.eta.norm() <= kEtaFloor) {
      std::int64_t expect = -1;
      eta_bad.compare_exchange_strong(expect, f);
      rank_L[f] = rank_O[f] = -1;
      return;
    }
    rank_L[f] = static_cast<std::int8_t>(
        numerical_rank(lichnerowicz_matrix(pt), tol_rank));
    rank_O[f] = static_cast<std::int8_t>(numerical_rank(pt.omega, tol_rank));
  });
  if (eta_bad.load() >= 0) {
    std::ostringstream os;
    os << "eta vanishes at grid point " << eta_bad.load();
    fail(ErrorCode::EtaVanishes, os.str());
  }

  StructureClassification out;
  out.omega_residual = closed.omega_residual;
  out.eta_residual = closed.eta_residual;

  const int rl = rank_L[0], ro = rank_O[0];
  for (std::int64_t f = 1; f < n_pts; ++f) {
    if (rank_L[f] != rl || rank_O[f] != ro) {
      out.kind = StructureKind::Degenerate;
      out.reason = "rank_varies";
      return out;
    }
  }
  out.rank_of_flat = rl;

  // Kernel consistency spot check on a deterministic stride through the grid.
  const std::int64_t samples = std::min<std::int64_t>(n_pts, 16);
  const std::int64_t stride = std::max<std::int64_t>(1, n_pts / samples);
  for (std::int64_t f = 0; f < n_pts; f += stride) {
    const Vec x = M.grid_point(f);
    const PointTensor pt = tensor_at(F, x);
    const SubspaceBasis kl = kernel_basis(lichnerowicz_matrix(pt), tol_rank);
    const SubspaceBasis inter = span_intersection(
        kernel_basis(pt.omega, tol_rank),
        kernel_basis(pt.eta.transpose(), tol_rank));
    if (subspace_relation(kl, inter) != SubspaceRelation::Equal) {
      out.kind = StructureKind::Degenerate;
      out.reason = "kernel_mismatch";
      return out;
    }
  }

  if (rl == ro) {
    // eta vanishes on ker(omega): the flat kernel equals the omega kernel, so
    // the transverse direction is missing.
    out.kind = StructureKind::Degenerate;
    out.reason = "ker(flat)=ker(omega)";
    return out;
  }
  if (rl != ro + 1) {
    out.kind = StructureKind::Degenerate;
    out.reason = "rank_gap";
    return out;
  }
  if (rl == d) {
    out.kind = StructureKind::Cosymplectic;
    out.n = (d - 1) / 2;
    return out;
  }
  out.kind = StructureKind::Precosymplectic;
  out.r = ro / 2;
  return out;
}

// ===========================================================================
// Reeb field
// ===========================================================================

// Unique v with i_v omega = 0 and eta(v) = 1, i.e. the solution of L v = eta.
inline Vec reeb_field(const ChartedManifold&, const FormPair& F, const Vec& x,
                      double tol_rank = kDefaultRankTol) {
  const PointTensor pt = tensor_at(F, x);
  const Mat L = lichnerowicz_matrix(pt);
  if (numerical_rank(L, tol_rank) < pt.dim)
    fail(ErrorCode::SingularFlat, "structure matrix is singular at the point");
  const Vec v = L.fullPivLu().solve(pt.eta);
  return v;
}

// ===========================================================================
// Basic functions and the bracket
// ===========================================================================

// f is basic at x when df kills every kernel vector of L(x).
struct BasicnessResult {
  bool basic = true;
  double worst = 0.0;  // largest |df(u)| over unit kernel vectors
};

inline BasicnessResult basicness_check(const ChartedManifold& M, const FormPair& F,
                                       const ScalarField& f, const Vec& x,
                                       double tol = 1e-6,
                                       double tol_rank = kDefaultRankTol) {
  const PointTensor pt = tensor_at(F, x);
  const SubspaceBasis ker = kernel_basis(lichnerowicz_matrix(pt), tol_rank);
  const Vec df = gradient(M, f, x);
  BasicnessResult out;
  for (int j = 0; j < ker.rank(); ++j)
    out.worst = std::max(out.worst, std::abs(df.dot(ker.basis.col(j))));
  out.basic = out.worst <= tol;
  return out;
}

struct BracketDetail {
  double value = 0.0;        // omega(v_f, v_g)
  double lie_route = 0.0;    // df(v_g), the directional-derivative route
  double discrepancy = 0.0;  // |value - lie_route|
  double solve_residual = 0.0;
  Vec v_f, v_g;
};

namespace detail {

// Minimum-norm least-squares solution of L v = b with the relative singular
// value cutoff; residual reported to the caller.
inline Vec min_norm_solve(const Mat& L, const Vec& b, double tol_rank,
                          double* residual) {
  Eigen::JacobiSVD<Mat> svd(L, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(tol_rank);
  const Vec v = svd.solve(b);
  if (residual) *residual = (L * v - b).norm();
  return v;
}

}  // namespace detail

// Bracket of basic functions through Hamiltonian-type vector fields:
// solve L v_f = df and L v_g = dg (minimum norm), return omega(v_f, v_g).
// The directional-derivative route df(v_g) is computed alongside and must
// agree; both are exposed in the detail struct.
inline BracketDetail poisson_bracket_detail(const ChartedManifold& M, const FormPair& F,
                                            const ScalarField& f, const ScalarField& g,
                                            const Vec& x, double tol_basic = 1e-6,
                                            double tol_rank = kDefaultRankTol) {
  const BasicnessResult bf = basicness_check(M, F, f, x, tol_basic, tol_rank);
  if (!bf.basic) fail(ErrorCode::NotBasic, "first argument is not basic at the point");
  const BasicnessResult bg = basicness_check(M, F, g, x, tol_basic, tol_rank);
  if (!bg.basic) fail(ErrorCode::NotBasic, "second argument is not basic at the point");

  const PointTensor pt = tensor_at(F, x);
  const Mat L = lichnerowicz_matrix(pt);
  const Vec df = gradient(M, f, x);
  const Vec dg = gradient(M, g, x);

  BracketDetail out;
  double rf = 0.0, rg = 0.0;
  out.v_f = detail::min_norm_solve(L, df, tol_rank, &rf);
  out.v_g = detail::min_norm_solve(L, dg, tol_rank, &rg);
  out.solve_residual = std::max(rf, rg);
  const double scale = std::max({1.0, df.norm(), dg.norm()});
  if (out.solve_residual > 1e-6 * scale)
    fail(ErrorCode::NoSolution, "differential is not in the range of the structure matrix");
  out.value = pt.omega_eval(out.v_f, out.v_g);
  out.lie_route = df.dot(out.v_g);
  out.discrepancy = std::abs(out.value - out.lie_route);
  return out;
}

inline double poisson_bracket(const ChartedManifold& M, const FormPair& F,
                              const ScalarField& f, const ScalarField& g, const Vec& x,
                              double tol_basic = 1e-6,
                              double tol_rank = kDefaultRankTol) {
  return poisson_bracket_detail(M, F, f, g, x, tol_basic, tol_rank).value;
}

}  // namespace cosym
