#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "cosym/error.hpp"
#include "cosym/subspace.hpp"

namespace cosym {

// Pointwise data of a 2-form and a 1-form on R^dim:
//   omega(i,j) = value of the 2-form on (e_i, e_j)  (antisymmetric),
//   eta(i)     = value of the 1-form on e_i.
struct PointTensor {
  int dim = 0;
  Mat omega;
  Vec eta;

  static PointTensor make(const Mat& omega, const Vec& eta,
                          double antisym_tol = 1e-12) {
    PointTensor pt;
    pt.dim = static_cast<int>(eta.size());
    pt.omega = omega;
    pt.eta = eta;
    pt.validate(antisym_tol);
    return pt;
  }

  void validate(double antisym_tol = 1e-12) const {
    if (dim < 1) fail(ErrorCode::ShapeMismatch, "dim must be >= 1");
    if (omega.rows() != dim || omega.cols() != dim)
      fail(ErrorCode::ShapeMismatch, "omega must be dim x dim");
    if (eta.size() != dim) fail(ErrorCode::ShapeMismatch, "eta must have dim entries");
    const double skew = (omega + omega.transpose()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, omega.cwiseAbs().maxCoeff());
    if (skew > antisym_tol * scale)
      fail(ErrorCode::ShapeMismatch, "omega is not antisymmetric");
  }

  // omega evaluated on a pair of vectors.
  double omega_eval(const Vec& u, const Vec& v) const {
    return u.dot(omega * v);
  }

  // 1-form obtained by feeding v into the first slot of omega: (i_v omega)_j.
  Vec interior_omega(const Vec& v) const { return -(omega * v); }
};

// Matrix of the map v |-> i_v omega + eta(v) eta in the standard basis.
// With (i_v omega)_j = (-Omega v)_j this is L = -Omega + eta eta^T.
inline Mat lichnerowicz_matrix(const PointTensor& pt) {
  return -pt.omega + pt.eta * pt.eta.transpose();
}

namespace detail {

// Runs f over all permutations of {0..m-1}, passing the permutation and its sign.
template <typename F>
void for_each_permutation(int m, F&& f) {
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  // Track sign incrementally is awkward with std::next_permutation; recompute
  // by counting inversions (m <= 7, negligible cost).
  do {
    int inv = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (perm[i] > perm[j]) ++inv;
    f(perm, (inv % 2 == 0) ? 1.0 : -1.0);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace detail

// Value of eta ^ omega^r on the first 2r+1 frame vectors, using the
// determinant convention (dx ^ dy)(e_x, e_y) = 1:
//   (a_1 ^ ... ^ a_s)(v_1..v_m) =
//     1/(prod deg_k!) * sum_{sigma in S_m} sign(sigma) prod_k a_k(v_sigma(block_k)).
// Here the factor list is (eta, omega, ..., omega) with degrees (1, 2, ..., 2).
inline double wedge_top_value(const PointTensor& pt, int r,
                              const std::vector<Vec>& frame) {
  if (r < 0) fail(ErrorCode::OutOfRange, "r must be >= 0");
  const int m = 2 * r + 1;
  if (m > pt.dim)
    fail(ErrorCode::FrameTooSmall, "2r+1 exceeds dim");
  if (static_cast<int>(frame.size()) < m)
    fail(ErrorCode::FrameTooSmall, "frame has fewer than 2r+1 vectors");
  for (int i = 0; i < m; ++i)
    if (frame[i].size() != pt.dim)
      fail(ErrorCode::ShapeMismatch, "frame vector has wrong dimension");

  // Precompute pairwise omega values and eta values on the used frame vectors.
  Mat W(m, m);
  Vec ev(m);
  for (int i = 0; i < m; ++i) {
    ev(i) = pt.eta.dot(frame[i]);
    for (int j = 0; j < m; ++j) W(i, j) = pt.omega_eval(frame[i], frame[j]);
  }

  double sum = 0.0;
  detail::for_each_permutation(m, [&](const std::vector<int>& s, double sign) {
    double term = sign * ev(s[0]);
    for (int k = 0; k < r && term != 0.0; ++k)
      term *= W(s[1 + 2 * k], s[2 + 2 * k]);
    sum += term;
  });
  return sum / std::pow(2.0, r);
}

}  // namespace cosym
