#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "cosym/error.hpp"

namespace cosym {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kDefaultRankTol = 1e-9;
inline constexpr double kDefaultSubspaceTol = 1e-8;

// A linear subspace of R^dim given by an orthonormal column basis.
// rank() == 0 is the zero subspace (basis has zero columns).
struct SubspaceBasis {
  int dim = 0;
  Mat basis;  // dim x rank, orthonormal columns

  int rank() const { return static_cast<int>(basis.cols()); }

  // Orthogonal projection of v onto the subspace.
  Vec project(const Vec& v) const {
    if (rank() == 0) return Vec::Zero(dim);
    return basis * (basis.transpose() * v);
  }

  // Distance from v to the subspace.
  double residual(const Vec& v) const { return (v - project(v)).norm(); }

  bool contains(const Vec& v, double tol = kDefaultSubspaceTol) const {
    return residual(v) <= tol;
  }

  static SubspaceBasis zero(int dim) {
    SubspaceBasis s;
    s.dim = dim;
    s.basis = Mat::Zero(dim, 0);
    return s;
  }

  static SubspaceBasis full(int dim) {
    SubspaceBasis s;
    s.dim = dim;
    s.basis = Mat::Identity(dim, dim);
    return s;
  }
};

// Numerical rank of A: singular values sigma_i > tol_rank * sigma_max count.
// A zero matrix has rank 0.
inline int numerical_rank(const Mat& A, double tol_rank = kDefaultRankTol) {
  if (A.rows() == 0 || A.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(A);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  if (smax <= 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol_rank * smax) ++r;
  return r;
}

// Orthonormal basis of ker(A) via SVD.  The kernel directions are the right
// singular vectors whose singular values fall at or below tol_rank * sigma_max
// (relative rule; an exactly zero A yields the full space).
inline SubspaceBasis kernel_basis(const Mat& A, double tol_rank = kDefaultRankTol) {
  const int n = static_cast<int>(A.cols());
  if (n == 0) return SubspaceBasis::zero(0);
  if (A.rows() == 0) return SubspaceBasis::full(n);
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  if (smax > 0.0) {
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > tol_rank * smax) ++rank;
  }
  SubspaceBasis out;
  out.dim = n;
  out.basis = svd.matrixV().rightCols(n - rank);
  return out;
}

// Orthonormal basis of the column span of A (same relative singular value rule).
inline SubspaceBasis column_span(const Mat& A, double tol_rank = kDefaultRankTol) {
  const int n = static_cast<int>(A.rows());
  SubspaceBasis out;
  out.dim = n;
  if (A.cols() == 0) {
    out.basis = Mat::Zero(n, 0);
    return out;
  }
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  int rank = 0;
  if (smax > 0.0) {
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > tol_rank * smax) ++rank;
  }
  out.basis = svd.matrixU().leftCols(rank);
  return out;
}

enum class SubspaceRelation {
  Equal,
  UcontainedInV_strict,
  VcontainedInU_strict,
  Incomparable,
};

inline const char* to_string(SubspaceRelation r) {
  switch (r) {
    case SubspaceRelation::Equal: return "Equal";
    case SubspaceRelation::UcontainedInV_strict: return "UcontainedInV_strict";
    case SubspaceRelation::VcontainedInU_strict: return "VcontainedInU_strict";
    case SubspaceRelation::Incomparable: return "Incomparable";
  }
  return "?";
}

// Containment U <= V tested columnwise through the projector of V.
inline bool subspace_contained(const SubspaceBasis& U, const SubspaceBasis& V,
                               double tol = kDefaultSubspaceTol) {
  if (U.dim != V.dim) fail(ErrorCode::ShapeMismatch, "subspace ambient dims differ");
  for (int j = 0; j < U.rank(); ++j) {
    if (V.residual(U.basis.col(j)) > tol) return false;
  }
  return true;
}

// Classifies the pair of subspaces; strict containments require a dimension gap.
inline SubspaceRelation subspace_relation(const SubspaceBasis& U, const SubspaceBasis& V,
                                          double tol = kDefaultSubspaceTol) {
  const bool uv = subspace_contained(U, V, tol);
  const bool vu = subspace_contained(V, U, tol);
  if (uv && vu) return SubspaceRelation::Equal;
  if (uv && U.rank() < V.rank()) return SubspaceRelation::UcontainedInV_strict;
  if (vu && V.rank() < U.rank()) return SubspaceRelation::VcontainedInU_strict;
  return SubspaceRelation::Incomparable;
}

// Span of the union: orthonormalize the concatenated bases.
inline SubspaceBasis span_sum(const SubspaceBasis& U, const SubspaceBasis& V,
                              double tol_rank = kDefaultRankTol) {
  if (U.dim != V.dim) fail(ErrorCode::ShapeMismatch, "subspace ambient dims differ");
  Mat cat(U.dim, U.rank() + V.rank());
  cat << U.basis, V.basis;
  return column_span(cat, tol_rank);
}

// Intersection via the kernel of the sum of complementary projectors:
// x lies in U and V exactly when ((I-P_U) + (I-P_V)) x = 0.
inline SubspaceBasis span_intersection(const SubspaceBasis& U, const SubspaceBasis& V,
                                       double tol_rank = 1e-8) {
  if (U.dim != V.dim) fail(ErrorCode::ShapeMismatch, "subspace ambient dims differ");
  const int n = U.dim;
  Mat Q = 2.0 * Mat::Identity(n, n);
  if (U.rank() > 0) Q -= U.basis * U.basis.transpose();
  if (V.rank() > 0) Q -= V.basis * V.basis.transpose();
  // Q is PSD with spectrum in [0,2]; its kernel is the intersection.  The
  // relative rank rule needs an absolute floor here because Q's top singular
  // value is O(1) by construction.
  return kernel_basis(Q, tol_rank);
}

}  // namespace cosym
