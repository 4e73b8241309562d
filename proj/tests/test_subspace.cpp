#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "cosym/subspace.hpp"

using namespace cosym;

TEST_CASE("numerical rank on exact cases") {
  Mat A = Mat::Zero(3, 3);
  CHECK(numerical_rank(A, 1e-9) == 0);
  A(0, 0) = 1.0;
  CHECK(numerical_rank(A, 1e-9) == 1);
  A(1, 1) = 2.0;
  A(2, 2) = -0.5;
  CHECK(numerical_rank(A, 1e-9) == 3);

  Mat B(3, 2);
  B << 1, 2, 2, 4, 3, 6;  // second column is twice the first
  CHECK(numerical_rank(B, 1e-9) == 1);
}

TEST_CASE("rank tolerance is relative to the largest singular value") {
  Mat A = Mat::Zero(2, 2);
  A(0, 0) = 1e8;
  A(1, 1) = 1e-4;  // sizable on its own, tiny against 1e8
  CHECK(numerical_rank(A, 1e-9) == 1);   // cutoff 1e8 * 1e-9 = 0.1
  CHECK(numerical_rank(A, 1e-13) == 2);  // cutoff 1e-5 lets the small value count
  CHECK(numerical_rank(A, 1e-3) == 1);
}

TEST_CASE("kernel basis is orthonormal and annihilated") {
  Mat A(2, 4);
  A << 1, 0, 1, 0,
       0, 1, 0, 1;
  const SubspaceBasis K = kernel_basis(A, 1e-9);
  REQUIRE(K.rank() == 2);
  CHECK((A * K.basis).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((K.basis.transpose() * K.basis - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("full-rank matrix has empty kernel") {
  Mat A(3, 3);
  A << 2, 0, 1, 0, 1, 0, 1, 0, 1;
  const SubspaceBasis K = kernel_basis(A, 1e-9);
  CHECK(K.rank() == 0);
}

TEST_CASE("subspace relation on coordinate planes") {
  Mat U(3, 2), V(3, 2), W(3, 1);
  U << 1, 0, 0, 1, 0, 0;  // span(e1, e2)
  V << 0, 0, 1, 0, 0, 1;  // span(e2, e3)
  W << 1, 0, 0;           // span(e1)
  const auto su = column_span(U, 1e-9);
  const auto sv = column_span(V, 1e-9);
  const auto sw = column_span(W, 1e-9);

  CHECK(subspace_relation(su, sv, 1e-8) == SubspaceRelation::Incomparable);
  CHECK(subspace_relation(sw, su, 1e-8) == SubspaceRelation::UcontainedInV_strict);
  CHECK(subspace_relation(su, sw, 1e-8) == SubspaceRelation::VcontainedInU_strict);
  CHECK(subspace_relation(su, su, 1e-8) == SubspaceRelation::Equal);

  const auto sum = span_sum(su, sv);
  CHECK(sum.rank() == 3);
  const auto inter = span_intersection(su, sv);
  REQUIRE(inter.rank() == 1);
  // Intersection should be span(e2).
  Vec e2 = Vec::Zero(3);
  e2(1) = 1.0;
  CHECK(inter.contains(e2, 1e-8));
}

TEST_CASE("relation survives a change of basis") {
  std::mt19937 rng(99);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    Mat M(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) M(i, j) = g(rng);
    const Mat Q = Eigen::HouseholderQR<Mat>(M).householderQ();

    Mat U = Q.leftCols(3);
    Mat V = Q.leftCols(2);
    // Mix the columns of U without changing its span.
    Mat mix(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) mix(i, j) = g(rng);
    mix += 3.0 * Mat::Identity(3, 3);
    const auto su = column_span(U * mix, 1e-9);
    const auto sv = column_span(V, 1e-9);
    CHECK(subspace_relation(sv, su, 1e-8) == SubspaceRelation::UcontainedInV_strict);
    CHECK(subspace_relation(su, column_span(U, 1e-9), 1e-8) == SubspaceRelation::Equal);
  }
}

TEST_CASE("span sum and intersection dimensions are consistent") {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 6;
    Mat A(d, 3), B(d, 2);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < 3; ++j) A(i, j) = g(rng);
      for (int j = 0; j < 2; ++j) B(i, j) = g(rng);
    }
    const auto sa = column_span(A, 1e-9);
    const auto sb = column_span(B, 1e-9);
    const auto sum = span_sum(sa, sb);
    const auto inter = span_intersection(sa, sb);
    CHECK(sum.rank() + inter.rank() == sa.rank() + sb.rank());
    for (int j = 0; j < inter.rank(); ++j) {
      CHECK(sa.contains(inter.basis.col(j), 1e-8));
      CHECK(sb.contains(inter.basis.col(j), 1e-8));
    }
  }
}

TEST_CASE("contains and residual behave on edge cases") {
  Mat U(3, 1);
  U << 0, 0, 1;
  const auto su = column_span(U, 1e-9);
  Vec v = Vec::Zero(3);
  CHECK(su.contains(v, 1e-8));  // zero vector lies in every subspace
  v(2) = 5.0;
  CHECK(su.contains(v, 1e-8));
  v(0) = 1e-3;
  CHECK_FALSE(su.contains(v, 1e-8));

  const SubspaceBasis empty = kernel_basis(Mat::Identity(3, 3), 1e-9);
  CHECK(empty.rank() == 0);
  CHECK(subspace_relation(empty, empty, 1e-8) == SubspaceRelation::Equal);
  CHECK(subspace_relation(empty, su, 1e-8) == SubspaceRelation::UcontainedInV_strict);
}
