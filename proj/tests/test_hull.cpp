#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "cosym/hull.hpp"

using namespace cosym;

namespace {

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("interval hull in one dimension") {
  const auto h = convex_hull({v1(0.5), v1(-1.0), v1(0.2), v1(2.0)});
  CHECK(h.affine_rank == 1);
  REQUIRE(h.vertices.size() == 2);
  CHECK(h.violation(v1(0.0)) == 0.0);
  CHECK(h.violation(v1(-1.0)) == 0.0);
  CHECK(h.violation(v1(2.5)) > 0.4);
  CHECK(h.violation(v1(-1.5)) > 0.4);
}

TEST_CASE("single point hull") {
  const auto h = convex_hull({v2(0.3, -0.7), v2(0.3, -0.7)});
  CHECK(h.affine_rank == 0);
  REQUIRE(h.vertices.size() == 1);
  CHECK(h.violation(v2(0.3, -0.7)) < 1e-12);
  CHECK(h.violation(v2(0.3, 0.0)) > 0.5);
}

TEST_CASE("square hull with interior points") {
  std::vector<Vec> pts = {v2(0, 0), v2(1, 0), v2(1, 1), v2(0, 1),
                          v2(0.5, 0.5), v2(0.25, 0.75)};
  const auto h = convex_hull(pts);
  CHECK(h.affine_rank == 2);
  CHECK(h.vertices.size() == 4);
  CHECK(h.halfspaces.size() == 4);
  for (const auto& p : pts) CHECK(h.violation(p) <= 1e-9);
  CHECK(h.violation(v2(1.2, 0.5)) == Catch::Approx(0.2));
  CHECK(h.violation(v2(-0.3, 0.5)) == Catch::Approx(0.3));
}

TEST_CASE("collinear points in the plane collapse to an interval") {
  const auto h = convex_hull({v2(0, 0), v2(1, 1), v2(0.5, 0.5), v2(0.2, 0.2)});
  CHECK(h.affine_rank == 1);
  CHECK(h.vertices.size() == 2);
  CHECK(h.violation(v2(0.7, 0.7)) < 1e-9);
  CHECK(h.violation(v2(0.7, 0.0)) > 0.1);
  CHECK(h.violation(v2(2.0, 2.0)) > 0.5);
}

TEST_CASE("cube hull merges coplanar facets") {
  std::vector<Vec> pts;
  for (int i = 0; i < 8; ++i)
    pts.push_back(v3(i & 1 ? 1 : 0, i & 2 ? 1 : 0, i & 4 ? 1 : 0));
  pts.push_back(v3(0.5, 0.5, 0.5));
  const auto h = convex_hull(pts);
  CHECK(h.affine_rank == 3);
  CHECK(h.vertices.size() == 8);
  CHECK(h.halfspaces.size() == 6);
  for (const auto& p : pts) CHECK(h.violation(p) <= 1e-9);
  CHECK(h.violation(v3(0.5, 0.5, 1.4)) == Catch::Approx(0.4));
}

TEST_CASE("octahedron hull keeps its eight facets") {
  std::vector<Vec> pts = {v3(1, 0, 0),  v3(-1, 0, 0), v3(0, 1, 0),
                          v3(0, -1, 0), v3(0, 0, 1),  v3(0, 0, -1)};
  const auto h = convex_hull(pts);
  CHECK(h.affine_rank == 3);
  CHECK(h.vertices.size() == 6);
  CHECK(h.halfspaces.size() == 8);
  CHECK(h.violation(v3(0.3, 0.3, 0.3)) < 1e-9);
  CHECK(h.violation(v3(0.5, 0.5, 0.5)) > 0.1);
}

TEST_CASE("planar points embedded in three dimensions") {
  std::vector<Vec> pts;
  for (double a : {0.0, 1.0})
    for (double b : {0.0, 1.0}) pts.push_back(v3(a, b, 0.5));
  const auto h = convex_hull(pts);
  CHECK(h.affine_rank == 2);
  CHECK(h.vertices.size() == 4);
  for (const auto& p : pts) CHECK(h.violation(p) <= 1e-9);
  // Off-plane points violate the equality pair.
  CHECK(h.violation(v3(0.5, 0.5, 0.8)) == Catch::Approx(0.3));
  CHECK(h.violation(v3(0.5, 0.5, 0.2)) == Catch::Approx(0.3));
}

TEST_CASE("random clouds satisfy their own halfspaces") {
  std::mt19937 rng(41);
  std::normal_distribution<double> g;
  for (int m : {1, 2, 3}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Vec> pts;
      const int count = 30 + 10 * m;
      for (int i = 0; i < count; ++i) {
        Vec p(m);
        for (int j = 0; j < m; ++j) p(j) = g(rng);
        pts.push_back(p);
      }
      const auto h = convex_hull(pts);
      CHECK(h.affine_rank == m);
      for (const auto& p : pts) CHECK(h.violation(p) <= 1e-8);
      // Every vertex is one of the inputs.
      for (const auto& v : h.vertices) {
        double best = 1e9;
        for (const auto& p : pts) best = std::min(best, (v - p).norm());
        CHECK(best < 1e-9);
      }
      // Centroid sits strictly inside.
      Vec c = Vec::Zero(m);
      for (const auto& p : pts) c += p;
      c /= static_cast<double>(pts.size());
      CHECK(h.violation(c) <= 1e-9);
    }
  }
}

TEST_CASE("hull input validation") {
  CHECK_THROWS_AS(convex_hull({}), Error);
  Vec big(4);
  big << 1, 2, 3, 4;
  CHECK_THROWS_AS(convex_hull({big}), Error);
}
