#include <cmath>
#include <numbers>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "cosym/chart.hpp"
#include "cosym/diff.hpp"

using namespace cosym;

namespace {

ChartedManifold mixed_chart() {
  Vec lo(2), hi(2);
  lo << 0.0, -1.0;
  hi << 2.0 * std::numbers::pi, 1.0;
  return ChartedManifold::box(lo, hi, {true, false}, {8, 5});
}

}  // namespace

TEST_CASE("grid points, encoding, and axis values") {
  const ChartedManifold M = mixed_chart();
  CHECK(M.grid_size() == 40);

  // Periodic axis starts at the lower edge; bounded axis is cell centered.
  CHECK(M.axis_value(0, 0) == Catch::Approx(0.0));
  CHECK(M.axis_value(0, 1) == Catch::Approx(2.0 * std::numbers::pi / 8));
  CHECK(M.axis_value(1, 0) == Catch::Approx(-1.0 + 0.2));
  CHECK(M.axis_value(1, 4) == Catch::Approx(1.0 - 0.2));

  std::vector<int> idx;
  for (std::int64_t f = 0; f < M.grid_size(); ++f) {
    M.decode(f, idx);
    CHECK(M.encode(idx) == f);
  }
}

TEST_CASE("wrap acts only on periodic axes") {
  const ChartedManifold M = mixed_chart();
  Vec x(2);
  x << 2.0 * std::numbers::pi + 0.25, 0.7;
  const Vec w = M.wrap(x);
  CHECK(w(0) == Catch::Approx(0.25));
  CHECK(w(1) == Catch::Approx(0.7));

  x << -0.25, 2.5;  // second axis is out of range but non-periodic
  const Vec w2 = M.wrap(x);
  CHECK(w2(0) == Catch::Approx(2.0 * std::numbers::pi - 0.25));
  CHECK(w2(1) == Catch::Approx(2.5));
  CHECK_FALSE(M.in_bounds(w2, 1e-9));
}

TEST_CASE("neighbor wraps on periodic axes and stops at walls") {
  const ChartedManifold M = mixed_chart();
  std::vector<int> idx = {0, 0};
  std::vector<int> out;
  REQUIRE(M.neighbor(idx, 0, -1, out));
  CHECK(out[0] == 7);  // wrapped around
  CHECK_FALSE(M.neighbor(idx, 1, -1, out));  // below the wall
  REQUIRE(M.neighbor(idx, 1, 1, out));
  CHECK(out[1] == 1);
}

TEST_CASE("random points stay inside the chart") {
  const ChartedManifold M = mixed_chart();
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Vec x = M.random_point(rng);
    CHECK(M.in_bounds(x, 0.0));
    // Non-periodic axes stay off the walls.
    CHECK(x(1) > -1.0 + 0.05);
    CHECK(x(1) < 1.0 - 0.05);
  }
}

TEST_CASE("gradient and jacobian match analytic derivatives") {
  const ChartedManifold M = mixed_chart();
  const ScalarField f = [](const Vec& x) {
    return std::sin(x(0)) * (1.0 + 0.5 * x(1) * x(1));
  };
  Vec x(2);
  x << 1.1, 0.3;
  const Vec g = gradient(M, f, x);
  CHECK(g(0) == Catch::Approx(std::cos(1.1) * (1.0 + 0.5 * 0.09)).margin(1e-7));
  CHECK(g(1) == Catch::Approx(std::sin(1.1) * 0.3).margin(1e-7));

  const PointMap F = [](const Vec& x) {
    Vec y(2);
    y << x(0) * x(1), std::cos(x(0));
    return y;
  };
  const Mat J = jacobian(M, F, x);
  CHECK(J(0, 0) == Catch::Approx(0.3).margin(1e-7));
  CHECK(J(0, 1) == Catch::Approx(1.1).margin(1e-7));
  CHECK(J(1, 0) == Catch::Approx(-std::sin(1.1)).margin(1e-7));
  CHECK(J(1, 1) == Catch::Approx(0.0).margin(1e-7));
}

TEST_CASE("raw jacobian keeps equivariant maps exact at the seam") {
  const ChartedManifold M = mixed_chart();
  // Angle shift: smooth as a formula, but its value jumps by the period if
  // stencil inputs are wrapped.
  const PointMap shift = [](const Vec& x) {
    Vec y = x;
    y(0) += 1.0;
    return y;
  };
  Vec seam(2);
  seam << 0.0, 0.2;  // stencil reaches below the periodic seam
  const Mat J = jacobian_raw(M, shift, seam);
  CHECK(J(0, 0) == Catch::Approx(1.0).margin(1e-12));
  CHECK(J(1, 1) == Catch::Approx(1.0).margin(1e-12));
  CHECK(std::abs(J(0, 1)) < 1e-12);
}

TEST_CASE("hessian of a quadratic is the coefficient matrix") {
  Vec lo(2), hi(2);
  lo << -1, -1;
  hi << 1, 1;
  const ChartedManifold M = ChartedManifold::box(lo, hi, {false, false}, {9, 9});
  const ScalarField f = [](const Vec& x) {
    return 2.0 * x(0) * x(0) - 1.5 * x(0) * x(1) + 0.5 * x(1) * x(1);
  };
  Vec x(2);
  x << 0.1, -0.2;
  const Mat H = hessian(M, f, x);
  CHECK(H(0, 0) == Catch::Approx(4.0).margin(1e-6));
  CHECK(H(0, 1) == Catch::Approx(-1.5).margin(1e-6));
  CHECK(H(1, 0) == Catch::Approx(-1.5).margin(1e-6));
  CHECK(H(1, 1) == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("exterior derivative residuals detect non-closed forms") {
  Vec lo(3), hi(3);
  lo << -1, -1, -1;
  hi << 1, 1, 1;
  const ChartedManifold M = ChartedManifold::box(lo, hi, {false, false, false},
                                                 {5, 5, 5});
  Vec x(3);
  x << 0.2, -0.1, 0.3;

  // alpha = d(x y) = y dx + x dy is closed.
  const VectorField closed1 = [](const Vec& p) {
    Vec a(3);
    a << p(1), p(0), 0.0;
    return a;
  };
  CHECK(one_form_d_residual(M, closed1, x) < 1e-9);

  // alpha = x dy has d(alpha) = dx ^ dy.
  const VectorField open1 = [](const Vec& p) {
    Vec a(3);
    a << 0.0, p(0), 0.0;
    return a;
  };
  CHECK(one_form_d_residual(M, open1, x) == Catch::Approx(1.0).margin(1e-7));

  const MatrixField closed2 = [](const Vec& p) {
    Mat w = Mat::Zero(3, 3);
    w(0, 1) = p(0);  // x dx ^ dy, closed
    w(1, 0) = -p(0);
    return w;
  };
  CHECK(two_form_d_residual(M, closed2, x) < 1e-9);

  const MatrixField open2 = [](const Vec& p) {
    Mat w = Mat::Zero(3, 3);
    w(0, 1) = p(2);  // z dx ^ dy, d = dz ^ dx ^ dy
    w(1, 0) = -p(2);
    return w;
  };
  CHECK(two_form_d_residual(M, open2, x) == Catch::Approx(1.0).margin(1e-7));
}

TEST_CASE("rk4 follows a rotation field") {
  Vec lo(2), hi(2);
  lo << -2, -2;
  hi << 2, 2;
  const ChartedManifold M = ChartedManifold::box(lo, hi, {false, false}, {9, 9});
  const VectorField rot = [](const Vec& x) {
    Vec v(2);
    v << -x(1), x(0);
    return v;
  };
  Vec x(2);
  x << 1.0, 0.0;
  const double dt = 0.05;
  for (int i = 0; i < 20; ++i) x = rk4_step(M, rot, x, dt);
  CHECK(x(0) == Catch::Approx(std::cos(1.0)).margin(1e-7));
  CHECK(x(1) == Catch::Approx(std::sin(1.0)).margin(1e-7));
}

TEST_CASE("step guard rejects steps beyond half the spacing") {
  const ChartedManifold M = mixed_chart();
  CHECK_NOTHROW(check_step(M, 0.1));
  CHECK_THROWS_AS(check_step(M, 0.3), Error);  // spacing on axis 1 is 0.4
}

TEST_CASE("grid counts below three are rejected") {
  Vec lo(1), hi(1);
  lo << 0;
  hi << 1;
  CHECK_THROWS_AS(ChartedManifold::box(lo, hi, {false}, {2}), Error);
}
