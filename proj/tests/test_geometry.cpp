#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "cosym/constructions.hpp"
#include "cosym/geometry.hpp"

using namespace cosym;

namespace {

ChartedManifold box3() {
  Vec lo(3), hi(3);
  lo << -1, -1, -1;
  hi << 1, 1, 1;
  return ChartedManifold::box(lo, hi, {false, false, false}, {5, 5, 5});
}

FormPair standard3() {
  FormPair F;
  F.omega_at = [](const Vec&) {
    Mat w = Mat::Zero(3, 3);
    w(0, 1) = 1.0;
    w(1, 0) = -1.0;
    return w;
  };
  F.eta_at = [](const Vec&) {
    Vec e = Vec::Zero(3);
    e(2) = 1.0;
    return e;
  };
  return F;
}

}  // namespace

TEST_CASE("constant forms have zero closedness residual") {
  const auto rep = verify_closed(box3(), standard3());
  CHECK(rep.omega_residual == 0.0);
  CHECK(rep.eta_residual == 0.0);
  CHECK(rep.passes(1e-12));
}

TEST_CASE("classification of the registered standard pairs") {
  const Scenario r3 = make_scenario("r3_standard");
  const auto c3 = classify_structure(r3.chart, r3.forms);
  CHECK(c3.is_cosymplectic());
  CHECK(c3.n == 1);
  CHECK(c3.rank_of_flat == 3);
  CHECK(c3.describe() == "Cosymplectic(1)");

  const Scenario r4 = make_scenario("r4_standard");
  const auto c4 = classify_structure(r4.chart, r4.forms);
  CHECK(c4.is_precosymplectic());
  CHECK(c4.r == 1);
  CHECK(c4.rank_of_flat == 3);
}

TEST_CASE("eta inside the omega image is degenerate, not strict") {
  FormPair F = standard3();
  F.eta_at = [](const Vec&) {
    Vec e = Vec::Zero(3);
    e(0) = 1.0;  // dx pairs to zero with ker(omega) = span(e3)
    return e;
  };
  const auto c = classify_structure(box3(), F);
  CHECK(c.kind == StructureKind::Degenerate);
  CHECK(c.reason == "ker(flat)=ker(omega)");
}

TEST_CASE("vanishing eta and non-closed forms are precondition errors") {
  FormPair F = standard3();
  F.eta_at = [](const Vec&) { return Vec(Vec::Zero(3)); };
  CHECK_THROWS_AS(classify_structure(box3(), F), Error);

  FormPair G = standard3();
  G.omega_at = [](const Vec& x) {
    Mat w = Mat::Zero(3, 3);
    w(0, 1) = x(2);  // z dx ^ dy is not closed
    w(1, 0) = -x(2);
    return w;
  };
  try {
    classify_structure(box3(), G);
    FAIL("expected NotClosed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotClosed);
  }
}

TEST_CASE("rank variation across the grid is reported") {
  // omega = x dx ^ dy is closed but drops rank on the x = 0 grid plane.
  FormPair F;
  F.omega_at = [](const Vec& x) {
    Mat w = Mat::Zero(3, 3);
    w(0, 1) = x(0);
    w(1, 0) = -x(0);
    return w;
  };
  F.eta_at = [](const Vec&) {
    Vec e = Vec::Zero(3);
    e(2) = 1.0;
    return e;
  };
  const auto c = classify_structure(box3(), F);
  CHECK(c.kind == StructureKind::Degenerate);
  CHECK(c.reason == "rank_varies");
}

TEST_CASE("characteristic field solves the defining equations") {
  const ChartedManifold M = box3();
  Vec x = Vec::Zero(3);

  const Vec R = reeb_field(M, standard3(), x);
  CHECK(R(0) == Catch::Approx(0.0).margin(1e-12));
  CHECK(R(1) == Catch::Approx(0.0).margin(1e-12));
  CHECK(R(2) == Catch::Approx(1.0));

  // Scaling eta rescales the field so that eta(R) stays 1.
  FormPair S = standard3();
  S.eta_at = [](const Vec&) {
    Vec e = Vec::Zero(3);
    e(2) = 2.0;
    return e;
  };
  const Vec R2 = reeb_field(M, S, x);
  CHECK(R2(2) == Catch::Approx(0.5));

  const Scenario r4 = make_scenario("r4_standard");
  CHECK_THROWS_AS(reeb_field(r4.chart, r4.forms, Vec::Zero(4)), Error);
}

TEST_CASE("basicness measures the kernel directions only") {
  const Scenario r4 = make_scenario("r4_standard");
  Vec x(4);
  x << 0.2, -0.1, 0.4, 0.5;

  const ScalarField good = [](const Vec& p) { return p(0) * p(0) + p(1); };
  CHECK(basicness_check(r4.chart, r4.forms, good, x).basic);

  const ScalarField bad = [](const Vec& p) { return p(3) * p(0); };
  const auto b = basicness_check(r4.chart, r4.forms, bad, x);
  CHECK_FALSE(b.basic);
  CHECK(b.worst > 0.1);
}

TEST_CASE("bracket of coordinate functions on the standard pair") {
  const Scenario r3 = make_scenario("r3_standard");
  Vec x(3);
  x << 0.3, -0.2, 0.1;
  const ScalarField fx = [](const Vec& p) { return p(0); };
  const ScalarField fy = [](const Vec& p) { return p(1); };

  const auto det = poisson_bracket_detail(r3.chart, r3.forms, fx, fy, x);
  CHECK(det.value == Catch::Approx(1.0).margin(1e-9));
  CHECK(det.discrepancy < 1e-9);
  CHECK(std::abs(det.value - det.lie_route) < 1e-9);
  // Solved fields: v_x = -e2, v_y = e1 up to kernel terms (kernel is zero here).
  CHECK(det.v_f(1) == Catch::Approx(-1.0).margin(1e-7));
  CHECK(det.v_g(0) == Catch::Approx(1.0).margin(1e-7));

  CHECK(poisson_bracket(r3.chart, r3.forms, fy, fx, x) ==
        Catch::Approx(-1.0).margin(1e-9));
}

TEST_CASE("bracket rejects non-basic inputs on a degenerate pair") {
  const Scenario r4 = make_scenario("r4_standard");
  Vec x(4);
  x << 0.1, 0.2, 0.3, 0.5;
  const ScalarField fx = [](const Vec& p) { return p(0); };
  const ScalarField fw = [](const Vec& p) { return p(3); };
  try {
    poisson_bracket(r4.chart, r4.forms, fx, fw, x);
    FAIL("expected NotBasic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotBasic);
  }
}

TEST_CASE("bracket axioms hold at random points") {
  const Scenario r3 = make_scenario("r3_standard");
  const ScalarField f = [](const Vec& p) { return p(0) * p(0) + p(1); };
  const ScalarField g = [](const Vec& p) { return p(1) * p(0); };
  const ScalarField h = [](const Vec& p) { return p(0) + 2.0 * p(1); };

  std::mt19937 rng(17);
  for (int i = 0; i < 5; ++i) {
    const Vec x = r3.chart.random_point(rng);
    const double fg = poisson_bracket(r3.chart, r3.forms, f, g, x);
    const double gf = poisson_bracket(r3.chart, r3.forms, g, f, x);
    CHECK(std::abs(fg + gf) < 1e-9);

    const ScalarField combo = [&](const Vec& p) { return 2.0 * f(p) - 3.0 * h(p); };
    const double lhs = poisson_bracket(r3.chart, r3.forms, combo, g, x);
    const double rhs = 2.0 * fg -
                       3.0 * poisson_bracket(r3.chart, r3.forms, h, g, x);
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }
}
