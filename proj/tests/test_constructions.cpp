#include <cmath>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "cosym/constructions.hpp"
#include "cosym/diff.hpp"
#include "cosym/geometry.hpp"

using namespace cosym;

namespace {

ChartedManifold plane() {
  Vec lo(2), hi(2);
  lo << -2, -2;
  hi << 2, 2;
  return ChartedManifold::box(lo, hi, {false, false}, {7, 7});
}

MatrixField plane_omega() {
  return [](const Vec&) {
    Mat w = Mat::Zero(2, 2);
    w(0, 1) = 1.0;
    w(1, 0) = -1.0;
    return w;
  };
}

}  // namespace

TEST_CASE("suspension of an area preserving map builds a product chart") {
  MappingTorusSpec spec;
  spec.name = "test_suspension";
  spec.base = plane();
  spec.omega_base = plane_omega();
  spec.phi = [](const Vec& x) {
    Vec y(2);
    const double c = std::cos(0.5), s = std::sin(0.5);
    y << c * x(0) - s * x(1), s * x(0) + c * x(1);
    return y;
  };
  const Scenario S = mapping_torus(spec);
  CHECK(S.chart.dim == 3);
  CHECK(S.chart.periodic[2]);
  const auto c = classify_structure(S.chart, S.forms);
  CHECK(c.is_cosymplectic());

  CHECK(seam_residual(S, spec.base, spec.phi, Vec::Zero(2)) < 1e-8);
  Vec x(2);
  x << 0.7, -0.4;
  CHECK(seam_residual(S, spec.base, spec.phi, x) < 1e-8);
}

TEST_CASE("non symplectomorphisms and odd bases are rejected") {
  MappingTorusSpec bad;
  bad.name = "bad";
  bad.base = plane();
  bad.omega_base = plane_omega();
  bad.phi = [](const Vec& x) { return Vec(2.0 * x); };  // scales area by 4
  try {
    mapping_torus(bad);
    FAIL("expected NotSymplectomorphism");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSymplectomorphism);
  }

  MappingTorusSpec odd;
  odd.name = "odd";
  Vec lo(3), hi(3);
  lo << -1, -1, -1;
  hi << 1, 1, 1;
  odd.base = ChartedManifold::box(lo, hi, {false, false, false}, {5, 5, 5});
  odd.omega_base = [](const Vec&) { return Mat(Mat::Zero(3, 3)); };
  odd.phi = [](const Vec& x) { return x; };
  try {
    mapping_torus(odd);
    FAIL("expected OddBaseDim");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OddBaseDim);
  }
}

TEST_CASE("product model dimensions, classification, and exact moment map") {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 0; k < n; ++k) {
      const Scenario S = cn_example(n, k);
      const int m = n - k;
      CHECK(S.chart.dim == k + 2 * m + 1);
      REQUIRE(S.action.has_value());
      CHECK(S.action->rank == n);
      CHECK(S.action->moment_components() == m);
      REQUIRE(S.foliation.has_value());
      CHECK(S.foliation->rank == k);

      const auto c = classify_structure(S.chart, S.forms);
      if (k == 0) {
        CHECK(c.is_cosymplectic());
        CHECK(c.n == m);
      } else {
        CHECK(c.is_precosymplectic());
        CHECK(c.r == m);
      }
    }
  }
}

TEST_CASE("moment components differentiate to the omega contraction") {
  const Scenario S = cn_example(2, 0);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec x = S.chart.random_point(rng);
    const PointTensor pt = tensor_at(S.forms, x);
    // Generators j pair with moment components in declared order.
    for (int j = 0; j < 2; ++j) {
      const Vec xi = S.action->fundamental_fields[j](x);
      const Vec dmu = gradient(S.chart, [&](const Vec& p) {
        return S.action->moment_map(p)(j);
      }, x);
      const Vec contraction = pt.interior_omega(xi);
      CHECK((dmu - contraction).cwiseAbs().maxCoeff() < 1e-7);
    }
  }
}

TEST_CASE("product model parameter validation") {
  CHECK_THROWS_AS(cn_example(0, 0), Error);
  CHECK_THROWS_AS(cn_example(4, 0), Error);
  CHECK_THROWS_AS(cn_example(2, 2), Error);
  CHECK_THROWS_AS(cn_example(2, -1), Error);
}

TEST_CASE("scenario names parse canonically") {
  CHECK(make_scenario("cn(3,1)").name == "cn(3,1)");
  CHECK(make_scenario("mapping_torus_rot(1/2)").name == "mapping_torus_rot(1/2)");
  CHECK_NOTHROW(make_scenario("mapping_torus_rot(golden)"));
  CHECK_THROWS_AS(make_scenario("cn(3, 1)"), Error);  // non-canonical spelling
  CHECK_THROWS_AS(make_scenario("unknown_thing"), Error);
  try {
    make_scenario("unknown_thing");
    FAIL("expected UnknownScenario");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownScenario);
  }
}

TEST_CASE("sphere charts classify and carry exact height moment maps") {
  for (const char* name : {"sphere_s1", "sphere_polar_north", "sphere_polar_south"}) {
    const Scenario S = make_scenario(name);
    const auto c = classify_structure(S.chart, S.forms);
    CHECK(c.is_cosymplectic());
    CHECK(c.n == 1);

    std::mt19937 rng(8);
    for (int trial = 0; trial < 5; ++trial) {
      const Vec x = S.chart.random_point(rng);
      const PointTensor pt = tensor_at(S.forms, x);
      const Vec xi = S.action->fundamental_fields[0](x);
      const Vec dmu = gradient(S.chart, [&](const Vec& p) {
        return S.action->moment_map(p)(0);
      }, x);
      CHECK((dmu - pt.interior_omega(xi)).cwiseAbs().maxCoeff() < 1e-7);
    }
  }
}

TEST_CASE("level set construction rejects bad sections") {
  const Scenario ambient = make_scenario("mapping_torus_id");
  Eigen::MatrixXi sub(1, 2);
  sub << 1, 0;

  LevelSetParam off;
  off.name = "off_level";
  Vec lo(1), hi(1);
  lo << 0.0;
  hi << kTwoPi;
  off.chart = ChartedManifold::box(lo, hi, {true}, {8});
  off.param = [](const Vec& u) {
    Vec x(5);
    x << 2.0 * std::cos(u(0)), 2.0 * std::sin(u(0)), 0.0, 0.0, 0.0;
    return x;  // |z1|^2 - 1 = 3, not on the zero level
  };
  try {
    level_set_structure(ambient, sub, off);
    FAIL("expected NotInLevelSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInLevelSet);
  }

  LevelSetParam flat;
  flat.name = "constant_param";
  flat.chart = off.chart;
  flat.param = [](const Vec&) {
    Vec x(5);
    x << 1.0, 0.0, 0.0, 0.0, 0.0;
    return x;
  };
  try {
    level_set_structure(ambient, sub, flat);
    FAIL("expected ParamNotImmersion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParamNotImmersion);
  }
}

TEST_CASE("restricted product scenarios classify as expected") {
  const Scenario y0 = make_scenario("y0_id");
  const auto c = classify_structure(y0.chart, y0.forms);
  CHECK(c.is_precosymplectic());
  CHECK(c.r == 1);
  CHECK(y0.chart.dim == 4);
  REQUIRE(y0.action.has_value());
  CHECK(y0.action->moment_components() == 1);

  const Scenario yh = make_scenario("y0_halfturn");
  CHECK(classify_structure(yh.chart, yh.forms).is_precosymplectic());
  REQUIRE(yh.holonomy_return.has_value());
}
