#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "cosym/constructions.hpp"
#include "cosym/morse_bott.hpp"

using namespace cosym;

TEST_CASE("the one factor model has a single minimal circle") {
  const Scenario S = make_scenario("cn(1,0)");
  const auto rep = morse_bott_analysis(S);
  CHECK(rep.component == 0);
  CHECK(rep.crit_threshold == Catch::Approx(1e-4 * rep.grad_max));
  REQUIRE(rep.critical.size() == 1);
  const auto& c = rep.critical[0];
  CHECK(c.point_count == 6);
  CHECK(c.tangent_dim == 1);
  CHECK(c.index == 0);
  CHECK(c.nullity == 0);
  REQUIRE(c.normal_eigenvalues.size() == 2);
  for (double ev : c.normal_eigenvalues) CHECK(ev == Catch::Approx(2.0).margin(1e-5));
  CHECK(c.representative.head(2).norm() < 1e-12);
  CHECK(rep.all_nondegenerate());
  CHECK(rep.all_even_index());
}

TEST_CASE("the suspended factor contributes a critical torus") {
  const Scenario S = make_scenario("cn(2,1)");
  const auto rep = morse_bott_analysis(S);
  REQUIRE(rep.critical.size() == 1);
  const auto& c = rep.critical[0];
  CHECK(c.point_count == 36);
  CHECK(c.tangent_dim == 2);
  CHECK(c.index == 0);
  CHECK(c.nullity == 0);
  CHECK(rep.all_even_index());
}

TEST_CASE("polar cap charts see the sphere poles with even indices") {
  const auto north = morse_bott_analysis(make_scenario("sphere_polar_north"));
  REQUIRE(north.critical.size() == 1);
  // The pole crossed with the transverse circle: a critical circle.
  CHECK(north.critical[0].tangent_dim == 1);
  CHECK(north.critical[0].point_count == 6);
  CHECK(north.critical[0].index == 2);
  CHECK(north.critical[0].nullity == 0);

  const auto south = morse_bott_analysis(make_scenario("sphere_polar_south"));
  REQUIRE(south.critical.size() == 1);
  CHECK(south.critical[0].index == 0);
  CHECK(south.critical[0].nullity == 0);
  CHECK(north.all_even_index());
  CHECK(south.all_even_index());
}

TEST_CASE("a chart missing the critical set reports it") {
  try {
    morse_bott_analysis(make_scenario("sphere_s1"));
    FAIL("expected NoCriticalPoints");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoCriticalPoints);
  }
}

TEST_CASE("input guards") {
  const Scenario S = make_scenario("cn(1,0)");
  try {
    morse_bott_analysis(S, 3);
    FAIL("expected OutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfRange);
  }
  try {
    morse_bott_analysis(make_scenario("r3_standard"));
    FAIL("expected NoAction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoAction);
  }
}

TEST_CASE("separated clusters are split and indexed individually") {
  // Scalar cos(2 pi x) on a periodic band: four critical circles, two maxima
  // and two minima, alternating along x.
  Scenario S;
  S.name = "cosine_band";
  Vec lo(2), hi(2);
  lo << -1.0, 0.0;
  hi << 1.0, kTwoPi;
  S.chart = ChartedManifold::box(lo, hi, {true, true}, {40, 6});
  TorusActionSpec A;
  A.rank = 1;
  A.moment_map = [](const Vec& x) {
    Vec mu(1);
    mu(0) = std::cos(kTwoPi * x(0));
    return mu;
  };
  S.action = A;

  const auto rep = morse_bott_analysis(S);
  CHECK(rep.grad_max == Catch::Approx(kTwoPi).epsilon(1e-6));
  REQUIRE(rep.critical.size() == 4);
  const int want_index[4] = {1, 0, 1, 0};       // x = -1, -1/2, 0, 1/2
  const double want_x[4] = {-1.0, -0.5, 0.0, 0.5};
  for (int i = 0; i < 4; ++i) {
    const auto& c = rep.critical[i];
    CHECK(c.point_count == 6);
    CHECK(c.tangent_dim == 1);
    CHECK(c.representative(0) == Catch::Approx(want_x[i]).margin(1e-12));
    CHECK(c.index == want_index[i]);
    CHECK(c.nullity == 0);
    REQUIRE(c.normal_eigenvalues.size() == 1);
    const double want_ev = (want_index[i] == 1) ? -4.0 * std::numbers::pi * std::numbers::pi
                                                : 4.0 * std::numbers::pi * std::numbers::pi;
    CHECK(c.normal_eigenvalues[0] == Catch::Approx(want_ev).epsilon(1e-4));
  }
  CHECK(rep.all_nondegenerate());
  CHECK_FALSE(rep.all_even_index());
}
