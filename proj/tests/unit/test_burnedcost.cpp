#include "doctest.h"
#include "fireline/burnedcost.hpp"
#include "fireline/strategy.hpp"

using namespace fireline;

TEST_CASE("circle barrier encloses its polygon area") {
  auto segs = polygonalize_disc({{0, 0}, 3.0}, 360).segments();
  Scene sc = make_scene({{{0, 0}, 1.0}}, segs, 2.0, 1.0);
  auto r = burned_region(sc, 0.02);
  REQUIRE(r.bounded);
  const double poly = 0.5 * 360 * 9.0 * std::sin(2 * M_PI / 360);
  CHECK(std::abs(r.area - poly) <= r.area_error_band);
  CHECK(std::abs(r.area - 9 * M_PI) <= r.area_error_band + 0.01);
  const double perim = 6 * M_PI * std::sin(M_PI / 360) / (M_PI / 360);
  CHECK(r.cost == doctest::Approx(r.area + perim));
  CHECK(r.component_count == 1);
}

TEST_CASE("empty barrier is unbounded") {
  Scene sc = make_scene({{{0, 0}, 1.0}}, {}, 2.0, 1.0);
  auto r = burned_region(sc, 0.05);
  CHECK_FALSE(r.bounded);
  CHECK(r.cost == std::numeric_limits<double>::infinity());
  CHECK(total_cost(sc, 0.05) == std::numeric_limits<double>::infinity());
}

TEST_CASE("c0 zero gives area") {
  Scene sc = make_scene({{{0, 0}, 1.0}}, polygonalize_disc({{0, 0}, 2.0}, 64).segments(), 2.0, 0.0);
  auto r = burned_region(sc, 0.02);
  CHECK(r.cost == r.area);
}

TEST_CASE("spiral area against the closed form and a refined grid") {
  SpiralSpec sp;
  Scene sc = make_scene({{{0, 0}, sp.r0}}, spiral_segments(sp), 2.5, 0.0);
  auto a = burned_region(sc, 0.04), b = burned_region(sc, 0.02);
  REQUIRE(a.bounded);
  REQUIRE(b.bounded);
  const double lam = sp.lambda();
  const double closed = 0.5 * sp.r0 * sp.r0 * lam * (std::exp(2 * M_PI / lam) - 1.0);
  double rich = 2 * b.area - a.area;
  CHECK(std::abs(b.area - closed) <= b.area_error_band);
  CHECK(std::abs(rich - closed) <= b.area_error_band);
}

TEST_CASE("local area sees a shield") {
  Scene sc = make_scene({{{0, 0}, 1.0}}, {}, 2.0, 0.0);
  Box w{{4, -1}, {6, 1}};
  double before = local_burned_area(sc, w, 0.01);
  Scene sh = make_scene({{{0, 0}, 1.0}}, shield_segments({5, 0}, 0.3), 2.0, 0.0);
  double after = local_burned_area(sh, w, 0.01);
  CHECK(std::abs(before - 4.0) <= 8.0 * 0.01);
  CHECK(before - after == doctest::Approx(M_PI * 0.09).epsilon(0.05));
}
