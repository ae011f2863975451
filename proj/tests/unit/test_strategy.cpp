#include "doctest.h"
#include "fireline/strategy.hpp"

using namespace fireline;

TEST_CASE("spiral constants") {
  SpiralSpec sp;
  sp.sigma = 2.5;
  sp.r0 = 0.1;
  CHECK(sp.lambda() == doctest::Approx(0.75));
  CHECK(sp.closure_radius() == doctest::Approx(0.1 * std::exp(M_PI / 0.75)).epsilon(1e-12));
  CHECK(std::exp(4.18879) == doctest::Approx(65.94).epsilon(1e-4));

  sp.sigma = 2.0;
  CHECK_THROWS_AS(spiral_segments(sp), StrategyError);
  sp.sigma = 1e6;
  CHECK(sp.closure_radius() == doctest::Approx(0.1).epsilon(1e-4));
}

TEST_CASE("spiral branches are saturated by construction") {
  // arclength of one branch from r0 to r is sqrt(1 + lambda^2)(r - r0); at time t = r - r0
  // the two branches have been touched up to radius r0 + t
  SpiralSpec sp;
  auto segs = spiral_segments(sp);
  REQUIRE(segs.size() == 2 * static_cast<std::size_t>(sp.points_per_branch - 1));
  double L = 0.0;
  for (const auto& s : segs) L += s.length();
  const double lam = sp.lambda();
  const double R = sp.closure_radius();
  const double branch = std::sqrt(1.0 + lam * lam) * (R - sp.r0);
  CHECK(L == doctest::Approx(2.0 * branch).epsilon(1e-6));
  CHECK(2.0 * std::sqrt(1.0 + lam * lam) == doctest::Approx(sp.sigma));

  // both branches end on the negative x axis
  Point tip = segs[segs.size() - 2].b;
  CHECK(tip.x == doctest::Approx(-R));
  CHECK(std::abs(tip.y) < 1e-12);
  // ODE: r' = r / lambda in theta
  for (std::size_t k = 0; k + 2 < segs.size(); k += 200) {
    Point p = segs[k].a;
    double th = std::atan2(p.y, p.x);
    if (th < 0) continue;
    CHECK(norm(p) == doctest::Approx(sp.r0 * std::exp(th / lam)).epsilon(1e-9));
  }
}

TEST_CASE("spiral barrier encloses") {
  Barrier b = spiral_barrier(SpiralSpec{});
  CHECK_FALSE(complement_connected(b));
}

TEST_CASE("dust") {
  auto one = dust_segments({{0, 0}, {1, 1}}, 1, 0.3, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].length() == doctest::Approx(0.3));

  Box box{{0, 0}, {1, 1}};
  auto d = dust_segments(box, 200, 0.5, 9);
  REQUIRE(d.size() == 200);
  for (const auto& s : d) {
    CHECK(s.length() == doctest::Approx(0.0025));
    CHECK(box.contains(s.a));
    CHECK(box.contains(s.b));
  }
  auto e = dust_segments(box, 200, 0.5, 9);
  for (std::size_t k = 0; k < d.size(); ++k) {
    CHECK(d[k].a == e[k].a);
    CHECK(d[k].b == e[k].b);
  }
  CHECK(split_components(d).components().size() == 200);
}

TEST_CASE("shield disc") {
  const double r0 = 0.5 / (2 * M_PI);
  auto s = shield_segments({0, 0}, r0);
  double L = 0.0;
  for (const auto& g : s) L += g.length();
  CHECK(L <= 0.5);
  CHECK(L == doctest::Approx(0.5).epsilon(1e-3));
  CHECK_FALSE(complement_connected(shield_disc({0, 0}, r0)));
}
