#include <random>

#include "doctest.h"
#include "fireline/detour.hpp"

using namespace fireline;

TEST_CASE("frame maps P and Q to -kappa and +kappa") {
  auto f = make_frame({1, 1}, {1, 3});
  CHECK(f.kappa == doctest::Approx(1.0));
  Point p = f.to_frame({1, 1}), q = f.to_frame({1, 3});
  CHECK(p.x == doctest::Approx(-1.0));
  CHECK(q.x == doctest::Approx(1.0));
  CHECK(p.y == doctest::Approx(0.0));
  Point z = f.to_scene(f.to_frame({4, -2}));
  CHECK(z.x == doctest::Approx(4.0));
  CHECK(z.y == doctest::Approx(-2.0));
}

TEST_CASE("empty barrier detour is the straight segment") {
  auto r = sparse_detour({0, 0}, {2, 0}, Barrier{}, 0.1);
  REQUIRE(r.ok());
  CHECK(r.path.length == doctest::Approx(2.0));
  CHECK(r.within_bound);
  CHECK(r.crossing_free);
}

TEST_CASE("short wall on the midpoint") {
  // two-corner geodesic over the wall of half-height 0.05
  const double geo = 2.0 * std::sqrt(1.0 + 0.05 * 0.05);
  auto f = make_frame({0, 0}, {2, 0});
  std::vector<Segment> segs{{f.to_frame({1, -0.05}), f.to_frame({1, 0.05})}};
  auto r = construct_detour(f, segs, 0.2);
  REQUIRE(r.ok());
  CHECK(r.path.length <= 2.0 + 9 * 0.2 * 0.1 + 1e-12);
  CHECK(r.path.length >= geo - 1e-12);
  CHECK(r.crossing_free);
  Barrier b = split_components({{{1, -0.05}, {1, 0.05}}});
  for (std::size_t k = 1; k < r.path.polyline.size(); ++k) CHECK(visible(r.path.polyline[k - 1], r.path.polyline[k], b));
  CHECK(r.path.slope_bound <= 3 * 0.2 + 1e-12);
}

TEST_CASE("wall violating the density hypotheses is reported") {
  Barrier b = split_components({{{1, -0.05}, {1, 0.05}}});
  auto r = sparse_detour({0, 0}, {2, 0}, b, 0.2);
  CHECK(r.status == DetourStatus::hypothesis_failed);
}

TEST_CASE("sparse tiny segments") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(0.3, 1.7), uy(-0.3, 0.3), ua(0.0, M_PI);
  int ran = 0;
  for (int trial = 0; trial < 40 && ran < 5; ++trial) {
    std::vector<Segment> segs;
    for (int k = 0; k < 20; ++k) {
      Point c{ux(rng), uy(rng)};
      double a = ua(rng);
      Point d{0.00125 * std::cos(a), 0.00125 * std::sin(a)};
      segs.push_back({c - d, c + d});
    }
    Barrier b = split_components(segs);
    auto r = sparse_detour({0, 0}, {2, 0}, b, 0.1);
    if (r.status == DetourStatus::hypothesis_failed) continue;
    ++ran;
    REQUIRE(r.ok());
    CHECK(r.h == doctest::Approx(0.05));
    CHECK(r.path.length <= 2.0 + 0.045 + 1e-12);
    CHECK(r.crossing_free);
  }
  CHECK(ran > 0);
}

TEST_CASE("density tests") {
  auto f = make_frame({0, 0}, {2, 0});
  std::vector<Segment> near_p{{f.to_frame({0.01, -0.05}), f.to_frame({0.01, 0.05})}};
  CHECK_FALSE(strip_density_ok(near_p, 1.0, 0.2));
  CHECK_FALSE(cone_density_ok(near_p, 1.0, 0.2));
  CHECK(strip_density_ok({}, 1.0, 0.2));
}

TEST_CASE("flow box crossing with an empty barrier") {
  auto r = flowbox_crossing({0, 0}, {2, 0}, {1, 0.6}, Barrier{}, 0.1, 0.1);
  REQUIRE(r.ok());
  CHECK(r.path.length == doctest::Approx(2.0));
}
