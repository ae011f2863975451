#include <random>

#include "doctest.h"
#include "fireline/eikonal_exact.hpp"

using namespace fireline;

namespace {

Params exact_circle() {
  Params p;
  p.source_n = 0;
  return p;
}

Scene corner() { return make_scene({{{0, 0}, 1.0}}, {{{2, -1}, {2, 1}}}, 2.0, 0.0); }

const double kCorner = (std::sqrt(5.0) - 1.0) + std::sqrt(2.0);

}  // namespace

TEST_CASE("no barrier gives the distance to the source") {
  Scene sc = make_scene({{{0, 0}, 1.0}}, {}, 2.0, 0.0);
  TimeSolver s(sc, exact_circle());
  CHECK(s.nodes().empty());
  CHECK(s.min_time({3, 0}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.min_time({0.2, 0.3}) == 0.0);
  auto tr = s.optimal_trajectory({3, 0});
  REQUIRE(tr.vertices.size() == 2);
  CHECK(tr.vertices[0].x == doctest::Approx(1.0));
  CHECK(tr.vertices[1].x == doctest::Approx(3.0));
  CHECK(tr.total_time == doctest::Approx(2.0));
  CHECK(s.rho({3, 0}) == doctest::Approx(2.0));
}

TEST_CASE("polygonal source stays within its error bound") {
  Scene sc = make_scene({{{0, 0}, 1.0}}, {}, 2.0, 0.0);
  Params p;
  p.source_n = 64;
  TimeSolver s(sc, p);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int k = 0; k < 100; ++k) {
    Point x{u(rng), u(rng)};
    double d = std::max(0.0, norm(x) - 1.0);
    CHECK(std::abs(s.min_time(x) - d) <= s.error_bound() + 1e-12);
  }
}

TEST_CASE("corner path") {
  TimeSolver s(corner(), exact_circle());
  CHECK(s.min_time({3, 0}) == doctest::Approx(kCorner).epsilon(1e-12));
  CHECK(kCorner == doctest::Approx(2.650281).epsilon(1e-6));

  auto tr = s.optimal_trajectory({3, 0});
  REQUIRE(tr.vertices.size() == 3);
  Point p0 = tr.vertices[0];
  CHECK(norm(p0) == doctest::Approx(1.0));
  CHECK(p0.x == doctest::Approx(2.0 / std::sqrt(5.0)));
  CHECK(p0.y == doctest::Approx(1.0 / std::sqrt(5.0)));
  CHECK(tr.vertices[1].x == 2.0);
  CHECK(tr.vertices[1].y == 1.0);
  CHECK(tr.total_time == doctest::Approx(kCorner));

  CHECK(s.rho({3, 0}) == doctest::Approx(std::sqrt(2.0)));
  Point u = (1.0 / std::sqrt(2.0)) * (Point{3, 0} - Point{2, 1});
  CHECK(s.rho(Point{2, 1} + 0.1 * u) == doctest::Approx(0.1));
}

TEST_CASE("symmetric barrier gives mirror paths with equal final legs") {
  TimeSolver s(corner(), exact_circle());
  auto arr = s.arrivals({4, 0});
  REQUIRE(arr.size() == 2);
  CHECK(arr[0].leg == doctest::Approx(arr[1].leg));
  auto tr = s.optimal_trajectory({4, 0});
  CHECK(std::abs(tr.vertices[1].y) == 1.0);
}

TEST_CASE("enclosed point is unreachable") {
  Scene sc = make_scene({{{0, 0}, 1.0}},
                        {{{9, 9}, {11, 9}}, {{11, 9}, {11, 11}}, {{11, 11}, {9, 11}}, {{9, 11}, {9, 9}}}, 2.0, 0.0);
  TimeSolver s(sc, exact_circle());
  CHECK(s.min_time({10, 10}) == kInfinity);
  CHECK_THROWS_AS(s.rho({10, 10}), UnreachableError);
  CHECK(std::isfinite(s.min_time({12, 10})));
}

TEST_CASE("lower bound and loop-around on a random scene") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<Segment> segs;
  for (int k = 0; k < 6; ++k) {
    Point a{u(rng), u(rng)};
    if (norm(a) < 1.5) a = 2.0 * a;
    Point d{0.4 * std::cos(k), 0.4 * std::sin(k)};
    segs.push_back({a, a + d});
  }
  Scene sc = make_scene({{{0, 0}, 1.0}}, segs, 2.0, 0.0);
  TimeSolver s(sc, exact_circle());
  REQUIRE(complement_connected(sc.barrier));
  for (int k = 0; k < 200; ++k) {
    Point x{u(rng), u(rng)};
    double T = s.min_time(x), d = s.lower_bound(x);
    CHECK(T >= d - 1e-12);
    CHECK(T <= d + sc.barrier.total_length() + 1e-9);
  }
}

TEST_CASE("the circle limit agrees with the extrapolated polygon values") {
  Scene sc = make_scene({{{0, 0}, 1.0}}, {}, 2.0, 0.0);
  // probes facing edge midpoints of the 32-gon, where the polygon error is largest
  const double a = M_PI / 32;
  auto ex = extrapolate_times(sc, 32, {{3 * std::cos(a), 3 * std::sin(a)}, {-2.5 * std::cos(3 * a), 2.5 * std::sin(3 * a)}});
  for (const auto& e : ex) {
    CHECK(std::abs(e.richardson - e.limit) < std::abs(e.t_n - e.limit));
    CHECK(std::abs(e.t_2n - e.limit) <= e.bound_2n + 1e-12);
  }
}

TEST_CASE("rho integral on the empty barrier") {
  Scene sc = make_scene({{{0, 0}, 1.0}}, {}, 2.0, 0.0);
  TimeSolver s(sc, exact_circle());
  auto r = rho_integral_report(s, 20000, 1, 4);
  CHECK(std::abs(r.lhs - r.rhs) <= 3.0 * r.diff_se + 1e-9);
  CHECK(r.t_hat_bound);
}
