#include <random>

#include "doctest.h"
#include "fireline/sweep.hpp"
#include "../common/sweep_oracle.hpp"

using namespace fireline;

TEST_CASE("mode slopes") {
  CHECK(mode_slopes(SweepMode::symmetric, 0.1) == std::pair{-0.1, 0.1});
  CHECK(mode_slopes(SweepMode::drift, 0.1).first == doctest::Approx(0.1));
  CHECK(mode_slopes(SweepMode::drift, 0.1).second == doctest::Approx(0.3));
  CHECK(mode_slopes(SweepMode::wide, 0.1).first == doctest::Approx(-0.3));
  CHECK(mode_slopes(SweepMode::construction, 0.1).first == 0.0);
}

TEST_CASE("free cone") {
  auto r = attainable_sweep({}, 0.2, 3.0, SweepMode::symmetric);
  for (double t : {0.0, 0.5, 1.7, 3.0}) CHECK(r.measure_at(t) == doctest::Approx(0.4 * t));
  auto s = sunrise_margin(r);
  CHECK(s.positive);
  CHECK(s.nondecreasing);
  for (std::size_t k = 0; k < s.times.size(); ++k)
    CHECK(s.f[k] == doctest::Approx((2.0 - std::sqrt(2.0)) * 0.2 * s.times[k]));
}

TEST_CASE("segment outside the cone changes nothing") {
  std::vector<Segment> far{{{1.0, 2.0}, {1.2, 3.0}}};
  auto a = attainable_sweep(far, 0.2, 2.0, SweepMode::symmetric);
  for (double t : {0.5, 1.0, 1.5, 2.0}) CHECK(a.measure_at(t) == doctest::Approx(0.4 * t));
}

TEST_CASE("t-parallel segments are rejected") {
  CHECK(has_t_parallel({{{0.5, 0.1}, {1.0, 0.1}}}));
  CHECK_THROWS_AS(attainable_sweep({{{0.5, 0.1}, {1.0, 0.1}}}, 0.2, 2.0, SweepMode::symmetric), DetourError);
}

TEST_CASE("single wall against the path-tree oracle") {
  // a constant-t wall cutting the upper half of the cone
  std::vector<Segment> w{{{0.5, 0.05}, {0.52, 0.6}}};
  auto r = attainable_sweep(w, 0.5, 1.0, SweepMode::symmetric);
  double brute = test::path_tree_measure(w, 0.5, 1.0, 200, 8);
  CHECK(r.measure_at(1.0) == doctest::Approx(brute).epsilon(0.01));
  CHECK(r.measure_at(1.0) < 1.0);
}

TEST_CASE("strip mass") {
  std::vector<Segment> s{{{0.0, 0.0}, {2.0, 0.0}}, {{1.0, 1.0}, {1.0, 2.0}}};
  CHECK(strip_mass(s, 0.5, 1.5) == doctest::Approx(2.0));
  CHECK(strip_mass(s, 1.5, 3.0) == doctest::Approx(0.5));
  auto br = strip_breaks(s);
  CHECK(br.front() == 0.0);
  CHECK(br.back() == 2.0);
}

TEST_CASE("backtrack reaches the requested value") {
  std::vector<Segment> w{{{0.5, -0.05}, {0.52, 0.3}}};
  auto r = attainable_sweep(w, 0.5, 1.0, SweepMode::symmetric);
  auto g = backtrack(r, -0.1);
  REQUIRE(g.size() >= 2);
  CHECK(g.front().x == doctest::Approx(0.0));
  CHECK(g.front().y == doctest::Approx(0.0));
  CHECK(g.back().x == doctest::Approx(1.0));
  CHECK(g.back().y == doctest::Approx(-0.1));
  Barrier b = split_components(w);
  for (std::size_t k = 1; k < g.size(); ++k) {
    CHECK(visible(g[k - 1], g[k], b));
    double s = (g[k].y - g[k - 1].y) / (g[k].x - g[k - 1].x);
    CHECK(std::abs(s) <= 0.5 + 1e-9);
  }
  CHECK_THROWS_AS(backtrack(r, 0.9), DetourError);
}

TEST_CASE("sunrise hypothesis flag on a dense instance") {
  std::vector<Segment> dense;
  for (int k = 0; k < 10; ++k) dense.push_back({{0.1 + 0.01 * k, -0.5}, {0.105 + 0.01 * k, 0.5}});
  auto r = attainable_sweep(dense, 0.1, 1.0, SweepMode::symmetric);
  auto s = sunrise_margin(r);
  CHECK_FALSE(s.hypothesis);
  CHECK_FALSE(s.verdict_claimed);
}
