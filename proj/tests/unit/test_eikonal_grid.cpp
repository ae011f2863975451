#include "doctest.h"
#include "fireline/eikonal_grid.hpp"

using namespace fireline;

namespace {
Params exact_circle() {
  Params p;
  p.source_n = 0;
  return p;
}
}  // namespace

TEST_CASE("stencil sizes and metrication") {
  CHECK(stencil(1).size() == 8);
  CHECK(stencil(2).size() == 16);
  CHECK(stencil(3).size() == 32);
  // 16 neighbours: worst direction sits halfway between (1,0) and (2,1)
  double th = std::atan(0.5) / 2.0;
  double expect = (std::cos(th) * 2.0 + std::sin(th) * 1.0) / std::sqrt(5.0);
  expect = 1.0 / expect;
  CHECK(metrication_factor(2) >= 1.0);
  CHECK(metrication_factor(2) == doctest::Approx(expect).epsilon(1e-3));
  CHECK(metrication_factor(1) == doctest::Approx(1.0 / std::cos(M_PI / 8)).epsilon(1e-3));
}

TEST_CASE("free expansion on the lattice") {
  Scene sc = make_scene({{{0, 0}, 1.0}}, {}, 2.0, 0.0);
  Params p = exact_circle();
  GridOptions o;
  o.domain = Box{{-4, -4}, {4, 4}};
  GridField f = solve_grid(sc, 0.01, 2, p, o);
  SourceModel src({{{0, 0}, 1.0}}, 0);
  double t = grid_probe(f, sc, src, {3, 0});
  CHECK(t >= 2.0 - 1e-9);
  CHECK(t <= 2.0 + 2.8e-2);
  CHECK(grid_probe(f, sc, src, {0.1, 0.1}) == 0.0);

  auto ls = level_set(f, 1.0);
  REQUIRE(ls.size() == 1);
  CHECK(ls[0].closed);
  CHECK(ls[0].length() == doctest::Approx(4.0 * M_PI).epsilon(0.02));
}

TEST_CASE("corner scene converges to the exact value") {
  Scene sc = make_scene({{{0, 0}, 1.0}}, {{{2, -1}, {2, 1}}}, 2.0, 0.0);
  GridOptions o;
  o.domain = Box{{-2, -3}, {5, 3}};
  auto rep = convergence_report(sc, {0.04, 0.02, 0.01}, {{3, 0}}, exact_circle(), o);
  REQUIRE(rep.rows.size() == 3);
  const double exact = (std::sqrt(5.0) - 1.0) + std::sqrt(2.0);
  CHECK(rep.exact[0] == doctest::Approx(exact));
  for (const auto& r : rep.rows) CHECK(r.max_error <= 3.0 * r.h * metrication_factor(2));
  CHECK(rep.rows[2].max_error < rep.rows[0].max_error);
}

TEST_CASE("enclosed lattice region stays unburned") {
  Scene sc = make_scene({{{0, 0}, 1.0}},
                        {{{9, 9}, {11, 9}}, {{11, 9}, {11, 11}}, {{11, 11}, {9, 11}}, {{9, 11}, {9, 9}}}, 2.0, 0.0);
  GridOptions o;
  o.domain = Box{{-2, -2}, {12, 12}};
  GridField f = solve_grid(sc, 0.05, 2, exact_circle(), o);
  SourceModel src({{{0, 0}, 1.0}}, 0);
  CHECK(grid_probe(f, sc, src, {10, 10}) == kInfinity);
}
