#include "fireline/burnedcost.hpp"

#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>

#include "fireline/segment_index.hpp"
#include "fireline/source.hpp"

namespace fireline {

namespace {

constexpr double kShiftX = 0.3819660112501051;
constexpr double kShiftY = 0.2763932022500210;
constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};

struct Lattice {
  Point origin;
  double h = 0.0;
  int nx = 0;
  int ny = 0;
  std::vector<std::uint8_t> near;
  Point node(int i, int j) const { return {origin.x + i * h, origin.y + j * h}; }
  std::size_t id(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
};

Lattice make_lattice(const Barrier& B, Box dom, double h, double max_nodes) {
  Lattice L;
  L.h = h;
  L.origin = {dom.lo.x - (1.0 - kShiftX) * h, dom.lo.y - (1.0 - kShiftY) * h};
  L.nx = static_cast<int>(std::ceil((dom.hi.x - L.origin.x) / h)) + 2;
  L.ny = static_cast<int>(std::ceil((dom.hi.y - L.origin.y) / h)) + 2;
  if (static_cast<double>(L.nx) * L.ny > max_nodes) throw std::length_error("burned_region: lattice too large");
  L.near.assign(static_cast<std::size_t>(L.nx) * L.ny, 0);
  for (const auto& s : B.pieces()) {
    Box b;
    b.add(s.a);
    b.add(s.b);
    b = b.expanded(1.5 * h);
    int i0 = std::max(0, static_cast<int>(std::floor((b.lo.x - L.origin.x) / h)));
    int i1 = std::min(L.nx - 1, static_cast<int>(std::ceil((b.hi.x - L.origin.x) / h)));
    int j0 = std::max(0, static_cast<int>(std::floor((b.lo.y - L.origin.y) / h)));
    int j1 = std::min(L.ny - 1, static_cast<int>(std::ceil((b.hi.y - L.origin.y) / h)));
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i)
        if (point_segment_distance(L.node(i, j), s) <= 1.5 * h) L.near[L.id(i, j)] = 1;
  }
  return L;
}

struct Fill {
  std::vector<std::uint8_t> mark;
  long count = 0;
  long band = 0;
  bool touched_border = false;
  int components = 0;
};

// 8-connected fill; moves near the barrier are checked for visibility.
Fill flood(const Lattice& L, const Barrier& B, const std::vector<std::size_t>& seeds, bool border_stops) {
  Fill F;
  F.mark.assign(L.near.size(), 0);
  std::deque<std::size_t> q;
  for (std::size_t s : seeds) {
    if (F.mark[s]) continue;
    ++F.components;
    F.mark[s] = 1;
    q.push_back(s);
    while (!q.empty()) {
      std::size_t id = q.front();
      q.pop_front();
      ++F.count;
      int i = static_cast<int>(id % L.nx), j = static_cast<int>(id / L.nx);
      if (i == 0 || j == 0 || i == L.nx - 1 || j == L.ny - 1) {
        F.touched_border = true;
        if (border_stops) return F;
      }
      bool blocked_side = false;
      for (int k = 0; k < 8; ++k) {
        int a = i + kDx[k], b = j + kDy[k];
        if (a < 0 || b < 0 || a >= L.nx || b >= L.ny) continue;
        std::size_t nid = L.id(a, b);
        if (L.near[id] && L.near[nid] && !visible(L.node(i, j), L.node(a, b), B)) {
          blocked_side = true;
          continue;
        }
        if (F.mark[nid]) continue;
        F.mark[nid] = 1;
        q.push_back(nid);
      }
      if (blocked_side) ++F.band;
    }
  }
  return F;
}

std::vector<std::size_t> source_seeds(const Lattice& L, const Scene& scene) {
  SourceModel src(scene.initial, 0);
  std::vector<std::size_t> seeds;
  for (const auto& d : scene.initial) {
    int i0 = std::max(0, static_cast<int>(std::floor((d.center.x - d.radius - L.origin.x) / L.h)));
    int i1 = std::min(L.nx - 1, static_cast<int>(std::ceil((d.center.x + d.radius - L.origin.x) / L.h)));
    int j0 = std::max(0, static_cast<int>(std::floor((d.center.y - d.radius - L.origin.y) / L.h)));
    int j1 = std::min(L.ny - 1, static_cast<int>(std::ceil((d.center.y + d.radius - L.origin.y) / L.h)));
    bool any = false;
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i)
        if (dist(L.node(i, j), d.center) <= d.radius) {
          seeds.push_back(L.id(i, j));
          any = true;
        }
    if (!any) {
      // disc smaller than the lattice: nearest node
      int i = static_cast<int>(std::lround((d.center.x - L.origin.x) / L.h));
      int j = static_cast<int>(std::lround((d.center.y - L.origin.y) / L.h));
      if (i >= 0 && j >= 0 && i < L.nx && j < L.ny) seeds.push_back(L.id(i, j));
    }
  }
  return seeds;
}

}  // namespace

BurnReport burned_region(const Scene& scene, double h, const Params& params) {
  if (!(h > 0.0)) throw std::invalid_argument("burned_region: h must be positive");
  BurnReport rep;
  rep.h = h;
  // a bounded burned region lies inside the scene box, so any margin decides it
  Box base = scene.bounds();
  double margin = 0.05 * base.diagonal() + 4.0 * h;
  for (int attempt = 0; attempt < 2; ++attempt) {
    Lattice L = make_lattice(scene.barrier, base.expanded(margin), h, params.max_grid_nodes);
    Fill F = flood(L, scene.barrier, source_seeds(L, scene), true);
    if (!F.touched_border) {
      rep.bounded = true;
      rep.area = F.count * h * h;
      rep.area_error_band = F.band * h * h;
      rep.cost = rep.area + scene.c0 * scene.barrier.total_length();
      rep.component_count = F.components;
      rep.filled = F.count;
      return rep;
    }
    margin *= 2.0;
  }
  rep.bounded = false;
  rep.area = std::numeric_limits<double>::infinity();
  rep.cost = std::numeric_limits<double>::infinity();
  rep.component_count = 1;
  return rep;
}

double total_cost(const Scene& scene, double h, const Params& params) { return burned_region(scene, h, params).cost; }

double local_burned_area(const Scene& scene, Box window, double h) {
  Lattice L = make_lattice(scene.barrier, window, h, 1e9);
  std::vector<std::size_t> seeds;
  for (int i = 0; i < L.nx; ++i) {
    seeds.push_back(L.id(i, 0));
    seeds.push_back(L.id(i, L.ny - 1));
  }
  for (int j = 0; j < L.ny; ++j) {
    seeds.push_back(L.id(0, j));
    seeds.push_back(L.id(L.nx - 1, j));
  }
  for (auto s : source_seeds(L, scene)) seeds.push_back(s);
  Fill F = flood(L, scene.barrier, seeds, false);
  long inside = 0;
  for (int j = 0; j < L.ny; ++j)
    for (int i = 0; i < L.nx; ++i)
      if (F.mark[L.id(i, j)] && window.contains(L.node(i, j))) ++inside;
  return inside * h * h;
}

}  // namespace fireline
