#include "fireline/eikonal_grid.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <queue>

#include "fireline/parallel.hpp"
#include "fireline/segment_index.hpp"

namespace fireline {

namespace {

// generic sub-cell shift so lattice nodes avoid exact barrier coordinates
constexpr double kShiftX = 0.3819660112501051;
constexpr double kShiftY = 0.2763932022500210;

}  // namespace

std::vector<std::pair<int, int>> stencil(int order) {
  std::vector<std::pair<int, int>> base{{1, 0}, {1, 1}};
  if (order >= 2) base.push_back({2, 1});
  if (order >= 3) {
    base.push_back({3, 1});
    base.push_back({3, 2});
  }
  if (order < 1 || order > 3) throw std::invalid_argument("stencil order must be 1, 2 or 3");
  std::vector<std::pair<int, int>> out;
  for (auto [a, b] : base) {
    std::vector<std::pair<int, int>> v{{a, b}, {b, a}};
    for (auto [p, q] : v)
      for (int sx : {1, -1})
        for (int sy : {1, -1}) {
          std::pair<int, int> m{sx * p, sy * q};
          if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
        }
  }
  return out;
}

double metrication_factor(int order) {
  auto st = stencil(order);
  std::vector<double> ang;
  for (auto [a, b] : st) ang.push_back(std::atan2(b, a));
  std::sort(ang.begin(), ang.end());
  double gap = 0.0;
  for (std::size_t k = 0; k < ang.size(); ++k) {
    double next = (k + 1 < ang.size()) ? ang[k + 1] : ang[0] + 2.0 * M_PI;
    gap = std::max(gap, next - ang[k]);
  }
  return 1.0 / std::cos(gap / 2.0);
}

Box default_domain(const Scene& scene, double margin) {
  Box b = scene.bounds();
  double m = margin * (scene.diameter() + scene.barrier.total_length());
  return b.expanded(m);
}

GridField solve_grid(const Scene& scene, double h, int order, const Params& params, const GridOptions& opts) {
  if (!(h > 0.0)) throw std::invalid_argument("solve_grid: h must be positive");
  auto moves = stencil(order);
  Box dom = opts.domain ? *opts.domain : default_domain(scene, params.grid_margin);
  GridField g;
  g.h = h;
  g.order = order;
  g.metrication = metrication_factor(order);
  g.origin = {dom.lo.x + kShiftX * h, dom.lo.y + kShiftY * h};
  double nxd = std::floor((dom.hi.x - g.origin.x) / h) + 1.0;
  double nyd = std::floor((dom.hi.y - g.origin.y) / h) + 1.0;
  if (nxd * nyd > params.max_grid_nodes)
    throw std::length_error("solve_grid: lattice exceeds max_grid_nodes");
  g.nx = static_cast<int>(nxd);
  g.ny = static_cast<int>(nyd);
  const std::size_t N = static_cast<std::size_t>(g.nx) * g.ny;
  g.times.assign(N, kInfinity);

  const Barrier& B = scene.barrier;
  int reach = order == 1 ? 1 : (order == 2 ? 2 : 3);
  double R = std::hypot(reach, reach == 1 ? 1 : reach - 1) * h * 1.0001;
  std::vector<std::uint8_t> near(N, 0);
  for (const auto& s : B.segments()) {
    int i0 = std::max(0, static_cast<int>(std::floor((std::min(s.a.x, s.b.x) - R - g.origin.x) / h)));
    int i1 = std::min(g.nx - 1, static_cast<int>(std::ceil((std::max(s.a.x, s.b.x) + R - g.origin.x) / h)));
    int j0 = std::max(0, static_cast<int>(std::floor((std::min(s.a.y, s.b.y) - R - g.origin.y) / h)));
    int j1 = std::min(g.ny - 1, static_cast<int>(std::ceil((std::max(s.a.y, s.b.y) + R - g.origin.y) / h)));
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i)
        if (point_segment_distance(g.node(i, j), s) <= R) near[static_cast<std::size_t>(j) * g.nx + i] = 1;
  }

  SourceModel src(scene.initial, params.source_n);
  using QE = std::pair<double, std::size_t>;
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
  for (const auto& d : scene.initial) {
    double rr = d.radius + 2.0 * h;
    int i0 = std::max(0, static_cast<int>(std::floor((d.center.x - rr - g.origin.x) / h)));
    int i1 = std::min(g.nx - 1, static_cast<int>(std::ceil((d.center.x + rr - g.origin.x) / h)));
    int j0 = std::max(0, static_cast<int>(std::floor((d.center.y - rr - g.origin.y) / h)));
    int j1 = std::min(g.ny - 1, static_cast<int>(std::ceil((d.center.y + rr - g.origin.y) / h)));
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) {
        Point p = g.node(i, j);
        std::size_t id = static_cast<std::size_t>(j) * g.nx + i;
        double t = kInfinity;
        double lb = src.distance(p);
        if (lb == 0.0)
          t = 0.0;
        else if (lb <= 2.0 * h)
          t = near[id] ? src.visible_distance(p, B, nullptr) : lb;
        if (t < g.times[id]) {
          g.times[id] = t;
          pq.push({t, id});
        }
      }
  }

  std::vector<double> mlen;
  for (auto [a, b] : moves) mlen.push_back(std::hypot(a, b) * h);
  std::vector<std::uint8_t> done(N, 0);
  while (!pq.empty()) {
    auto [t, id] = pq.top();
    pq.pop();
    if (done[id] || t > g.times[id]) continue;
    if (t > opts.t_stop) break;
    done[id] = 1;
    int i = static_cast<int>(id % g.nx), j = static_cast<int>(id / g.nx);
    Point p = g.node(i, j);
    for (std::size_t m = 0; m < moves.size(); ++m) {
      int a = i + moves[m].first, b = j + moves[m].second;
      if (a < 0 || b < 0 || a >= g.nx || b >= g.ny) continue;
      std::size_t nid = static_cast<std::size_t>(b) * g.nx + a;
      if (done[nid]) continue;
      double c = t + mlen[m];
      if (c >= g.times[nid]) continue;
      if (near[id] && !visible(p, g.node(a, b), B)) continue;
      g.times[nid] = c;
      pq.push({c, nid});
    }
  }
  if (opts.t_stop < kInfinity)
    for (std::size_t id = 0; id < N; ++id)
      if (!done[id]) g.times[id] = kInfinity;
  return g;
}

double grid_probe(const GridField& g, const Scene& scene, const SourceModel& source, Point x) {
  if (source.inside(x)) return 0.0;
  double fi = (x.x - g.origin.x) / g.h, fj = (x.y - g.origin.y) / g.h;
  int i0 = static_cast<int>(std::floor(fi)), j0 = static_cast<int>(std::floor(fj));
  double best = kInfinity;
  for (int j = j0 - 1; j <= j0 + 2; ++j)
    for (int i = i0 - 1; i <= i0 + 2; ++i) {
      if (i < 0 || j < 0 || i >= g.nx || j >= g.ny) continue;
      double t = g.at(i, j);
      if (t == kInfinity) continue;
      Point v = g.node(i, j);
      double c = t + dist(x, v);
      if (c < best && visible(v, x, scene.barrier)) best = c;
    }
  return best;
}

GridField sample_field(const TimeSolver& solver, Box box, double h) {
  GridField g;
  g.h = h;
  g.order = 0;
  g.origin = {box.lo.x + kShiftX * h, box.lo.y + kShiftY * h};
  g.nx = static_cast<int>(std::floor((box.hi.x - g.origin.x) / h)) + 1;
  g.ny = static_cast<int>(std::floor((box.hi.y - g.origin.y) / h)) + 1;
  g.times.assign(static_cast<std::size_t>(g.nx) * g.ny, kInfinity);
  parallel_for(static_cast<std::size_t>(g.ny), [&](std::size_t j) {
    for (int i = 0; i < g.nx; ++i) g.at(i, static_cast<int>(j)) = solver.min_time(g.node(i, static_cast<int>(j)));
  });
  return g;
}

std::vector<Polyline> level_set(const GridField& g, double t) {
  // edge keys: horizontal edge (i,j)-(i+1,j) -> 2*id, vertical (i,j)-(i,j+1) -> 2*id+1
  auto key = [&](int i, int j, int vert) {
    return (static_cast<long long>(j) * g.nx + i) * 2 + vert;
  };
  auto val = [&](int i, int j) {
    double v = g.at(i, j);
    return v == kInfinity ? 1e300 : v;
  };
  auto cross_pt = [&](int i, int j, int vert) {
    int i2 = vert ? i : i + 1, j2 = vert ? j + 1 : j;
    double a = val(i, j) - t, b = val(i2, j2) - t;
    double s = a / (a - b);
    if (!std::isfinite(s)) s = 0.5;
    s = std::clamp(s, 0.0, 1.0);
    Point p = g.node(i, j), q = g.node(i2, j2);
    return p + s * (q - p);
  };
  std::map<long long, std::vector<long long>> adj;
  std::map<long long, Point> where;
  auto add = [&](long long e1, long long e2) {
    adj[e1].push_back(e2);
    adj[e2].push_back(e1);
  };
  for (int j = 0; j + 1 < g.ny; ++j)
    for (int i = 0; i + 1 < g.nx; ++i) {
      bool c0 = val(i, j) < t, c1 = val(i + 1, j) < t, c2 = val(i + 1, j + 1) < t, c3 = val(i, j + 1) < t;
      int code = c0 | (c1 << 1) | (c2 << 2) | (c3 << 3);
      if (code == 0 || code == 15) continue;
      long long eb = key(i, j, 0), er = key(i + 1, j, 1), et = key(i, j + 1, 0), el = key(i, j, 1);
      std::vector<long long> es;
      if (c0 != c1) es.push_back(eb);
      if (c1 != c2) es.push_back(er);
      if (c2 != c3) es.push_back(et);
      if (c3 != c0) es.push_back(el);
      for (long long e : es)
        if (!where.count(e)) {
          int vert = static_cast<int>(e & 1);
          long long id = e >> 1;
          where[e] = cross_pt(static_cast<int>(id % g.nx), static_cast<int>(id / g.nx), vert);
        }
      if (es.size() == 2) {
        add(es[0], es[1]);
      } else if (es.size() == 4) {
        double centre = 0.25 * (val(i, j) + val(i + 1, j) + val(i + 1, j + 1) + val(i, j + 1));
        bool mid_in = centre < t;
        // saddle: es = {b, r, t, l}
        if ((code == 5) == mid_in) {
          add(eb, el);
          add(er, et);
        } else {
          add(eb, er);
          add(et, el);
        }
      }
    }
  std::vector<Polyline> out;
  std::map<long long, bool> used;
  auto walk = [&](long long start) {
    Polyline pl;
    long long prev = -1, cur = start;
    while (true) {
      used[cur] = true;
      pl.points.push_back(where[cur]);
      long long next = -1;
      for (long long n : adj[cur])
        if (n != prev && !used[n]) {
          next = n;
          break;
        }
      if (next < 0) {
        for (long long n : adj[cur])
          if (n == start && n != prev && pl.points.size() > 2) pl.closed = true;
        break;
      }
      prev = cur;
      cur = next;
    }
    return pl;
  };
  for (auto& [e, nb] : adj)
    if (nb.size() == 1 && !used[e]) out.push_back(walk(e));
  for (auto& [e, nb] : adj)
    if (!used[e]) out.push_back(walk(e));
  return out;
}

ConvergenceReport convergence_report(const Scene& scene, const std::vector<double>& h_list,
                                     const std::vector<Point>& probes, const Params& params,
                                     const GridOptions& opts) {
  ConvergenceReport rep;
  TimeSolver exact(scene, params);
  for (Point p : probes) rep.exact.push_back(exact.min_time(p));
  double tmax = 0.0;
  for (double t : rep.exact)
    if (t < kInfinity) tmax = std::max(tmax, t);
  SourceModel src(scene.initial, params.source_n);
  for (double h : h_list) {
    GridOptions o = opts;
    o.t_stop = std::min(o.t_stop, tmax + 4.0 * h);
    GridField g = solve_grid(scene, h, params.grid_order, params, o);
    ConvergenceRow row;
    row.h = h;
    for (std::size_t k = 0; k < probes.size(); ++k) {
      double tg = grid_probe(g, scene, src, probes[k]);
      double e = (tg == kInfinity && rep.exact[k] == kInfinity) ? 0.0 : std::abs(tg - rep.exact[k]);
      row.errors.push_back(e);
      row.max_error = std::max(row.max_error, e);
    }
    rep.rows.push_back(row);
  }
  double sum = 0.0;
  for (std::size_t k = 1; k < rep.rows.size(); ++k) {
    double a = rep.rows[k - 1].max_error, b = rep.rows[k].max_error;
    double ord = std::log(a / b) / std::log(rep.rows[k - 1].h / rep.rows[k].h);
    rep.orders.push_back(ord);
    sum += ord;
  }
  if (!rep.orders.empty()) rep.mean_order = sum / rep.orders.size();
  return rep;
}

void write_csv(const GridField& g, std::ostream& os) {
  os.precision(17);
  os << "# origin_x=" << g.origin.x << ",origin_y=" << g.origin.y << ",h=" << g.h << ",nx=" << g.nx
     << ",ny=" << g.ny << "\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (i) os << ',';
      double t = g.at(i, j);
      if (t == kInfinity)
        os << "inf";
      else
        os << t;
    }
    os << '\n';
  }
}

}  // namespace fireline
