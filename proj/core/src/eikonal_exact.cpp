#include "fireline/eikonal_exact.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>

#include "fireline/parallel.hpp"
#include "fireline/segment_index.hpp"

namespace fireline {

namespace {

double wrap(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  return a < 0.0 ? a + 2.0 * M_PI : a;
}

bool parallel_same(Point a, Point b) {
  double na = norm(a), nb = norm(b);
  if (na == 0.0 || nb == 0.0) return false;
  return std::abs(cross(a, b)) <= 1e-9 * na * nb && dot(a, b) > 0.0;
}

bool near_equal(double a, double b, double tol) {
  if (!std::isfinite(a) || !std::isfinite(b)) return a == b;
  return std::abs(a - b) <= tol * std::max({a, b, 1e-300});
}

double halton(std::uint64_t i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

}  // namespace

bool RelayNode::contains(Point dir) const {
  if (dir.x == 0.0 && dir.y == 0.0) return true;
  // boundary directions run along a barrier side and are allowed
  double a = wrap(std::atan2(dir.y, dir.x) - sector_lo);
  if (a > 2.0 * M_PI - 1e-12) a = 0.0;
  return a <= sector_width + 1e-12;
}

TimeSolver::TimeSolver(const Scene& scene, const Params& params)
    : scene_(scene), params_(params), source_(scene.initial, params.source_n) {
  scene_.validate();
  offset_ = params_.offset_rel * std::max(scene_.diameter(), 1e-300);
  const Barrier& B = scene_.barrier;
  if (B.empty()) return;

  std::vector<Point> pts;
  for (const auto& s : B.segments()) {
    pts.push_back(s.a);
    pts.push_back(s.b);
  }
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const auto& segs = B.segments();
  for (Point p : pts) {
    std::vector<double> dirs;
    Box tiny;
    tiny.add(p);
    B.index().for_box(tiny, [&](std::uint32_t id) {
      const Segment& s = segs[id];
      if (s.a == p) {
        dirs.push_back(wrap(std::atan2(s.b.y - p.y, s.b.x - p.x)));
      } else if (s.b == p) {
        dirs.push_back(wrap(std::atan2(s.a.y - p.y, s.a.x - p.x)));
      } else if (on_segment(p, s)) {
        dirs.push_back(wrap(std::atan2(s.b.y - p.y, s.b.x - p.x)));
        dirs.push_back(wrap(std::atan2(s.a.y - p.y, s.a.x - p.x)));
      }
      return true;
    });
    std::sort(dirs.begin(), dirs.end());
    std::vector<double> u;
    for (double d : dirs)
      if (u.empty() || d - u.back() > 1e-12) u.push_back(d);
    if (u.size() > 1 && u.front() + 2.0 * M_PI - u.back() <= 1e-12) u.pop_back();
    for (std::size_t k = 0; k < u.size(); ++k) {
      double lo = u[k];
      double width = (k + 1 < u.size()) ? u[k + 1] - lo : u[0] + 2.0 * M_PI - lo;
      if (u.size() == 1) width = 2.0 * M_PI;
      if (width <= M_PI + 1e-12) continue;
      RelayNode nd;
      nd.at = p;
      nd.sector_lo = lo;
      nd.sector_width = width;
      nodes_.push_back(nd);
    }
  }

  // source labels
  const double tol = params_.coopt_tol;
  for (auto& nd : nodes_) {
    nd.lower = source_.distance(nd.at);
    if (nd.lower == 0.0) {
      nd.time = 0.0;
      nd.from_source = true;
      nd.foot = nd.at;
      continue;
    }
    std::vector<std::pair<double, Point>> c(source_.discs().size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i].first = source_.distance_to(i, nd.at, &c[i].second);
    std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [d, f] : c) {
      if (nd.contains(f - nd.at) && visible(nd.at, f, B)) {
        nd.time = dist(nd.at, f);
        nd.from_source = true;
        nd.foot = f;
        break;
      }
    }
  }

  const std::size_t M = nodes_.size();
  std::vector<char> settled(M, 0);
  using QE = std::pair<double, int>;
  std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
  for (std::size_t i = 0; i < M; ++i)
    if (nodes_[i].time < kInfinity) pq.push({nodes_[i].time, static_cast<int>(i)});
  while (!pq.empty()) {
    auto [t, ui] = pq.top();
    pq.pop();
    if (settled[ui] || t > nodes_[ui].time) continue;
    settled[ui] = 1;
    const RelayNode& u = nodes_[ui];
    for (std::size_t vi = 0; vi < M; ++vi) {
      if (settled[vi]) continue;
      RelayNode& v = nodes_[vi];
      if (v.at == u.at) continue;
      double cand = u.time + dist(u.at, v.at);
      if (cand > v.time && !near_equal(cand, v.time, tol)) continue;
      if (v.time == v.lower && cand > v.time) continue;
      if (!u.contains(v.at - u.at) || !v.contains(u.at - v.at)) continue;
      if (!visible(u.at, v.at, B)) continue;
      if (near_equal(cand, v.time, tol)) {
        v.preds.push_back(ui);
        continue;
      }
      v.time = cand;
      v.preds.assign(1, ui);
      v.from_source = false;
      pq.push({cand, static_cast<int>(vi)});
    }
  }
}

TimeSolver build(const Scene& scene, int source_n, const Params& params) {
  Params p = params;
  p.source_n = source_n;
  return TimeSolver(scene, p);
}

bool TimeSolver::on_barrier_interior(Point x, Point* normal) const {
  const Barrier& B = scene_.barrier;
  if (B.empty()) return false;
  double eps = 1e-12 * std::max(scene_.diameter(), 1.0);
  Box b;
  b.add(x);
  bool hit = false;
  B.index().for_box(b.expanded(eps), [&](std::uint32_t id) {
    const Segment& s = B.segments()[id];
    if (dist(x, s.a) <= eps || dist(x, s.b) <= eps) return true;
    if (point_segment_distance(x, s) <= eps) {
      Point d = s.b - s.a;
      *normal = (1.0 / norm(d)) * perp(d);
      hit = true;
      return false;
    }
    return true;
  });
  return hit;
}

double TimeSolver::extended_leg(int ni, Point x, int depth) const {
  const RelayNode& u = nodes_[ni];
  double leg = dist(x, u.at);
  Point dir = x - u.at;
  if (depth > 64) return leg;
  double ext = 0.0;
  if (u.from_source && parallel_same(dir, u.at - u.foot)) ext = dist(u.at, u.foot);
  for (int p : u.preds)
    if (parallel_same(dir, u.at - nodes_[p].at)) ext = std::max(ext, extended_leg(p, u.at, depth + 1));
  return leg + ext;
}

std::vector<TimeSolver::Arrival> TimeSolver::arrivals_exact(Point x, double cap) const {
  std::vector<Arrival> out;
  if (source_.inside(x)) {
    out.push_back({0.0, -1, x, 0.0});
    return out;
  }
  const Barrier& B = scene_.barrier;
  const double tol = params_.coopt_tol;
  double lb = source_.distance(x);
  if (lb > cap) return out;
  Point foot;
  double direct = source_.visible_distance(x, B, &foot);
  if (direct == lb) {
    out.push_back({direct, -1, foot, direct});
    return out;
  }
  std::vector<std::pair<double, int>> keys;
  keys.reserve(nodes_.size() + 1);
  if (direct < kInfinity) keys.push_back({direct, -1});
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].time < kInfinity) keys.push_back({nodes_[i].time + dist(x, nodes_[i].at), static_cast<int>(i)});
  auto cmp = [](const auto& a, const auto& b) { return a.first > b.first; };
  std::make_heap(keys.begin(), keys.end(), cmp);
  double best = kInfinity;
  while (!keys.empty()) {
    std::pop_heap(keys.begin(), keys.end(), cmp);
    auto [k, i] = keys.back();
    keys.pop_back();
    if (best < kInfinity && !near_equal(k, best, tol)) break;
    if (k > cap) break;
    if (i < 0) {
      out.push_back({k, -1, foot, k});
    } else {
      const RelayNode& u = nodes_[i];
      if (!u.contains(x - u.at) || !visible(u.at, x, B)) continue;
      out.push_back({k, i, u.at, extended_leg(i, x, 0)});
    }
    if (best == kInfinity) best = k;
  }
  return out;
}

std::vector<TimeSolver::Arrival> TimeSolver::arrivals(Point x) const {
  Point n;
  if (!on_barrier_interior(x, &n)) return arrivals_exact(x);
  auto a = arrivals_exact(x + offset_ * n);
  double ta = a.empty() ? kInfinity : a.front().time;
  auto b = arrivals_exact(x - offset_ * n, ta);
  double tb = b.empty() ? kInfinity : b.front().time;
  return ta <= tb ? a : b;
}

std::pair<double, double> TimeSolver::side_times(Point x) const {
  Point n;
  if (!on_barrier_interior(x, &n)) {
    double t = min_time(x);
    return {t, t};
  }
  auto a = arrivals_exact(x + offset_ * n);
  auto b = arrivals_exact(x - offset_ * n);
  double ta = a.empty() ? kInfinity : a.front().time;
  double tb = b.empty() ? kInfinity : b.front().time;
  return {std::min(ta, tb), std::max(ta, tb)};
}

double TimeSolver::min_time(Point x) const {
  auto a = arrivals(x);
  return a.empty() ? kInfinity : a.front().time;
}

double TimeSolver::rho(Point x) const {
  auto a = arrivals(x);
  if (a.empty()) throw UnreachableError("rho: point is unreachable");
  double r = 0.0;
  for (const auto& ar : a) r = std::max(r, ar.leg);
  return std::min(r, a.front().time);
}

Trajectory TimeSolver::optimal_trajectory(Point x) const {
  auto arr = arrivals(x);
  if (arr.empty()) throw UnreachableError("optimal_trajectory: point is unreachable");
  auto bend = [&](const Arrival& a) { return a.node >= 0 ? nodes_[a.node].at : a.foot; };
  const Arrival* pick = &arr.front();
  for (const auto& a : arr) {
    if (a.leg > pick->leg * (1.0 + params_.coopt_tol))
      pick = &a;
    else if (near_equal(a.leg, pick->leg, params_.coopt_tol) && lex_less(bend(*pick), bend(a)))
      pick = &a;
  }
  std::vector<Point> rev{x};
  if (pick->node < 0) {
    if (pick->foot != x) rev.push_back(pick->foot);
  } else {
    int cur = pick->node;
    Point dir = x - nodes_[cur].at;
    for (int guard = 0; guard <= static_cast<int>(nodes_.size()); ++guard) {
      const RelayNode& u = nodes_[cur];
      rev.push_back(u.at);
      // prefer continuing straight, then the source, then the largest predecessor
      int next = -2;
      if (u.from_source && parallel_same(dir, u.at - u.foot)) next = -1;
      for (int p : u.preds)
        if (next == -2 && parallel_same(dir, u.at - nodes_[p].at)) next = p;
      if (next == -2 && u.from_source) next = -1;
      if (next == -2)
        for (int p : u.preds)
          if (next == -2 || lex_less(nodes_[next].at, nodes_[p].at)) next = p;
      if (next == -1) {
        if (u.foot != u.at) rev.push_back(u.foot);
        break;
      }
      if (next == -2) break;
      dir = u.at - nodes_[next].at;
      cur = next;
    }
  }
  std::reverse(rev.begin(), rev.end());
  Trajectory tr;
  std::vector<double> t(rev.size(), 0.0);
  for (std::size_t k = 1; k < rev.size(); ++k) t[k] = t[k - 1] + dist(rev[k - 1], rev[k]);
  for (std::size_t k = 0; k < rev.size(); ++k) {
    if (k > 0 && k + 1 < rev.size() && parallel_same(rev[k] - rev[k - 1], rev[k + 1] - rev[k])) continue;
    tr.vertices.push_back(rev[k]);
    tr.times.push_back(t[k]);
  }
  tr.total_time = tr.times.back();
  return tr;
}

std::vector<Extrapolated> extrapolate_times(const Scene& scene, int n, const std::vector<Point>& probes,
                                            const Params& params) {
  TimeSolver a = build(scene, n, params), b = build(scene, 2 * n, params), c = build(scene, 0, params);
  std::vector<Extrapolated> out(probes.size());
  parallel_for(probes.size(), [&](std::size_t i) {
    Extrapolated& e = out[i];
    e.t_n = a.min_time(probes[i]);
    e.t_2n = b.min_time(probes[i]);
    e.richardson = e.t_2n - (e.t_n - e.t_2n) / 3.0;
    e.limit = c.min_time(probes[i]);
    e.bound_n = a.error_bound();
    e.bound_2n = b.error_bound();
  });
  return out;
}

RhoIntegral rho_integral_report(const TimeSolver& solver, long samples, std::uint64_t seed, int shifts) {
  const Scene& sc = solver.scene();
  if (!complement_connected(sc.barrier))
    throw GeometryError("rho_integral_report: barrier complement is not connected");
  Box box;
  for (const auto& d : sc.initial) {
    box.add(d.center - Point{d.radius + 1.0, d.radius + 1.0});
    box.add(d.center + Point{d.radius + 1.0, d.radius + 1.0});
  }
  double area = (box.hi.x - box.lo.x) * (box.hi.y - box.lo.y);
  shifts = std::max(shifts, 2);
  long per = std::max(1L, samples / shifts);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<Point> shift(shifts);
  for (auto& s : shift) s = {U(rng), U(rng)};

  std::vector<double> rho_sum(shifts, 0.0), d_sum(shifts, 0.0), t_max(shifts, 0.0);
  const SourceModel& src = solver.source();
  for (int k = 0; k < shifts; ++k) {
    std::vector<double> rv(per, 0.0), dv(per, 0.0), tv(per, 0.0);
    parallel_for(static_cast<std::size_t>(per), [&](std::size_t i) {
      double u = std::fmod(halton(i + 1, 2) + shift[k].x, 1.0);
      double v = std::fmod(halton(i + 1, 3) + shift[k].y, 1.0);
      Point x{box.lo.x + u * (box.hi.x - box.lo.x), box.lo.y + v * (box.hi.y - box.lo.y)};
      double d = src.distance(x);
      if (d >= 1.0) return;
      dv[i] = d;
      if (d == 0.0) return;
      auto arr = solver.arrivals(x);
      if (arr.empty()) return;
      double r = 0.0;
      for (const auto& a : arr) r = std::max(r, a.leg);
      rv[i] = std::min(r, arr.front().time);
      tv[i] = arr.front().time;
    });
    for (long i = 0; i < per; ++i) {
      rho_sum[k] += rv[i];
      d_sum[k] += dv[i];
      t_max[k] = std::max(t_max[k], tv[i]);
    }
  }
  RhoIntegral r;
  r.samples = per * shifts;
  r.length = sc.barrier.total_length();
  auto mean_se = [&](const std::vector<double>& v, double* se) {
    double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    *se = std::sqrt(ss / (v.size() - 1) / v.size());
    return m;
  };
  std::vector<double> L(shifts), D(shifts), diff(shifts);
  for (int k = 0; k < shifts; ++k) {
    L[k] = area * rho_sum[k] / per;
    D[k] = area * d_sum[k] / per;
    diff[k] = L[k] - D[k];
  }
  r.t_hat = *std::max_element(t_max.begin(), t_max.end());
  r.lhs = mean_se(L, &r.lhs_se);
  double dint = mean_se(D, &r.rhs_se);
  mean_se(diff, &r.diff_se);
  r.rhs = dint - 0.5 * (r.t_hat * r.t_hat + r.t_hat) * r.length;
  r.t_hat_bound = r.t_hat <= 1.0 + r.length + 1e-6;
  return r;
}

}  // namespace fireline
