#include "fireline/detour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

namespace fireline {

namespace {

double path_length(const std::vector<Point>& pts) {
  double L = 0.0;
  for (std::size_t k = 1; k < pts.size(); ++k) L += dist(pts[k - 1], pts[k]);
  return L;
}

std::vector<std::pair<double, double>> intervals_within(const SweepResult& s, double lo, double hi) {
  std::vector<std::pair<double, double>> out;
  for (const auto& iv : s.state_at(s.t_end).intervals) {
    double a = std::max(lo, iv.lo.x), b = std::min(hi, iv.hi.x);
    if (b > a) out.push_back({a, b});
  }
  return out;
}

std::vector<std::pair<double, double>> intersect(const std::vector<std::pair<double, double>>& A,
                                                 const std::vector<std::pair<double, double>>& B) {
  std::vector<std::pair<double, double>> out;
  for (auto [a0, a1] : A)
    for (auto [b0, b1] : B) {
      double lo = std::max(a0, b0), hi = std::min(a1, b1);
      if (hi > lo) out.push_back({lo, hi});
    }
  std::sort(out.begin(), out.end());
  return out;
}

// Length of s with t <= t_cut.
double mass_before(const Segment& s, double t_cut) {
  Point a = s.a, b = s.b;
  if (a.x > b.x) std::swap(a, b);
  if (t_cut < a.x) return 0.0;
  if (t_cut >= b.x) return s.length();
  return s.length() * (t_cut - a.x) / (b.x - a.x);
}

}  // namespace

const char* to_string(DetourStatus s) {
  switch (s) {
    case DetourStatus::ok: return "ok";
    case DetourStatus::hypothesis_failed: return "hypothesis-failed";
    case DetourStatus::density_failed: return "density-failed";
    case DetourStatus::overlap_empty: return "overlap-empty";
    case DetourStatus::crossing_detected: return "crossing-detected";
  }
  return "?";
}

DetourFrame make_frame(Point P, Point Q) {
  if (P == Q) throw DetourError("detour: P and Q coincide");
  DetourFrame f;
  f.mid = 0.5 * (P + Q);
  f.u = (1.0 / dist(P, Q)) * (Q - P);
  f.n = perp(f.u);
  f.kappa = 0.5 * dist(P, Q);
  return f;
}

bool strip_density_ok(const std::vector<Segment>& segs, double kappa, double eps) {
  std::vector<double> rs{1e-9 * kappa};
  for (const auto& s : segs)
    for (Point p : {s.a, s.b}) {
      if (p.x > -kappa && p.x <= kappa) rs.push_back(p.x + kappa);
      if (p.x < kappa && p.x >= -kappa) rs.push_back(kappa - p.x);
    }
  rs.push_back(2.0 * kappa);
  for (double r : rs) {
    if (r <= 0.0) continue;
    if (strip_mass(segs, -kappa, -kappa + r) >= eps * r / 3.0) return false;
    if (strip_mass(segs, kappa - r, kappa) >= eps * r / 3.0) return false;
  }
  return true;
}

bool cone_density_ok(const std::vector<Segment>& segs, double kappa, double eps) {
  // clip to the wedges |x| <= 4 eps (t + kappa) and |x| <= 4 eps (kappa - t)
  auto clip = [&](const Segment& s, int side) -> std::optional<Segment> {
    double u0 = 0.0, u1 = 1.0;
    Point d = s.b - s.a;
    // constraints of the form c.x * t + c.y * x + c0 <= 0
    std::vector<std::array<double, 3>> cons;
    double k = 4.0 * eps;
    if (side < 0) {
      cons = {{-k, 1.0, -k * kappa}, {-k, -1.0, -k * kappa}, {-1.0, 0.0, -kappa}};
    } else {
      cons = {{k, 1.0, -k * kappa}, {k, -1.0, -k * kappa}, {1.0, 0.0, -kappa}};
    }
    for (auto [ct, cx, c0] : cons) {
      double f0 = ct * s.a.x + cx * s.a.y + c0;
      double df = ct * d.x + cx * d.y;
      if (df == 0.0) {
        if (f0 > 0.0) return std::nullopt;
        continue;
      }
      double u = -f0 / df;
      if (df > 0.0)
        u1 = std::min(u1, u);
      else
        u0 = std::max(u0, u);
    }
    if (u1 <= u0) return std::nullopt;
    return Segment{s.at(u0), s.at(u1)};
  };
  for (int side : {-1, 1}) {
    std::vector<Segment> in;
    for (const auto& s : segs)
      if (auto c = clip(s, side)) in.push_back(*c);
    std::vector<double> ts{-kappa + 1e-9 * kappa, kappa - 1e-9 * kappa};
    for (const auto& s : in) {
      ts.push_back(s.a.x);
      ts.push_back(s.b.x);
    }
    for (double t : ts) {
      if (t <= -kappa || t >= kappa) continue;
      double m = 0.0;
      for (const auto& s : in) {
        if (side < 0) {
          m += mass_before(s, t);
        } else {
          Segment mir{{-s.a.x, s.a.y}, {-s.b.x, s.b.y}};
          m += mass_before(mir, -t);
        }
      }
      double room = side < 0 ? t + kappa : kappa - t;
      if (m >= eps * room / 3.0) return false;
    }
  }
  return true;
}

DetourResult construct_detour(const DetourFrame& frame, const std::vector<Segment>& segs, double eps,
                              const Params& params) {
  DetourResult res;
  const double kappa = frame.kappa;
  res.kappa = kappa;
  for (const auto& s : segs) res.h += s.length();
  res.bound = 2.0 * kappa + 9.0 * eps * res.h;
  Barrier fb = split_components(segs);
  auto finish = [&](std::vector<Point> g) {
    DetourPath& p = res.path;
    p.graph = std::move(g);
    for (Point q : p.graph) p.polyline.push_back(frame.to_scene(q));
    p.length = path_length(p.graph);
    for (std::size_t k = 1; k < p.graph.size(); ++k) {
      double dt = p.graph[k].x - p.graph[k - 1].x;
      p.slope_bound = std::max(p.slope_bound, std::abs(p.graph[k].y - p.graph[k - 1].y) / dt);
    }
    res.crossing_free = true;
    for (std::size_t k = 1; k < p.graph.size(); ++k)
      if (!visible(p.graph[k - 1], p.graph[k], fb)) res.crossing_free = false;
    res.within_bound = p.length <= res.bound * (1.0 + 1e-12);
    if (!res.crossing_free) {
      res.status = DetourStatus::crossing_detected;
      res.message = "reconstructed path touches the barrier";
    }
  };
  if (segs.empty()) {
    finish({{-kappa, 0.0}, {kappa, 0.0}});
    return res;
  }

  std::vector<Segment> work = segs;
  if (has_t_parallel(work)) {
    work = rotate_segments(work, params.sweep_rotation);
    res.rotated = true;
  }
  std::vector<Segment> left, right;
  for (const auto& s : work) {
    left.push_back({{s.a.x + kappa, s.a.y}, {s.b.x + kappa, s.b.y}});
    right.push_back({{kappa - s.a.x, s.a.y}, {kappa - s.b.x, s.b.y}});
  }
  const double top = 3.0 * res.h;
  SweepResult wl = attainable_sweep(left, eps, kappa, SweepMode::wide);
  SweepResult wr = attainable_sweep(right, eps, kappa, SweepMode::wide);
  res.wide_minus = wl.measure_within(0.0, top);
  res.wide_plus = wr.measure_within(0.0, top);

  SweepResult cl = attainable_sweep(left, eps, kappa, SweepMode::construction);
  SweepResult cr = attainable_sweep(right, eps, kappa, SweepMode::construction);
  auto both = intersect(intervals_within(cl, 0.0, top), intervals_within(cr, 0.0, top));
  double best = -1.0;
  for (auto [a, b] : both) {
    res.overlap += b - a;
    if (b - a > best) {
      best = b - a;
      res.y = 0.5 * (a + b);
    }
  }
  if (both.empty()) {
    res.status = DetourStatus::overlap_empty;
    res.message = "attainable sets from P and Q do not meet within [0, 3h]";
    return res;
  }
  std::vector<Point> gl = backtrack(cl, res.y), gr = backtrack(cr, res.y);
  std::vector<Point> g;
  for (Point p : gl) g.push_back({p.x - kappa, p.y});
  for (auto it = gr.rbegin(); it != gr.rend(); ++it) {
    Point q{kappa - it->x, it->y};
    if (!g.empty() && std::abs(q.x - g.back().x) <= 1e-15 * kappa && q.y == g.back().y) continue;
    g.push_back(q);
  }
  // drop repeated times, then pull the string through visible shortcuts
  std::vector<Point> h;
  for (Point p : g)
    if (h.empty() || p.x > h.back().x) h.push_back(p);
  std::vector<Point> pulled{h.front()};
  std::size_t i = 0;
  while (i + 1 < h.size()) {
    std::size_t j = h.size() - 1;
    while (j > i + 1 && !visible(h[i], h[j], fb)) --j;
    pulled.push_back(h[j]);
    i = j;
  }
  finish(pulled);
  return res;
}

DetourResult sparse_detour(Point P, Point Q, const Barrier& barrier, double eps, const Params& params) {
  if (!(eps > 0.0 && eps < 1.0)) throw DetourError("sparse_detour: eps must lie in (0, 1)");
  DetourFrame fr = make_frame(P, Q);
  std::vector<Segment> segs;
  for (const auto& s : barrier.pieces()) segs.push_back({fr.to_frame(s.a), fr.to_frame(s.b)});
  double h = barrier.total_length();
  bool gsm = h < 2.0 * fr.kappa * eps / 3.0;
  bool gp1 = strip_density_ok(segs, fr.kappa, eps);
  bool gp11 = cone_density_ok(segs, fr.kappa, eps);
  DetourResult res;
  if (!gsm || !(gp1 || gp11)) {
    res.kappa = fr.kappa;
    res.h = h;
    res.gsm = gsm;
    res.gp1 = gp1;
    res.gp11 = gp11;
    res.status = DetourStatus::hypothesis_failed;
    res.message = !gsm ? "barrier too long: m1 >= 2 kappa eps / 3" : "strip and cone density conditions both fail";
    return res;
  }
  res = construct_detour(fr, segs, eps, params);
  res.gsm = gsm;
  res.gp1 = gp1;
  res.gp11 = gp11;
  return res;
}

bool ball_density_ok(const std::vector<Segment>& segs, Point c, double eps, double r_max) {
  Barrier b = split_components(segs);
  std::vector<double> rs;
  for (int k = 0; k <= 64; ++k) rs.push_back(r_max * std::pow(2.0, -k / 4.0));
  for (const auto& s : segs) {
    for (double r : {dist(c, s.a), dist(c, s.b), point_segment_distance(c, s)}) {
      if (r <= 0.0) return false;
      rs.push_back(r);
      rs.push_back(r * (1.0 + 1e-9));
    }
  }
  for (double r : rs)
    if (r > 0.0 && r <= r_max && length_in_ball(b, c, r) > eps * r) return false;
  return true;
}

DetourResult flowbox_crossing(Point P, Point Q, Point Z, const Barrier& barrier, double eps, double eps0,
                              const Params& params) {
  std::vector<Point> tri{P, Q, Z};
  std::vector<Segment> inside;
  for (const auto& s : barrier.pieces())
    for (const auto& c : clip_inside(s, tri)) inside.push_back(c);
  double m = 0.0;
  for (const auto& s : inside) m += s.length();
  double rmax = std::max({dist(P, Q), dist(P, Z), dist(Q, Z)});
  DetourResult res;
  if (!ball_density_ok(inside, P, eps, rmax) || !ball_density_ok(inside, Q, eps, rmax)) {
    res.status = DetourStatus::density_failed;
    res.message = "ball density condition fails at P or Q";
    res.h = m;
    return res;
  }
  DetourFrame fr = make_frame(P, Q);
  if (fr.to_frame(Z).y < 0.0) fr.n = -1.0 * fr.n;
  std::vector<Segment> segs;
  for (const auto& s : inside) segs.push_back({fr.to_frame(s.a), fr.to_frame(s.b)});
  res = construct_detour(fr, segs, eps, params);
  res.bound = dist(P, Q) + eps0 * m;
  res.within_bound = res.path.graph.empty() ? false : res.path.length <= res.bound * (1.0 + 1e-12);
  if (res.ok()) {
    // the path has to stay inside the triangle
    for (Point p : res.path.polyline) {
      bool in = point_in_polygon(p, tri) || p == P || p == Q;
      if (!in && dist(p, closest_on_segment(p, {P, Q})) > 1e-12 * dist(P, Q)) {
        res.status = DetourStatus::crossing_detected;
        res.message = "path leaves the triangle";
        break;
      }
    }
  }
  return res;
}

}  // namespace fireline
