#include "fireline/geometry.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <numeric>

#include "fireline/segment_index.hpp"

namespace fireline {

namespace {

using rational = boost::multiprecision::cpp_rational;

int orient_exact(Point p, Point q, Point r) {
  rational px(p.x), py(p.y), qx(q.x), qy(q.y), rx(r.x), ry(r.y);
  rational det = (qx - px) * (ry - py) - (qy - py) * (rx - px);
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool in_box(Point p, const Segment& s) {
  return p.x >= std::min(s.a.x, s.b.x) && p.x <= std::max(s.a.x, s.b.x) && p.y >= std::min(s.a.y, s.b.y) &&
         p.y <= std::max(s.a.y, s.b.y);
}

// parameter of p along s, p assumed collinear
double param_on(Point p, const Segment& s) {
  Point d = s.b - s.a;
  return dot(p - s.a, d) / dot(d, d);
}

Box segment_box(const Segment& s) {
  Box b;
  b.add(s.a);
  b.add(s.b);
  return b;
}

}  // namespace

double Polyline::length() const {
  double L = 0.0;
  for (const auto& s : segments()) L += s.length();
  return L;
}

std::vector<Segment> Polyline::segments() const {
  std::vector<Segment> out;
  if (points.size() < 2) return out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) out.push_back({points[i], points[i + 1]});
  if (closed && points.front() != points.back()) out.push_back({points.back(), points.front()});
  return out;
}

void Box::add(Point p) {
  lo.x = std::min(lo.x, p.x);
  lo.y = std::min(lo.y, p.y);
  hi.x = std::max(hi.x, p.x);
  hi.y = std::max(hi.y, p.y);
}

void Box::add(const Box& b) {
  if (b.empty()) return;
  add(b.lo);
  add(b.hi);
}

int orient(Point p, Point q, Point r) {
  double detl = (q.x - p.x) * (r.y - p.y);
  double detr = (q.y - p.y) * (r.x - p.x);
  double det = detl - detr;
  double detsum = std::abs(detl) + std::abs(detr);
  constexpr double kErr = 3.3306690738754716e-16;  // (3 + 16 eps) eps, eps = 2^-53
  if (std::abs(det) > kErr * detsum) return det > 0 ? 1 : -1;
  if (detsum == 0.0 && (q.x == p.x || r.y == p.y) && (q.y == p.y || r.x == p.x)) return 0;
  return orient_exact(p, q, r);
}

const char* to_string(CrossKind k) {
  switch (k) {
    case CrossKind::disjoint: return "disjoint";
    case CrossKind::endpoint_touch: return "endpoint-touch";
    case CrossKind::interior_cross: return "interior-cross";
    case CrossKind::overlap: return "overlap";
  }
  return "?";
}

bool on_segment(Point p, const Segment& s) { return in_box(p, s) && orient(s.a, s.b, p) == 0; }

CrossKind segments_cross(const Segment& s, const Segment& t) {
  int o1 = orient(s.a, s.b, t.a), o2 = orient(s.a, s.b, t.b);
  int o3 = orient(t.a, t.b, s.a), o4 = orient(t.a, t.b, s.b);
  if (o1 == 0 && o2 == 0) {
    double u0 = param_on(t.a, s), u1 = param_on(t.b, s);
    if (u0 > u1) std::swap(u0, u1);
    double lo = std::max(0.0, u0), hi = std::min(1.0, u1);
    if (hi > lo) return CrossKind::overlap;
    if (hi == lo) return CrossKind::endpoint_touch;
    // parameters may round; fall back on exact endpoint equality
    if (s.a == t.a || s.a == t.b || s.b == t.a || s.b == t.b) return CrossKind::endpoint_touch;
    return CrossKind::disjoint;
  }
  if (o1 * o2 < 0 && o3 * o4 < 0) return CrossKind::interior_cross;
  if ((o1 == 0 && in_box(t.a, s)) || (o2 == 0 && in_box(t.b, s)) || (o3 == 0 && in_box(s.a, t)) ||
      (o4 == 0 && in_box(s.b, t)))
    return CrossKind::endpoint_touch;
  return CrossKind::disjoint;
}

Point closest_on_segment(Point p, const Segment& s) {
  Point d = s.b - s.a;
  double dd = dot(d, d);
  if (dd == 0.0) return s.a;
  double u = std::clamp(dot(p - s.a, d) / dd, 0.0, 1.0);
  return s.a + u * d;
}

double point_segment_distance(Point p, const Segment& s) { return dist(p, closest_on_segment(p, s)); }

double segment_segment_distance(const Segment& s, const Segment& t) {
  CrossKind k = segments_cross(s, t);
  if (k != CrossKind::disjoint) return 0.0;
  return std::min({point_segment_distance(s.a, t), point_segment_distance(s.b, t), point_segment_distance(t.a, s),
                   point_segment_distance(t.b, s)});
}

Box Barrier::bounds() const {
  Box b;
  for (const auto& s : segments_) {
    b.add(s.a);
    b.add(s.b);
  }
  return b;
}

Barrier split_components(const std::vector<Segment>& segments) {
  Barrier B;
  B.segments_ = segments;
  for (const auto& s : segments) {
    if (!std::isfinite(s.a.x) || !std::isfinite(s.a.y) || !std::isfinite(s.b.x) || !std::isfinite(s.b.y))
      throw GeometryError("segment with non-finite coordinates");
    if (s.a == s.b) throw GeometryError("zero-length segment");
  }
  B.index_ = std::make_shared<SegmentIndex>(segments);
  const std::size_t n = segments.size();
  UnionFind touch(n), over(n);
  for (std::size_t i = 0; i < n; ++i) {
    B.index_->for_box(segment_box(segments[i]), [&](std::uint32_t j) {
      if (j <= i) return true;
      CrossKind k = segments_cross(segments[i], segments[j]);
      if (k != CrossKind::disjoint) touch.unite(static_cast<int>(i), static_cast<int>(j));
      if (k == CrossKind::overlap) over.unite(static_cast<int>(i), static_cast<int>(j));
      return true;
    });
  }
  std::map<int, int> comp_id;
  B.component_of_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    int r = touch.find(static_cast<int>(i));
    auto it = comp_id.find(r);
    if (it == comp_id.end()) {
      it = comp_id.emplace(r, static_cast<int>(B.components_.size())).first;
      B.components_.emplace_back();
    }
    B.component_of_[i] = it->second;
    B.components_[it->second].segments.push_back(segments[i]);
  }
  // overlap clusters are collinear; merge their projections
  std::map<int, std::vector<int>> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters[over.find(static_cast<int>(i))].push_back(static_cast<int>(i));
  for (auto& [root, members] : clusters) {
    int comp = B.component_of_[members.front()];
    if (members.size() == 1) {
      B.pieces_.push_back(segments[members.front()]);
      B.piece_component_.push_back(comp);
      continue;
    }
    const Segment& ref = segments[members.front()];
    std::vector<std::pair<double, double>> iv;
    for (int m : members) {
      double u0 = param_on(segments[m].a, ref), u1 = param_on(segments[m].b, ref);
      iv.emplace_back(std::min(u0, u1), std::max(u0, u1));
    }
    std::sort(iv.begin(), iv.end());
    double lo = iv[0].first, hi = iv[0].second;
    auto emit = [&](double a, double b) {
      B.pieces_.push_back({ref.at(a), ref.at(b)});
      B.piece_component_.push_back(comp);
    };
    for (std::size_t k = 1; k < iv.size(); ++k) {
      if (iv[k].first <= hi) {
        hi = std::max(hi, iv[k].second);
      } else {
        emit(lo, hi);
        lo = iv[k].first;
        hi = iv[k].second;
      }
    }
    emit(lo, hi);
  }
  for (std::size_t k = 0; k < B.pieces_.size(); ++k) {
    double L = B.pieces_[k].length();
    B.components_[B.piece_component_[k]].length += L;
    B.total_length_ += L;
  }
  return B;
}

bool visible(Point p, Point q, const Barrier& barrier) {
  if (p == q || barrier.empty()) return true;
  bool blocked = false;
  // touches of the open segment pq: parameter along pq and the side of the arm leaving it
  struct Touch {
    double u;
    int side;
  };
  std::vector<Touch> touches;
  std::vector<std::pair<double, double>> rides;  // collinear overlaps, in parameters of pq
  const Segment pq{p, q};
  const auto& segs = barrier.segments();
  barrier.index().for_segment(p, q, [&](std::uint32_t id) {
    const Segment& s = segs[id];
    int o1 = orient(p, q, s.a), o2 = orient(p, q, s.b);
    if (o1 * o2 > 0) return true;
    if (o1 == 0 && o2 == 0) {
      double u0 = param_on(s.a, pq), u1 = param_on(s.b, pq);
      if (u0 > u1) std::swap(u0, u1);
      if (std::min(1.0, u1) > std::max(0.0, u0)) rides.push_back({std::max(0.0, u0), std::min(1.0, u1)});
      return true;
    }
    int o3 = orient(s.a, s.b, p), o4 = orient(s.a, s.b, q);
    if (o1 * o2 < 0) {
      if (o3 * o4 < 0) {
        blocked = true;
        return false;
      }
      return true;  // the line of s passes through p or q (or misses pq)
    }
    // exactly one endpoint of s on the line pq
    Point e = (o1 == 0) ? s.a : s.b;
    int side = (o1 == 0) ? o2 : o1;
    if (e == p || e == q) return true;
    if (!in_box(e, pq)) return true;
    touches.push_back({param_on(e, pq), side});
    return true;
  });
  if (blocked) return false;
  if (touches.size() < 2) return true;
  // Riding along a wall is allowed, but the path cannot switch sides while the
  // wall is under it, nor pass a point with arms on both sides.
  std::sort(rides.begin(), rides.end());
  std::vector<std::pair<double, double>> merged;
  for (auto r : rides) {
    if (!merged.empty() && r.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, r.second);
    else
      merged.push_back(r);
  }
  auto covered = [&](double a, double b) {
    if (a == b) return true;
    for (auto [lo, hi] : merged)
      if (lo <= a && b <= hi) return true;
    return false;
  };
  std::sort(touches.begin(), touches.end(), [](const Touch& a, const Touch& b) { return a.u < b.u; });
  bool left = false, right = false;
  for (std::size_t i = 0; i < touches.size(); ++i) {
    if (i > 0 && !covered(touches[i - 1].u, touches[i].u)) left = right = false;
    left |= touches[i].side > 0;
    right |= touches[i].side < 0;
    if (left && right) return false;
  }
  return true;
}

int bounded_face_count(const Barrier& barrier) {
  const auto& pieces = barrier.pieces();
  const std::size_t n = pieces.size();
  if (n == 0) return 0;
  SegmentIndex idx(pieces);
  std::vector<std::vector<double>> cuts(n);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    cuts[i] = {0.0, 1.0};
    Box b = segment_box(pieces[i]);
    idx.for_box(b, [&](std::uint32_t j) {
      if (j == i) return true;
      const Segment& s = pieces[i];
      const Segment& t = pieces[j];
      CrossKind k = segments_cross(s, t);
      if (k == CrossKind::interior_cross) {
        Point d1 = s.b - s.a, d2 = t.b - t.a;
        double u = cross(t.a - s.a, d2) / cross(d1, d2);
        cuts[i].push_back(u);
      } else if (k == CrossKind::endpoint_touch || k == CrossKind::overlap) {
        for (Point e : {t.a, t.b})
          if (on_segment(e, s)) cuts[i].push_back(param_on(e, s));
      }
      return true;
    });
  }
  // collect vertices
  struct V {
    Point p;
    int id;
  };
  std::vector<std::vector<Point>> vp(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& c = cuts[i];
    std::sort(c.begin(), c.end());
    for (double u : c) {
      Point p = (u == 0.0) ? pieces[i].a : (u == 1.0 ? pieces[i].b : pieces[i].at(u));
      vp[i].push_back(p);
      pts.push_back(p);
    }
  }
  Box bb = barrier.bounds();
  double tol = 1e-10 * std::max(1.0, bb.diagonal());
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(pts[a], pts[b]); });
  UnionFind vu(pts.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (std::size_t m = k + 1; m < order.size(); ++m) {
      if (pts[order[m]].x - pts[order[k]].x > tol) break;
      if (std::abs(pts[order[m]].y - pts[order[k]].y) <= tol)
        vu.unite(static_cast<int>(order[k]), static_cast<int>(order[m]));
    }
  }
  std::size_t V = 0;
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (vu.find(static_cast<int>(k)) == static_cast<int>(k)) ++V;
  std::size_t E = 0;
  UnionFind gu(pts.size());
  std::size_t base = 0;
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k + 1 < vp[i].size(); ++k) {
      int a = vu.find(static_cast<int>(base + k)), b = vu.find(static_cast<int>(base + k + 1));
      if (a == b) continue;
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    base += vp[i].size();
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  E = edges.size();
  for (auto& [a, b] : edges) gu.unite(a, b);
  std::size_t C = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    int r = vu.find(static_cast<int>(k));
    if (r == static_cast<int>(k) && gu.find(r) == r) ++C;
  }
  long faces = static_cast<long>(E) - static_cast<long>(V) + static_cast<long>(C);
  return static_cast<int>(std::max(0L, faces));
}

double length_in_ball(const Barrier& barrier, Point c, double r) {
  double total = 0.0;
  Box b{{c.x - r, c.y - r}, {c.x + r, c.y + r}};
  const auto& pieces = barrier.pieces();
  // pieces are not indexed; scan with a cheap box reject
  for (const auto& s : pieces) {
    if (std::max(s.a.x, s.b.x) < b.lo.x || std::min(s.a.x, s.b.x) > b.hi.x || std::max(s.a.y, s.b.y) < b.lo.y ||
        std::min(s.a.y, s.b.y) > b.hi.y)
      continue;
    Point d = s.b - s.a;
    Point f = s.a - c;
    double A = dot(d, d), B = 2.0 * dot(f, d), C = dot(f, f) - r * r;
    double disc = B * B - 4.0 * A * C;
    if (disc <= 0.0) continue;
    double sq = std::sqrt(disc);
    double u0 = std::max(0.0, (-B - sq) / (2.0 * A)), u1 = std::min(1.0, (-B + sq) / (2.0 * A));
    if (u1 > u0) total += (u1 - u0) * std::sqrt(A);
  }
  return total;
}

Polyline polygonalize_disc(const Disc& d, int n) {
  if (n < 8) throw GeometryError("polygonalize_disc: n too small (need n >= 8)");
  if (!(d.radius > 0.0)) throw GeometryError("polygonalize_disc: radius must be positive");
  Polyline pl;
  pl.closed = true;
  pl.points.reserve(n);
  for (int k = 0; k < n; ++k) {
    double th = 2.0 * M_PI * k / n;
    pl.points.push_back({d.center.x + d.radius * std::cos(th), d.center.y + d.radius * std::sin(th)});
  }
  return pl;
}

Polyline polygonalize_arc(Point center, double radius, double theta0, double theta1, int n) {
  if (n < 1) throw GeometryError("polygonalize_arc: n must be positive");
  Polyline pl;
  for (int k = 0; k <= n; ++k) {
    double th = theta0 + (theta1 - theta0) * k / n;
    pl.points.push_back({center.x + radius * std::cos(th), center.y + radius * std::sin(th)});
  }
  return pl;
}

double polygon_hausdorff_bound(double radius, int n) { return radius * (1.0 - std::cos(M_PI / n)); }

Box Scene::bounds() const {
  Box b = barrier.bounds();
  for (const auto& d : initial) {
    b.add(Point{d.center.x - d.radius, d.center.y - d.radius});
    b.add(Point{d.center.x + d.radius, d.center.y + d.radius});
  }
  return b;
}

void Scene::validate() const {
  if (initial.empty()) throw GeometryError("scene: initial burned set is empty");
  for (const auto& d : initial) {
    if (!(d.radius > 0.0) || !std::isfinite(d.radius)) throw GeometryError("scene: disc radius must be positive");
    if (!std::isfinite(d.center.x) || !std::isfinite(d.center.y)) throw GeometryError("scene: non-finite disc");
  }
  if (!(sigma > 1.0) || !std::isfinite(sigma)) throw GeometryError("scene: sigma must exceed 1");
  if (!(c0 >= 0.0) || !std::isfinite(c0)) throw GeometryError("scene: c0 must be non-negative");
}

Scene make_scene(std::vector<Disc> initial, const std::vector<Segment>& segments, double sigma, double c0) {
  Scene s;
  s.initial = std::move(initial);
  s.barrier = split_components(segments);
  s.sigma = sigma;
  s.c0 = c0;
  s.validate();
  return s;
}

double polygon_area(const std::vector<Point>& poly) {
  double a = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * std::abs(a);
}

bool point_in_polygon(Point p, const std::vector<Point>& poly) {
  bool in = false;
  for (std::size_t i = 0, n = poly.size(), j = n - 1; i < n; j = i++) {
    const Point& a = poly[i];
    const Point& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) in = !in;
    }
  }
  return in;
}

namespace {

std::vector<double> polygon_cuts(const Segment& s, const std::vector<Point>& poly) {
  std::vector<double> u{0.0, 1.0};
  Point d = s.b - s.a;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    Segment e{poly[i], poly[(i + 1) % n]};
    Point f = e.b - e.a;
    double den = cross(d, f);
    if (den == 0.0) continue;
    double t = cross(e.a - s.a, f) / den;
    double w = cross(e.a - s.a, d) / den;
    if (t > 0.0 && t < 1.0 && w >= 0.0 && w <= 1.0) u.push_back(t);
  }
  std::sort(u.begin(), u.end());
  return u;
}

}  // namespace

std::vector<Segment> clip_outside(const Segment& s, const std::vector<Point>& poly) {
  std::vector<Segment> out;
  auto u = polygon_cuts(s, poly);
  double run0 = -1.0, run1 = -1.0;
  for (std::size_t k = 0; k + 1 < u.size(); ++k) {
    if (u[k + 1] - u[k] <= 0.0) continue;
    Point mid = s.at(0.5 * (u[k] + u[k + 1]));
    bool inside = point_in_polygon(mid, poly);
    if (!inside) {
      if (run0 < 0.0) run0 = u[k];
      run1 = u[k + 1];
    } else if (run0 >= 0.0) {
      out.push_back({s.at(run0), s.at(run1)});
      run0 = -1.0;
    }
  }
  if (run0 >= 0.0) {
    Point a = s.at(run0), b = (run1 == 1.0) ? s.b : s.at(run1);
    if (run0 == 0.0) a = s.a;
    out.push_back({a, b});
  }
  std::vector<Segment> kept;
  for (auto& seg : out)
    if (seg.a != seg.b) kept.push_back(seg);
  return kept;
}

std::vector<Segment> clip_inside(const Segment& s, const std::vector<Point>& poly) {
  std::vector<Segment> out;
  auto u = polygon_cuts(s, poly);
  double run0 = -1.0, run1 = -1.0;
  auto flush = [&] {
    if (run0 >= 0.0 && run1 > run0) {
      Point a = run0 == 0.0 ? s.a : s.at(run0), b = run1 == 1.0 ? s.b : s.at(run1);
      if (a != b) out.push_back({a, b});
    }
    run0 = -1.0;
  };
  for (std::size_t k = 0; k + 1 < u.size(); ++k) {
    if (u[k + 1] - u[k] <= 0.0) continue;
    if (point_in_polygon(s.at(0.5 * (u[k] + u[k + 1])), poly)) {
      if (run0 < 0.0) run0 = u[k];
      run1 = u[k + 1];
    } else {
      flush();
    }
  }
  flush();
  return out;
}

double length_inside(const Segment& s, const std::vector<Point>& poly) {
  auto u = polygon_cuts(s, poly);
  double L = 0.0, len = s.length();
  for (std::size_t k = 0; k + 1 < u.size(); ++k) {
    if (u[k + 1] - u[k] <= 0.0) continue;
    if (point_in_polygon(s.at(0.5 * (u[k] + u[k + 1])), poly)) L += (u[k + 1] - u[k]) * len;
  }
  return L;
}

}  // namespace fireline
