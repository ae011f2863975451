#include "fireline/flowbox.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fireline/burnedcost.hpp"
#include "fireline/eikonal_grid.hpp"
#include "fireline/parallel.hpp"
#include "fireline/segment_index.hpp"
#include "fireline/strategy.hpp"

namespace fireline {

namespace {

Point unit(Point v) { return (1.0 / norm(v)) * v; }

std::vector<Point> frame_square(const Anchor& a, double half) {
  return {a.to_scene({-half, -half}), a.to_scene({half, -half}), a.to_scene({half, half}), a.to_scene({-half, half})};
}

Box box_of(const std::vector<Point>& pts) {
  Box b;
  for (Point p : pts) b.add(p);
  return b;
}

// Barrier pieces clipped to a polygon.
std::vector<Segment> pieces_inside(const Barrier& B, const std::vector<Point>& poly) {
  Box bb = box_of(poly);
  std::vector<Segment> out;
  for (const auto& s : B.pieces()) {
    if (std::max(s.a.x, s.b.x) < bb.lo.x || std::min(s.a.x, s.b.x) > bb.hi.x) continue;
    if (std::max(s.a.y, s.b.y) < bb.lo.y || std::min(s.a.y, s.b.y) > bb.hi.y) continue;
    for (const auto& c : clip_inside(s, poly)) out.push_back(c);
  }
  return out;
}

double polyline_distance(Point p, const std::vector<Point>& pl) {
  if (pl.size() == 1) return dist(p, pl[0]);
  double d = kInfinity;
  for (std::size_t k = 1; k < pl.size(); ++k) d = std::min(d, point_segment_distance(p, {pl[k - 1], pl[k]}));
  return d;
}

double barrier_clearance(const Barrier& B, const Segment& s, double reach) {
  Box b;
  b.add(s.a);
  b.add(s.b);
  b = b.expanded(reach);
  double d = reach;
  B.index().for_box(b, [&](int id) {
    d = std::min(d, segment_segment_distance(s, B.index().segments()[id]));
    return true;
  });
  return d;
}

double dist_to_barrier(const Barrier& B, Point p, double reach) {
  Box b;
  b.add(p);
  b = b.expanded(reach);
  double d = reach;
  B.index().for_box(b, [&](int id) {
    d = std::min(d, point_segment_distance(p, B.index().segments()[id]));
    return true;
  });
  return d;
}

// Exact times in frame units on a frame lattice.
struct FrameLattice {
  GridField field;  // coordinates are frame coordinates
};

FrameLattice frame_lattice(const TimeSolver& solver, const Anchor& a, double g) {
  FrameLattice L;
  GridField& f = L.field;
  f.origin = {-1.5, -0.25};
  f.h = g;
  f.nx = static_cast<int>(std::lround(3.0 / g)) + 1;
  f.ny = static_cast<int>(std::lround(1.5 / g)) + 1;
  f.order = 0;
  f.times.assign(static_cast<std::size_t>(f.nx) * f.ny, kInfinity);
  parallel_for(f.times.size(), [&](std::size_t k) {
    int i = static_cast<int>(k % f.nx), j = static_cast<int>(k / f.nx);
    double T = solver.min_time(a.to_scene(f.node(i, j)));
    f.times[k] = (T - a.t) / a.scale;
  });
  return L;
}

// Subchain of one level-set polyline between the vertices nearest to p and q.
std::optional<std::vector<Point>> chain_between(const std::vector<Polyline>& lines, Point p, Point q, double tol) {
  for (const auto& pl : lines) {
    const auto& v = pl.points;
    if (v.size() < 2) continue;
    std::size_t ip = 0, iq = 0;
    double dp = kInfinity, dq = kInfinity;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (dist(v[k], p) < dp) dp = dist(v[k], p), ip = k;
      if (dist(v[k], q) < dq) dq = dist(v[k], q), iq = k;
    }
    if (dp > tol || dq > tol || ip == iq) continue;
    std::vector<Point> out{p};
    if (ip < iq) {
      for (std::size_t k = ip + 1; k < iq; ++k) out.push_back(v[k]);
    } else {
      for (std::size_t k = ip - 1; k > iq; --k) out.push_back(v[k]);
    }
    out.push_back(q);
    return out;
  }
  return std::nullopt;
}

struct Leg {
  Point A, C;
  double clearance = -1.0;
};

std::optional<Leg> find_leg(const TimeSolver& solver, const Anchor& a, Box rect, double time0, double height, int n) {
  const Barrier& B = solver.scene().barrier;
  std::vector<Leg> found(static_cast<std::size_t>(n) * n);
  parallel_for(found.size(), [&](std::size_t k) {
    int i = static_cast<int>(k % n), j = static_cast<int>(k / n);
    Point s{rect.lo.x + (i + 0.5) * (rect.hi.x - rect.lo.x) / n, rect.lo.y + (j + 0.5) * (rect.hi.y - rect.lo.y) / n};
    Point x = a.to_scene(s);
    auto arr = solver.arrivals(x);
    if (arr.empty()) return;
    const auto& best = *std::max_element(arr.begin(), arr.end(),
                                         [](const auto& u, const auto& v) { return u.leg < v.leg; });
    Point start = best.node >= 0 ? solver.nodes()[best.node].at : best.foot;
    if (dist(start, x) <= 0.0) return;
    Point dir = unit(x - start);
    for (const auto& o : arr) {
      Point st = o.node >= 0 ? solver.nodes()[o.node].at : o.foot;
      if (dist(unit(x - st), dir) > 1e-9) return;  // ambiguous direction
    }
    double T = best.time;
    if (T < time0 + height * (1.0 + 1e-9)) return;
    if (best.leg < T - time0) return;
    Leg L;
    L.A = x - (T - time0) * dir;
    L.C = L.A + height * dir;
    if (!visible(L.A, L.C, B)) return;
    L.clearance = B.empty() ? height : barrier_clearance(B, {L.A, L.C}, height);
    if (L.clearance <= 1e-9 * a.scale) return;
    found[k] = L;
  });
  std::optional<Leg> out;
  for (const auto& L : found)
    if (L.clearance > 0.0 && (!out || L.clearance > out->clearance)) out = L;
  return out;
}

MassProfile psi_profile(const TimeSolver& solver, const Anchor& a, const FrameLattice& L, double t0) {
  auto fronts = level_set(L.field, t0);
  std::vector<Point> sq = frame_square(a, 1.0);
  std::vector<std::pair<double, double>> samples;
  for (const auto& s : pieces_inside(solver.scene().barrier, sq)) {
    int n = std::max(8, static_cast<int>(std::ceil(s.length() / (a.scale / 256.0))));
    for (int k = 0; k < n; ++k) {
      Point p = s.at((k + 0.5) / n);
      double tp = (solver.min_time(p) - a.t) / a.scale;
      if (!(tp > t0)) {
        samples.push_back({0.0, s.length() / n / a.scale});
        continue;
      }
      Point f = a.to_frame(p);
      double d = kInfinity;
      for (const auto& pl : fronts) d = std::min(d, polyline_distance(f, pl.points));
      samples.push_back({d, s.length() / n / a.scale});
    }
  }
  return MassProfile::from_samples(std::move(samples));
}

FlowboxBuild build_impl(const TimeSolver& solver, const Anchor& a, const FrameLattice& L, double t0, double h,
                        const FlowboxOptions& opts) {
  FlowboxBuild res;
  FlowBox& fb = res.box;
  const Barrier& B = solver.scene().barrier;
  fb.anchor = a;
  fb.t0 = t0;
  fb.h = h;
  fb.eps = opts.eps;
  fb.time0 = a.t + a.scale * t0;
  fb.height = a.scale * h;
  fb.h_grid = a.scale * opts.grid_step;

  auto la = find_leg(solver, a, {{-1.0, 5.0 / 6.0}, {-0.5, 1.0}}, fb.time0, fb.height, opts.leg_grid);
  auto lb = find_leg(solver, a, {{0.5, 5.0 / 6.0}, {1.0, 1.0}}, fb.time0, fb.height, opts.leg_grid);
  if (!la || !lb) {
    res.message = "no straight optimal leg found in the left or right rectangle";
    return res;
  }
  fb.side_A = {la->A, la->C};
  fb.side_B = {lb->A, lb->C};
  fb.side_clearance = std::min(la->clearance, lb->clearance);
  fb.clearance = segment_segment_distance(fb.side_A, fb.side_B);
  if (fb.clearance <= 0.0) {
    res.message = "sides meet";
    return res;
  }

  const double g = opts.grid_step;
  auto lower = chain_between(level_set(L.field, t0), a.to_frame(la->A), a.to_frame(lb->A), 2.0 * g);
  if (!lower) {
    res.message = "lower front does not join A and B";
    return res;
  }
  std::vector<std::uint8_t> mask(L.field.times.size());
  for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = L.field.times[k] <= t0 ? 1 : 0;
  auto d2 = distance_transform(mask, L.field.nx, L.field.ny);
  GridField dfield = L.field;
  for (std::size_t k = 0; k < d2.size(); ++k) dfield.times[k] = std::sqrt(d2[k]) * g;
  auto upper = chain_between(level_set(dfield, h), a.to_frame(la->C), a.to_frame(lb->C), 3.0 * g);
  if (!upper) {
    res.message = "offset curve does not join C and D";
    return res;
  }
  for (Point p : *lower) fb.lower.points.push_back(a.to_scene(p));
  for (Point p : *upper) fb.upper.points.push_back(a.to_scene(p));
  fb.region = fb.lower.points;
  for (auto it = fb.upper.points.rbegin(); it != fb.upper.points.rend(); ++it) fb.region.push_back(*it);
  if (std::abs(polygon_area(fb.region)) <= 0.0) {
    res.message = "degenerate region";
    return res;
  }

  // (basm) and (sparse1)
  auto inside = pieces_inside(B, fb.region);
  std::vector<std::pair<double, double>> lo, up;
  for (const auto& s : inside) {
    fb.barrier_mass += s.length();
    int n = std::max(16, static_cast<int>(std::ceil(s.length() / (a.scale / 1024.0))));
    for (int k = 0; k < n; ++k) {
      Point p = s.at((k + 0.5) / n);
      lo.push_back({polyline_distance(p, fb.lower.points), s.length() / n});
      up.push_back({polyline_distance(p, fb.upper.points), s.length() / n});
    }
  }
  fb.basm_ok = fb.barrier_mass <= opts.eps * a.scale;
  auto worst = [&](std::vector<std::pair<double, double>>& v, double c) {
    std::sort(v.begin(), v.end());
    double cum = 0.0, w = 0.0;
    for (auto [d, m] : v) {
      cum += m;
      w = std::max(w, d > 0.0 ? cum / (c * opts.eps * d) : kInfinity);
    }
    return w;
  };
  fb.worst_lower_ratio = worst(lo, 6.0);
  fb.worst_upper_ratio = worst(up, 12.0);
  fb.sparse_lower_ok = fb.worst_lower_ratio <= 1.0;
  fb.sparse_upper_ok = fb.worst_upper_ratio <= 1.0;
  if (!fb.valid()) {
    res.message = !fb.basm_ok ? "barrier mass in the box exceeds eps" : "layered sparsity fails";
    return res;
  }
  res.ok = true;
  return res;
}

}  // namespace

double MassProfile::value(double t) const {
  auto it = std::upper_bound(at.begin(), at.end(), t);
  return it == at.begin() ? 0.0 : mass[static_cast<std::size_t>(it - at.begin()) - 1];
}

MassProfile MassProfile::from_samples(std::vector<std::pair<double, double>> samples) {
  std::sort(samples.begin(), samples.end());
  MassProfile p;
  double cum = 0.0;
  for (auto [t, w] : samples) {
    cum += w;
    if (!p.at.empty() && p.at.back() == t) {
      p.mass.back() = cum;
    } else {
      p.at.push_back(t);
      p.mass.push_back(cum);
    }
  }
  return p;
}

std::optional<double> choose_t0(const MassProfile& phi, double eps, double t_lo, double t_hi, double t_end) {
  std::vector<double> cand{t_lo};
  for (double a : phi.at)
    if (a > t_lo && a <= t_hi) cand.push_back(a);
  for (double t0 : cand) {
    double base = phi.value(t0);
    bool ok = true;
    for (std::size_t k = 0; k < phi.at.size() && ok; ++k) {
      double a = phi.at[k];
      if (a <= t0 || a > t_end) continue;
      if (phi.mass[k] - base > 6.0 * eps * (a - t0) * (1.0 + 1e-12)) ok = false;
    }
    if (ok) return t0;
  }
  return std::nullopt;
}

std::optional<double> choose_t0(const TouchProfile& profile, double eps, double t_lo, double t_hi, double t_end) {
  std::vector<std::pair<double, double>> s;
  double prev = 0.0;
  for (std::size_t k = 0; k < profile.sample_times.size(); ++k) {
    s.push_back({profile.sample_times[k], profile.phi[k] - prev});
    prev = profile.phi[k];
  }
  return choose_t0(MassProfile::from_samples(std::move(s)), eps, t_lo, t_hi, t_end);
}

std::optional<double> choose_h(const MassProfile& psi, double eps, double h_lo, double h_hi) {
  auto check = [&](double h, bool exclusive) {
    double top = exclusive ? 0.0 : psi.value(h);
    if (exclusive) {
      auto it = std::lower_bound(psi.at.begin(), psi.at.end(), h);
      top = it == psi.at.begin() ? 0.0 : psi.mass[static_cast<std::size_t>(it - psi.at.begin()) - 1];
    }
    for (std::size_t k = 0; k < psi.at.size(); ++k) {
      double a = psi.at[k];
      if (a > h || (exclusive && a >= h)) break;
      double below = a <= 0.0 ? psi.mass[k] : (k == 0 ? 0.0 : psi.mass[k - 1]);
      double d = std::max(a, 0.0);
      if (top - below > 12.0 * eps * (h - d) * (1.0 + 1e-12) + 1e-300) return false;
    }
    return true;
  };
  if (check(h_hi, false)) return h_hi;
  for (auto it = psi.at.rbegin(); it != psi.at.rend(); ++it) {
    double a = *it;
    if (a > h_hi) continue;
    if (a <= h_lo) break;
    if (check(a, true)) return std::nextafter(a, 0.0);
  }
  return std::nullopt;
}

std::vector<Point> anchor_candidates(Box omega, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(omega.lo.x, omega.hi.x), uy(omega.lo.y, omega.hi.y);
  std::vector<Point> out;
  for (int k = 0; k < count; ++k) {
    double x = ux(rng);
    out.push_back({x, uy(rng)});
  }
  return out;
}

std::optional<Anchor> test_anchor(const TimeSolver& solver, Point x, const FlowboxOptions& opts, std::string* why) {
  auto reject = [&](std::string m) -> std::optional<Anchor> {
    if (why) *why = std::move(m);
    return std::nullopt;
  };
  const Barrier& B = solver.scene().barrier;
  double T = solver.min_time(x);
  if (!std::isfinite(T)) return reject("unreachable");
  if (!B.empty() && dist_to_barrier(B, x, opts.r_max) <= 1e-9 * opts.r_max) return reject("on the barrier");
  // gradient by central differences at two step sizes
  auto grad = [&](double d) {
    return Point{(solver.min_time(x + Point{d, 0}) - solver.min_time(x - Point{d, 0})) / (2 * d),
                 (solver.min_time(x + Point{0, d}) - solver.min_time(x - Point{0, d})) / (2 * d)};
  };
  double d = 1e-5 * opts.r_max;
  Point g1 = grad(d), g2 = grad(0.5 * d);
  if (!std::isfinite(g1.x) || !std::isfinite(g1.y) || dist(g1, g2) > 1e-3 || std::abs(norm(g1) - 1.0) > 1e-3)
    return reject("T not differentiable here");
  Anchor a;
  a.x = x;
  a.t = T;
  a.e2 = unit(g1);
  a.e1 = {a.e2.y, -a.e2.x};
  // scale: largest r with m1(barrier in the frame square [-2,2]^2) <= eps r
  for (double r = opts.r_max; r >= opts.r_max / 64.0; r /= std::sqrt(2.0)) {
    a.scale = r;
    double m = 0.0;
    for (const auto& s : pieces_inside(B, frame_square(a, 2.0))) m += s.length();
    if (m <= opts.eps * r) {
      a.local_mass = m;
      break;
    }
    a.scale = 0.0;
  }
  if (a.scale <= 0.0) return reject("barrier too dense at every scale");
  for (int k = 0; k <= opts.density_levels; ++k) {
    double r = a.scale * std::pow(0.5, k);
    double dens = length_in_ball(B, x, r) / (r * r);
    a.worst_density = std::max(a.worst_density, dens);
  }
  if (a.worst_density >= opts.density_max) return reject("local density too high");
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j) {
      Point s{i / 4.0, j / 4.0};
      double tp = (solver.min_time(a.to_scene(s)) - a.t) / a.scale;
      if (std::isfinite(tp)) a.flatness = std::max(a.flatness, std::abs(tp - s.y));
    }
  return a;
}

AnchorSearch find_anchor(const TimeSolver& solver, Box omega, const FlowboxOptions& opts) {
  AnchorSearch out;
  for (Point p : anchor_candidates(omega, opts.candidates, opts.seed)) {
    ++out.tried;
    std::string why;
    if (auto a = test_anchor(solver, p, opts, &why)) {
      out.anchor = a;
      return out;
    }
    out.rejections.push_back(why);
  }
  return out;
}

MassProfile local_phi(const TimeSolver& solver, const Anchor& a) {
  std::vector<std::pair<double, double>> samples;
  for (const auto& s : pieces_inside(solver.scene().barrier, frame_square(a, 2.0))) {
    int n = std::max(8, static_cast<int>(std::ceil(s.length() / (a.scale / 256.0))));
    for (int k = 0; k < n; ++k) {
      double tp = (solver.min_time(s.at((k + 0.5) / n)) - a.t) / a.scale;
      if (tp > 0.0 && std::isfinite(tp)) samples.push_back({tp, s.length() / n / a.scale});
    }
  }
  return MassProfile::from_samples(std::move(samples));
}

FlowboxBuild build_flowbox(const TimeSolver& solver, const Anchor& anchor, double t0, double h,
                           const FlowboxOptions& opts) {
  FrameLattice L = frame_lattice(solver, anchor, opts.grid_step);
  return build_impl(solver, anchor, L, t0, h, opts);
}

FlowboxBuild construct_flowbox(const TimeSolver& solver, Box omega, const FlowboxOptions& opts) {
  FlowboxBuild last;
  last.message = "no anchor candidate passed";
  int tried = 0;
  for (Point p : anchor_candidates(omega, opts.candidates, opts.seed)) {
    ++tried;
    auto a = test_anchor(solver, p, opts);
    if (!a) continue;
    auto t0 = choose_t0(local_phi(solver, *a), opts.eps, 1.0 / 3.0, 0.5, 1.0);
    if (!t0) {
      last.message = "no t0 satisfies the sunrise condition";
      continue;
    }
    FrameLattice L = frame_lattice(solver, *a, opts.grid_step);
    auto h = choose_h(psi_profile(solver, *a, L, *t0), opts.eps, 0.25, 1.0 / 3.0);
    if (!h) {
      last.message = "no h satisfies the sunrise condition";
      continue;
    }
    FlowboxBuild b = build_impl(solver, *a, L, *t0, *h, opts);
    b.anchors_tried = tried;
    if (b.ok) return b;
    last = b;
  }
  last.anchors_tried = tried;
  return last;
}

Scene prune(const Scene& scene, const FlowBox& box) {
  std::vector<Segment> keep;
  for (const auto& s : scene.barrier.segments())
    for (const auto& c : clip_outside(s, box.region))
      if (c.length() > 0.0) keep.push_back(c);
  return make_scene(scene.initial, keep, scene.sigma, scene.c0);
}

CertifyReport certify_improvement(const Scene& original, const Scene& pruned, const FlowBox& box, double h_grid,
                                  const Params& params) {
  TimeSolver s(original, params);
  return certify_improvement(s, pruned, box, h_grid);
}

CertifyReport certify_improvement(const TimeSolver& orig, const Scene& pruned, const FlowBox& box, double h_grid) {
  CertifyReport rep;
  const Scene& original = orig.scene();
  const Params& P = orig.params();
  rep.removed_mass = std::max(0.0, original.barrier.total_length() - pruned.barrier.total_length());
  rep.tolerance = P.adm_tol * original.sigma * original.diameter();
  const double t_box = box.time0 + box.height;

  TimeSolver ps(pruned, P);
  TouchProfile prof = phi_profile(ps);
  auto full = admissibility(prof, pruned.sigma, rep.tolerance);
  auto after = admissibility(prof, pruned.sigma, rep.tolerance, 0.02, t_box);
  rep.pruned_admissible = full.admissible;
  rep.worst_margin_after = after.worst_margin;
  rep.required_margin = 0.5 * rep.removed_mass - rep.tolerance;
  rep.check_a = full.admissible && after.worst_margin >= rep.required_margin;
  if (!full.violation_times.empty()) rep.violation_time = full.violation_times.front();
  else if (!rep.check_a) rep.violation_time = after.worst_time;

  BurnReport bo = burned_region(original, h_grid, P), bp = burned_region(pruned, h_grid, P);
  rep.area_original = bo.area;
  rep.area_pruned = bp.area;
  rep.area_band = std::max(bo.area_error_band, bp.area_error_band);
  rep.cost_original = bo.cost;
  rep.cost_pruned = bp.cost;
  if (bo.bounded && bp.bounded) {
    rep.check_b = std::abs(bp.area - bo.area) <= rep.area_band;
    rep.delta_cost = bp.cost - bo.cost;
  } else {
    rep.check_b = bo.bounded == bp.bounded;
    rep.delta_cost = -original.c0 * rep.removed_mass;
  }
  rep.check_c = original.c0 <= 0.0 || rep.delta_cost <= -original.c0 * rep.removed_mass + rep.area_band;

  // shield disc with perimeter half the removed mass, ahead of the pruned front
  if (rep.removed_mass > 0.0) {
    double r0 = rep.removed_mass / (4.0 * M_PI);
    rep.shield_radius = r0;
    for (const Segment* side : {&box.side_A, &box.side_B}) {
      Point dir = unit(side->b - side->a);
      for (int k = 3; k <= 200 && !rep.shield_placed; ++k) {
        Point c = side->b + (k * r0) * dir;
        if (!pruned.barrier.empty() && dist_to_barrier(pruned.barrier, c, 4.0 * r0) < 2.0 * r0) continue;
        double T = ps.min_time(c);
        if (!std::isfinite(T) || T - r0 <= t_box) continue;
        rep.shield_placed = true;
        rep.shield_center = c;
        rep.shield_touch_time = T - r0;
      }
      if (rep.shield_placed) break;
    }
    if (rep.shield_placed) {
      auto ring = shield_segments(rep.shield_center, r0, 64);
      double perimeter = 0.0;
      for (const auto& s : ring) perimeter += s.length();
      rep.shield_admissible = full.admissible && after.worst_margin - perimeter >= -rep.tolerance &&
                              rep.shield_touch_time >= t_box;
      std::vector<Segment> segs = pruned.barrier.segments();
      segs.insert(segs.end(), ring.begin(), ring.end());
      Scene shielded = make_scene(pruned.initial, segs, pruned.sigma, pruned.c0);
      Box w;
      w.add(rep.shield_center);
      w = w.expanded(4.0 * r0);
      double hs = r0 / 64.0;
      rep.shield_reduction = local_burned_area(pruned, w, hs) - local_burned_area(shielded, w, hs);
      rep.shield_expected = M_PI * r0 * r0;
      rep.check_shield = rep.shield_admissible && rep.shield_reduction >= 0.9 * rep.shield_expected;
    }
  } else {
    rep.check_shield = true;
  }

  // non-escape and the time shift bound on a coarse frame lattice outside the box
  const Anchor& a = box.anchor;
  std::vector<Point> probes;
  for (int i = 0; i <= 12; ++i)
    for (int j = 0; j <= 12; ++j) {
      Point p = a.to_scene({-1.5 + 3.0 * i / 12.0, -0.25 + 1.5 * j / 12.0});
      if (!point_in_polygon(p, box.region)) probes.push_back(p);
    }
  std::vector<double> to(probes.size()), tp(probes.size());
  parallel_for(probes.size(), [&](std::size_t k) {
    to[k] = orig.min_time(probes[k]);
    tp[k] = ps.min_time(probes[k]);
  });
  rep.check_non_escape = true;
  rep.check_tdga = true;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    if (!std::isfinite(to[k])) continue;
    double tol = 1e-9 * (1.0 + to[k]);
    if (to[k] < t_box) {
      ++rep.non_escape_samples;
      rep.non_escape_worst = std::max(rep.non_escape_worst, std::abs(tp[k] - to[k]));
      if (std::abs(tp[k] - to[k]) > tol) rep.check_non_escape = false;
    } else {
      double ex = to[k] - tp[k] - rep.removed_mass / (2.0 * original.sigma);
      rep.tdga_worst = std::max(rep.tdga_worst, ex);
      if (ex > tol) rep.check_tdga = false;
    }
  }

  bool cost_ok = original.c0 > 0.0 ? rep.check_c : rep.check_shield;
  rep.passed = rep.check_a && rep.check_b && cost_ok && rep.check_non_escape && rep.check_tdga;
  if (!rep.check_a)
    rep.message = "pruned barrier lacks the required slack";
  else if (!rep.check_b)
    rep.message = "burned area changed beyond the grid band";
  else if (!cost_ok)
    rep.message = original.c0 > 0.0 ? "cost did not drop" : "shield did not reduce the burned area";
  else if (!rep.check_non_escape)
    rep.message = "arrival times changed outside the box before t0 + h";
  else if (!rep.check_tdga)
    rep.message = "arrival delay exceeds m1 / (2 sigma)";
  else
    rep.message = "ok";
  return rep;
}

}  // namespace fireline
