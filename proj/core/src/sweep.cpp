#include "fireline/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fireline {

namespace {

struct Seg {
  double t0, x0, t1, x1, g;
  bool wall;
  double at(double t) const { return x0 + g * (t - t0); }
};

Seg normalize(const Segment& s) {
  Seg q;
  Point a = s.a, b = s.b;
  if (b.x < a.x) std::swap(a, b);
  q.t0 = a.x;
  q.x0 = a.y;
  q.t1 = b.x;
  q.x1 = b.y;
  q.wall = a.x == b.x;
  q.g = q.wall ? 0.0 : (b.y - a.y) / (b.x - a.x);
  if (q.wall && q.x0 > q.x1) std::swap(q.x0, q.x1);
  return q;
}

}  // namespace

const char* to_string(SweepMode m) {
  switch (m) {
    case SweepMode::symmetric: return "symmetric";
    case SweepMode::drift: return "drift";
    case SweepMode::wide: return "wide";
    case SweepMode::construction: return "construction";
  }
  return "?";
}

std::pair<double, double> mode_slopes(SweepMode m, double eps) {
  switch (m) {
    case SweepMode::symmetric: return {-eps, eps};
    case SweepMode::drift: return {eps, 3.0 * eps};
    case SweepMode::wide: return {-3.0 * eps, 3.0 * eps};
    case SweepMode::construction: return {0.0, 3.0 * eps};
  }
  return {-eps, eps};
}

double SweepState::measure() const {
  double m = 0.0;
  for (const auto& iv : intervals) m += std::max(0.0, iv.width());
  return m;
}

SweepState SweepResult::state_at(double t) const {
  if (states.empty()) return {};
  auto it = std::upper_bound(states.begin(), states.end(), t, [](double v, const SweepState& s) { return v < s.t; });
  const SweepState& s = (it == states.begin()) ? states.front() : *(it - 1);
  SweepState out = s;
  double dt = std::max(0.0, t - s.t);
  out.t = t;
  for (auto& iv : out.intervals) {
    iv.lo.x += iv.lo.v * dt;
    iv.hi.x += iv.hi.v * dt;
  }
  return out;
}

std::vector<double> SweepResult::event_times() const {
  std::vector<double> t;
  for (const auto& s : states) t.push_back(s.t);
  return t;
}

double SweepResult::measure_within(double lo, double hi) const {
  SweepState s = state_at(t_end);
  double m = 0.0;
  for (const auto& iv : s.intervals) m += std::max(0.0, std::min(hi, iv.hi.x) - std::max(lo, iv.lo.x));
  return m;
}

std::vector<Segment> rotate_segments(const std::vector<Segment>& segments, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  auto rot = [&](Point p) { return Point{c * p.x - s * p.y, s * p.x + c * p.y}; };
  std::vector<Segment> out;
  for (const auto& sg : segments) out.push_back({rot(sg.a), rot(sg.b)});
  return out;
}

bool has_t_parallel(const std::vector<Segment>& segments) {
  for (const auto& s : segments)
    if (s.a.y == s.b.y) return true;
  return false;
}

double strip_mass(const std::vector<Segment>& segments, double t0, double t1) {
  double m = 0.0;
  for (const auto& s : segments) {
    Seg q = normalize(s);
    if (q.wall) {
      if (q.t0 >= t0 && q.t0 <= t1) m += q.x1 - q.x0;
      continue;
    }
    double lo = std::max(t0, q.t0), hi = std::min(t1, q.t1);
    if (hi > lo) m += (hi - lo) / (q.t1 - q.t0) * s.length();
  }
  return m;
}

std::vector<double> strip_breaks(const std::vector<Segment>& segments) {
  std::vector<double> t;
  for (const auto& s : segments) {
    t.push_back(s.a.x);
    t.push_back(s.b.x);
  }
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

SweepResult attainable_sweep(const std::vector<Segment>& segments, double eps, double T, SweepMode mode, double x0) {
  if (!(eps > 0.0 && eps < 1.0)) throw DetourError("attainable_sweep: eps must lie in (0, 1)");
  if (!(T > 0.0)) throw DetourError("attainable_sweep: T must be positive");
  if (has_t_parallel(segments))
    throw DetourError("attainable_sweep: segment parallel to the t axis (pre-rotate by a tiny angle)");
  SweepResult res;
  res.mode = mode;
  res.eps = eps;
  res.t_end = T;
  res.segments = segments;
  auto [smin, smax] = mode_slopes(mode, eps);
  res.smin = smin;
  res.smax = smax;

  std::vector<Seg> S;
  double scale = std::max({1.0, T, std::abs(x0)});
  for (const auto& s : segments) {
    Seg q = normalize(s);
    // keep the part inside the time window
    if (q.t1 < 0.0 || q.t0 > T) continue;
    if (!q.wall && (q.t0 < 0.0 || q.t1 > T)) {
      double a = std::max(q.t0, 0.0), b = std::min(q.t1, T);
      if (b <= a) continue;
      q = {a, q.at(a), b, q.at(b), q.g, false};
    }
    S.push_back(q);
    scale = std::max({scale, std::abs(s.a.x), std::abs(s.a.y), std::abs(s.b.x), std::abs(s.b.y)});
  }
  const double tol = 1e-12 * scale;
  const double vtol = 1e-14 * scale;
  std::vector<char> started(S.size(), 0);

  SweepState st;
  st.t = 0.0;
  st.intervals.push_back({{x0, smin, -1}, {x0, smax, -1}});

  auto active = [&](int i, double t) { return started[i] && !S[i].wall && S[i].t0 <= t + tol && S[i].t1 > t + tol; };

  auto fix = [&]() {
    double t = st.t;
    for (int guard = 0; guard < 10000; ++guard) {
      bool changed = false;
      auto& I = st.intervals;
      // segment ends
      for (auto& iv : I) {
        if (!iv.hi.free() && S[iv.hi.seg].t1 <= t + tol) {
          iv.hi.seg = -1;
          iv.hi.v = smax;
          changed = true;
        }
        if (!iv.lo.free() && S[iv.lo.seg].t1 <= t + tol) {
          iv.lo.seg = -1;
          iv.lo.v = smin;
          changed = true;
        }
      }
      // segment starts
      for (std::size_t i = 0; i < S.size(); ++i) {
        if (started[i] || S[i].t0 > t + tol) continue;
        started[i] = 1;
        changed = true;
        const Seg& q = S[i];
        std::vector<SweepInterval> out;
        for (auto& iv : I) {
          if (q.wall) {
            if (iv.hi.x <= q.x0 || iv.lo.x >= q.x1) {
              out.push_back(iv);
              continue;
            }
            if (q.x0 > iv.lo.x + tol) out.push_back({iv.lo, {q.x0, smax, -1}});
            if (q.x1 < iv.hi.x - tol) out.push_back({{q.x1, smin, -1}, iv.hi});
            continue;
          }
          if (q.x0 > iv.lo.x + tol && q.x0 < iv.hi.x - tol) {
            SweepEndpoint up{q.x0, q.g < smax ? q.g : smax, q.g < smax ? static_cast<int>(i) : -1};
            SweepEndpoint dn{q.x0, q.g > smin ? q.g : smin, q.g > smin ? static_cast<int>(i) : -1};
            out.push_back({iv.lo, up});
            out.push_back({dn, iv.hi});
          } else {
            out.push_back(iv);
          }
        }
        I.swap(out);
      }
      // hits on segments passing through an endpoint
      for (auto& iv : I) {
        int best = -1;
        double bg = iv.hi.v - vtol;
        for (std::size_t i = 0; i < S.size(); ++i) {
          if (static_cast<int>(i) == iv.hi.seg || !active(static_cast<int>(i), t)) continue;
          if (std::abs(S[i].at(t) - iv.hi.x) > tol) continue;
          if (S[i].g < bg) {
            bg = S[i].g;
            best = static_cast<int>(i);
          }
        }
        if (best >= 0) {
          iv.hi = {S[best].at(t), S[best].g, best};
          changed = true;
        }
        best = -1;
        bg = iv.lo.v + vtol;
        for (std::size_t i = 0; i < S.size(); ++i) {
          if (static_cast<int>(i) == iv.lo.seg || !active(static_cast<int>(i), t)) continue;
          if (std::abs(S[i].at(t) - iv.lo.x) > tol) continue;
          if (S[i].g > bg) {
            bg = S[i].g;
            best = static_cast<int>(i);
          }
        }
        if (best >= 0) {
          iv.lo = {S[best].at(t), S[best].g, best};
          changed = true;
        }
      }
      // deaths
      std::vector<SweepInterval> keep;
      for (auto& iv : I) {
        bool dead = iv.width() < -tol || (iv.width() <= tol && iv.hi.v <= iv.lo.v + vtol && t > 0.0);
        if (dead)
          changed = true;
        else
          keep.push_back(iv);
      }
      I.swap(keep);
      // merges
      for (std::size_t k = 0; k + 1 < I.size(); ++k) {
        double gap = I[k + 1].lo.x - I[k].hi.x;
        bool same = I[k].hi.seg >= 0 && I[k].hi.seg == I[k + 1].lo.seg;
        bool closing = I[k].hi.v > I[k + 1].lo.v + vtol;
        if (gap < -tol || (gap <= tol && closing && !same)) {
          I[k].hi = I[k + 1].hi;
          I.erase(I.begin() + static_cast<long>(k) + 1);
          changed = true;
          break;
        }
      }
      if (!changed) return;
    }
    throw DetourError("attainable_sweep: event processing did not settle");
  };

  fix();
  res.states.push_back(st);
  for (long iter = 0; st.t < T; ++iter) {
    if (iter > 2000000) throw DetourError("attainable_sweep: too many events");
    double t = st.t;
    double tn = T;
    for (std::size_t i = 0; i < S.size(); ++i)
      if (!started[i] && S[i].t0 > t) tn = std::min(tn, S[i].t0);
    const auto& I = st.intervals;
    for (std::size_t k = 0; k < I.size(); ++k) {
      const auto& iv = I[k];
      if (!iv.hi.free()) tn = std::min(tn, S[iv.hi.seg].t1);
      if (!iv.lo.free()) tn = std::min(tn, S[iv.lo.seg].t1);
      for (std::size_t i = 0; i < S.size(); ++i) {
        const Seg& q = S[i];
        if (q.wall) continue;
        double ta = std::max(t, q.t0);
        if (ta >= q.t1 - tol) continue;
        if (static_cast<int>(i) != iv.hi.seg && iv.hi.v > q.g) {
          double xh = iv.hi.x + iv.hi.v * (ta - t), gs = q.at(ta);
          if (gs > xh + tol) {
            double ts = ta + (gs - xh) / (iv.hi.v - q.g);
            if (ts < q.t1) tn = std::min(tn, ts);
          }
        }
        if (static_cast<int>(i) != iv.lo.seg && iv.lo.v < q.g) {
          double xl = iv.lo.x + iv.lo.v * (ta - t), gs = q.at(ta);
          if (gs < xl - tol) {
            double ts = ta + (xl - gs) / (q.g - iv.lo.v);
            if (ts < q.t1) tn = std::min(tn, ts);
          }
        }
      }
      if (iv.hi.v < iv.lo.v) tn = std::min(tn, t + std::max(0.0, iv.width()) / (iv.lo.v - iv.hi.v));
      if (k + 1 < I.size()) {
        double rate = iv.hi.v - I[k + 1].lo.v;
        if (rate > 0.0) tn = std::min(tn, t + std::max(0.0, I[k + 1].lo.x - iv.hi.x) / rate);
      }
    }
    tn = std::clamp(tn, t, T);
    double dt = tn - t;
    for (auto& iv : st.intervals) {
      iv.lo.x = iv.lo.free() ? iv.lo.x + iv.lo.v * dt : S[iv.lo.seg].at(tn);
      iv.hi.x = iv.hi.free() ? iv.hi.x + iv.hi.v * dt : S[iv.hi.seg].at(tn);
    }
    st.t = tn;
    if (T - tn <= tol) st.t = T;
    fix();
    res.states.push_back(st);
    if (st.t >= T) break;
  }
  return res;
}

SunriseReport sunrise_margin(const SweepResult& sweep, const std::function<double(double)>& psi,
                             const std::vector<double>& psi_breaks, double tol) {
  SunriseReport r;
  std::vector<double> times = sweep.event_times();
  for (double b : psi_breaks)
    if (b > 0.0 && b <= sweep.t_end) times.push_back(b);
  times.push_back(sweep.t_end);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  const double eps = sweep.eps;
  r.min_f = std::numeric_limits<double>::infinity();
  for (double t : times) {
    double p = psi(t);
    double f = sweep.measure_at(t) - std::sqrt(2.0) * (eps * t - p);
    r.times.push_back(t);
    r.f.push_back(f);
    r.psi.push_back(p);
    if (p > std::sqrt(2.0) * eps * t + tol) r.hypothesis = false;
  }
  r.positive = true;
  r.nondecreasing = true;
  for (std::size_t k = 0; k < r.f.size(); ++k) {
    if (r.times[k] > 0.0) {
      r.min_f = std::min(r.min_f, r.f[k]);
      if (r.f[k] < -tol) r.positive = false;
    }
    if (k > 0) {
      double drop = r.f[k - 1] - r.f[k];
      r.worst_drop = std::max(r.worst_drop, drop);
      if (drop > tol) r.nondecreasing = false;
    }
  }
  r.verdict_claimed = r.hypothesis;
  return r;
}

SunriseReport sunrise_margin(const SweepResult& sweep, double tol) {
  const double eps = sweep.eps;
  std::vector<Segment> segs = sweep.segments;
  if (sweep.mode == SweepMode::drift) {
    // the drift sweep is the symmetric sweep of the barrier sheared by -2 eps t
    for (auto& s : segs) {
      s.a.y -= 2.0 * eps * s.a.x;
      s.b.y -= 2.0 * eps * s.b.x;
    }
  }
  auto psi = [&](double t) { return strip_mass(segs, 0.0, t); };
  SunriseReport r = sunrise_margin(sweep, psi, strip_breaks(segs), tol);
  bool shifted = true;
  for (double t : r.times)
    if (t > 0.0 && strip_mass(sweep.segments, 0.0, t) > std::sqrt(2.0) * eps * t / (1.0 + 2.0 * eps) + tol)
      shifted = false;
  for (double b : strip_breaks(sweep.segments))
    if (b > 0.0 && b <= sweep.t_end &&
        strip_mass(sweep.segments, 0.0, b) > std::sqrt(2.0) * eps * b / (1.0 + 2.0 * eps) + tol)
      shifted = false;
  r.hypothesis_shifted = shifted;
  if (sweep.mode == SweepMode::drift) r.gap_instance = r.hypothesis != r.hypothesis_shifted;
  return r;
}

std::vector<Point> backtrack(const SweepResult& sweep, double y) {
  const auto& S = sweep.states;
  if (S.empty()) throw DetourError("backtrack: empty sweep");
  double cur_t = sweep.t_end, cur_x = y;
  std::vector<Point> pts{{cur_t, cur_x}};
  for (std::size_t kk = S.size(); kk-- > 0;) {
    const SweepState& st = S[kk];
    if (st.t >= cur_t) continue;
    double dt = cur_t - st.t;
    const SweepInterval* hit = nullptr;
    double best_gap = -std::numeric_limits<double>::infinity();
    for (const auto& iv : st.intervals) {
      double lo = iv.lo.x + iv.lo.v * dt, hi = iv.hi.x + iv.hi.v * dt;
      double gap = std::min(cur_x - lo, hi - cur_x);
      if (gap > best_gap) {
        best_gap = gap;
        hit = &iv;
      }
    }
    double scale = std::max(1.0, std::abs(cur_x)) * 1e-12;
    if (!hit || best_gap < -scale) throw DetourError("backtrack: point is not attainable");
    double lo = std::max(hit->lo.x, cur_x - sweep.smax * dt);
    double hi = std::min(hit->hi.x, cur_x - sweep.smin * dt);
    double x;
    if (hit->hi.x - hit->lo.x <= 0.0)
      x = hit->lo.x;
    else if (hi >= lo)
      x = 0.5 * (lo + hi);
    else
      throw DetourError("backtrack: empty predecessor window");
    cur_t = st.t;
    cur_x = x;
    pts.push_back({cur_t, cur_x});
  }
  std::reverse(pts.begin(), pts.end());
  return pts;
}

}  // namespace fireline
