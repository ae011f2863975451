#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "fireline/geometry.hpp"

namespace fireline {

// Uniform bucket grid over segment ids. Cell coverage is conservative.
class SegmentIndex {
 public:
  SegmentIndex() = default;
  explicit SegmentIndex(const std::vector<Segment>& segments, int target_per_cell = 3);

  // Calls f(id) for every segment whose cells meet the cells of pq; ids may repeat.
  // Stops early when f returns false.
  template <class F>
  void for_segment(Point p, Point q, F&& f) const;

  // Calls f(id) for candidates in the axis aligned box.
  template <class F>
  void for_box(Box b, F&& f) const;

  const std::vector<Segment>& segments() const { return segs_; }
  bool empty() const { return segs_.empty(); }

 private:
  template <class F>
  bool visit_cell(int i, int j, F& f) const;

  std::vector<Segment> segs_;
  Box box_;
  double cell_ = 1.0;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> items_;
};

template <class F>
bool SegmentIndex::visit_cell(int i, int j, F& f) const {
  std::size_t c = static_cast<std::size_t>(j) * nx_ + i;
  for (std::uint32_t k = start_[c]; k < start_[c + 1]; ++k)
    if (!f(items_[k])) return false;
  return true;
}

template <class F>
void SegmentIndex::for_box(Box b, F&& f) const {
  if (segs_.empty()) return;
  if (b.hi.x < box_.lo.x || b.hi.y < box_.lo.y || b.lo.x > box_.hi.x || b.lo.y > box_.hi.y) return;
  auto clampi = [](int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); };
  int i0 = clampi(static_cast<int>(std::floor((b.lo.x - box_.lo.x) / cell_)) - 1, 0, nx_ - 1);
  int i1 = clampi(static_cast<int>(std::floor((b.hi.x - box_.lo.x) / cell_)) + 1, 0, nx_ - 1);
  int j0 = clampi(static_cast<int>(std::floor((b.lo.y - box_.lo.y) / cell_)) - 1, 0, ny_ - 1);
  int j1 = clampi(static_cast<int>(std::floor((b.hi.y - box_.lo.y) / cell_)) + 1, 0, ny_ - 1);
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i)
      if (!visit_cell(i, j, f)) return;
}

template <class F>
void SegmentIndex::for_segment(Point p, Point q, F&& f) const {
  if (segs_.empty()) return;
  // clip pq to the (slightly enlarged) index box, Liang-Barsky
  double t0 = 0.0, t1 = 1.0;
  double dx = q.x - p.x, dy = q.y - p.y;
  const double pad = 0.5 * cell_;
  double lox = box_.lo.x - pad, hix = box_.hi.x + pad, loy = box_.lo.y - pad, hiy = box_.hi.y + pad;
  auto clip = [&](double pp, double qq) {
    if (pp == 0.0) return qq >= 0.0;
    double r = qq / pp;
    if (pp < 0.0) {
      if (r > t1) return false;
      if (r > t0) t0 = r;
    } else {
      if (r < t0) return false;
      if (r < t1) t1 = r;
    }
    return true;
  };
  if (!clip(-dx, p.x - lox) || !clip(dx, hix - p.x) || !clip(-dy, p.y - loy) || !clip(dy, hiy - p.y)) return;
  Point a{p.x + t0 * dx, p.y + t0 * dy};
  Point b{p.x + t1 * dx, p.y + t1 * dy};
  if (a.x > b.x) std::swap(a, b);
  const double fuzz = 1e-9 * cell_;
  auto clampi = [](int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); };
  int ia = clampi(static_cast<int>(std::floor((a.x - box_.lo.x - fuzz) / cell_)), 0, nx_ - 1);
  int ib = clampi(static_cast<int>(std::floor((b.x - box_.lo.x + fuzz) / cell_)), 0, nx_ - 1);
  double slope = (b.x - a.x) > 0.0 ? (b.y - a.y) / (b.x - a.x) : 0.0;
  for (int i = ia; i <= ib; ++i) {
    double ya, yb;
    if (b.x - a.x <= 0.0) {
      ya = std::min(a.y, b.y);
      yb = std::max(a.y, b.y);
    } else {
      double xl = std::max(a.x, box_.lo.x + i * cell_);
      double xr = std::min(b.x, box_.lo.x + (i + 1) * cell_);
      if (i == ia) xl = a.x;
      if (i == ib) xr = b.x;
      double y1 = a.y + slope * (xl - a.x);
      double y2 = a.y + slope * (xr - a.x);
      ya = std::min(y1, y2);
      yb = std::max(y1, y2);
    }
    int ja = clampi(static_cast<int>(std::floor((ya - box_.lo.y - fuzz) / cell_)), 0, ny_ - 1);
    int jb = clampi(static_cast<int>(std::floor((yb - box_.lo.y + fuzz) / cell_)), 0, ny_ - 1);
    for (int j = ja; j <= jb; ++j)
      if (!visit_cell(i, j, f)) return;
  }
}

}  // namespace fireline
