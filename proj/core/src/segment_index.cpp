#include "fireline/segment_index.hpp"

#include <algorithm>
#include <cmath>

namespace fireline {

SegmentIndex::SegmentIndex(const std::vector<Segment>& segments, int target_per_cell) : segs_(segments) {
  if (segs_.empty()) return;
  for (const auto& s : segs_) {
    box_.add(s.a);
    box_.add(s.b);
  }
  double w = box_.hi.x - box_.lo.x, h = box_.hi.y - box_.lo.y;
  double span = std::max({w, h, 1e-9});
  if (w < 1e-12 * span) w = 1e-12 * span;
  if (h < 1e-12 * span) h = 1e-12 * span;
  double total = 0.0;
  for (const auto& s : segs_) total += s.length();
  double mean_len = total / static_cast<double>(segs_.size());
  double n = static_cast<double>(segs_.size());
  cell_ = std::sqrt(w * h * target_per_cell / n);
  cell_ = std::max(cell_, 0.5 * mean_len);
  cell_ = std::max(cell_, span / 1024.0);
  nx_ = std::max(1, static_cast<int>(std::ceil(w / cell_)));
  ny_ = std::max(1, static_cast<int>(std::ceil(h / cell_)));
  box_.hi = {box_.lo.x + nx_ * cell_, box_.lo.y + ny_ * cell_};

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;  // (cell, id)
  pairs.reserve(segs_.size() * 2);
  for (std::uint32_t id = 0; id < segs_.size(); ++id) {
    const Segment& s = segs_[id];
    Point a = s.a, b = s.b;
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
        double xl = (i == ia) ? a.x : std::max(a.x, box_.lo.x + i * cell_);
        double xr = (i == ib) ? b.x : std::min(b.x, box_.lo.x + (i + 1) * cell_);
        double y1 = a.y + slope * (xl - a.x);
        double y2 = a.y + slope * (xr - a.x);
        ya = std::min(y1, y2);
        yb = std::max(y1, y2);
      }
      int ja = clampi(static_cast<int>(std::floor((ya - box_.lo.y - fuzz) / cell_)), 0, ny_ - 1);
      int jb = clampi(static_cast<int>(std::floor((yb - box_.lo.y + fuzz) / cell_)), 0, ny_ - 1);
      for (int j = ja; j <= jb; ++j) pairs.emplace_back(static_cast<std::uint32_t>(j * nx_ + i), id);
    }
  }
  std::size_t ncell = static_cast<std::size_t>(nx_) * ny_;
  start_.assign(ncell + 1, 0);
  for (auto& pr : pairs) ++start_[pr.first + 1];
  for (std::size_t c = 0; c < ncell; ++c) start_[c + 1] += start_[c];
  items_.resize(pairs.size());
  std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
  for (auto& pr : pairs) items_[fill[pr.first]++] = pr.second;
}

}  // namespace fireline
