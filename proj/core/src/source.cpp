#include "fireline/source.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace fireline {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Point vertex(const Disc& d, int n, long k) {
  k %= n;
  if (k < 0) k += n;
  double th = 2.0 * M_PI * static_cast<double>(k) / n;
  return {d.center.x + d.radius * std::cos(th), d.center.y + d.radius * std::sin(th)};
}

long edge_of(const Disc& d, int n, Point x) {
  double th = std::atan2(x.y - d.center.y, x.x - d.center.x);
  if (th < 0) th += 2.0 * M_PI;
  long k = static_cast<long>(std::floor(th * n / (2.0 * M_PI)));
  return std::clamp(k, 0L, static_cast<long>(n) - 1);
}

}  // namespace

SourceModel::SourceModel(std::vector<Disc> discs, int n) : discs_(std::move(discs)), n_(n) {
  if (n_ != 0 && n_ < 8) throw GeometryError("source_n must be 0 (exact) or at least 8");
}

bool SourceModel::inside_disc(std::size_t i, Point x) const {
  const Disc& d = discs_[i];
  double r = dist(x, d.center);
  if (n_ == 0) return r <= d.radius;
  if (r <= d.radius * std::cos(M_PI / n_)) return true;
  if (r > d.radius) return false;
  // near a sector boundary either neighbouring edge decides
  long k = edge_of(d, n_, x);
  for (long j = k - 1; j <= k + 1; ++j)
    if (orient(d.center, vertex(d, n_, j), x) >= 0 && orient(d.center, vertex(d, n_, j + 1), x) <= 0)
      return orient(vertex(d, n_, j), vertex(d, n_, j + 1), x) >= 0;
  return false;
}

bool SourceModel::inside(Point x) const {
  for (std::size_t i = 0; i < discs_.size(); ++i)
    if (inside_disc(i, x)) return true;
  return false;
}

double SourceModel::distance_to(std::size_t i, Point x, Point* foot) const {
  const Disc& d = discs_[i];
  if (inside_disc(i, x)) {
    if (foot) *foot = x;
    return 0.0;
  }
  Point v = x - d.center;
  double r = norm(v);
  if (n_ == 0) {
    if (foot) *foot = d.center + (d.radius / r) * v;
    return r - d.radius;
  }
  long k = edge_of(d, n_, x);
  double best = kInf;
  Point bf = x;
  for (long j = k - 1; j <= k + 1; ++j) {
    Point f = closest_on_segment(x, {vertex(d, n_, j), vertex(d, n_, j + 1)});
    double dd = dist(x, f);
    if (dd < best) {
      best = dd;
      bf = f;
    }
  }
  if (foot) *foot = bf;
  return best;
}

double SourceModel::distance(Point x) const {
  double best = kInf;
  for (std::size_t i = 0; i < discs_.size(); ++i) best = std::min(best, distance_to(i, x, nullptr));
  return best;
}

double SourceModel::visible_distance(Point x, const Barrier& barrier, Point* foot) const {
  std::vector<std::pair<double, Point>> c(discs_.size());
  for (std::size_t i = 0; i < discs_.size(); ++i) c[i].first = distance_to(i, x, &c[i].second);
  std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [d, f] : c) {
    if (d == 0.0 || visible(x, f, barrier)) {
      if (foot) *foot = f;
      return d;
    }
  }
  return kInf;
}

double SourceModel::error_bound() const {
  if (n_ == 0) return 0.0;
  double e = 0.0;
  for (const auto& d : discs_) e = std::max(e, polygon_hausdorff_bound(d.radius, n_));
  return e;
}

std::vector<Polyline> SourceModel::outlines() const {
  std::vector<Polyline> out;
  for (const auto& d : discs_) out.push_back(polygonalize_disc(d, n_ == 0 ? 720 : n_));
  return out;
}

}  // namespace fireline
