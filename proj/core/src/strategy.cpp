#include "fireline/strategy.hpp"

#include <cmath>
#include <random>

namespace fireline {

double SpiralSpec::lambda() const {
  if (!(sigma > 2.0)) throw StrategyError("spiral: sigma must exceed 2 for closure");
  return std::sqrt(sigma * sigma / 4.0 - 1.0);
}

double SpiralSpec::closure_radius() const { return r0 * std::exp((M_PI - arc_prefix / 2.0) / lambda()); }

std::vector<Segment> spiral_segments(const SpiralSpec& spec) {
  const double lam = spec.lambda();
  if (!(spec.r0 > 0.0)) throw StrategyError("spiral: r0 must be positive");
  if (spec.points_per_branch < 2) throw StrategyError("spiral: need at least two points per branch");
  if (spec.arc_prefix < 0.0 || spec.arc_prefix >= 2.0 * M_PI) throw StrategyError("spiral: arc prefix out of range");
  const double a = spec.arc_prefix / 2.0;
  const int n = spec.points_per_branch;
  std::vector<Point> upper;
  for (int k = 0; k < n; ++k) {
    double th = a + (M_PI - a) * k / (n - 1);
    double r = spec.r0 * std::exp((th - a) / lam);
    upper.push_back({r * std::cos(th), r * std::sin(th)});
  }
  if (spec.closed) upper.back() = {-spec.closure_radius(), 0.0};
  std::vector<Segment> out;
  for (int k = 1; k < n; ++k) {
    out.push_back({upper[k - 1], upper[k]});
    out.push_back({{upper[k - 1].x, -upper[k - 1].y}, {upper[k].x, -upper[k].y}});
  }
  if (a > 0.0) {
    int m = std::max(2, static_cast<int>(std::ceil(2.0 * a / (M_PI / 180.0))));
    Polyline arc = polygonalize_arc({0.0, 0.0}, spec.r0, -a, a, m);
    for (const auto& s : arc.segments()) out.push_back(s);
  }
  return out;
}

Barrier spiral_barrier(const SpiralSpec& spec) { return split_components(spiral_segments(spec)); }

std::vector<Segment> dust_segments(Box region, int count, double total_length, std::uint64_t seed) {
  if (count < 1) throw StrategyError("dust: count must be at least 1");
  if (!(total_length > 0.0)) throw StrategyError("dust: total length must be positive");
  const double len = total_length / count;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(region.lo.x, region.hi.x), uy(region.lo.y, region.hi.y),
      ua(0.0, M_PI);
  std::vector<Segment> out;
  long tries = 0;
  const long max_tries = 1000L * count;
  while (static_cast<int>(out.size()) < count) {
    if (++tries > max_tries) throw StrategyError("dust: placement failed after bounded retries");
    Point c{ux(rng), uy(rng)};
    double th = ua(rng);
    Point d{0.5 * len * std::cos(th), 0.5 * len * std::sin(th)};
    Segment s{c - d, c + d};
    if (!region.contains(s.a) || !region.contains(s.b)) continue;
    bool clash = false;
    for (const auto& t : out)
      if (segments_cross(s, t) != CrossKind::disjoint) {
        clash = true;
        break;
      }
    if (!clash) out.push_back(s);
  }
  return out;
}

Barrier dust_barrier(Box region, int count, double total_length, std::uint64_t seed) {
  return split_components(dust_segments(region, count, total_length, seed));
}

std::vector<Segment> shield_segments(Point center, double r0, int n) {
  if (!(r0 > 0.0)) throw StrategyError("shield: radius must be positive");
  return polygonalize_disc({center, r0}, n).segments();
}

Barrier shield_disc(Point center, double r0, int n) { return split_components(shield_segments(center, r0, n)); }

}  // namespace fireline
