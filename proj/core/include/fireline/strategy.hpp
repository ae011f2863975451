#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fireline/geometry.hpp"

namespace fireline {

class StrategyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpiralSpec {
  double r0 = 0.1;
  double sigma = 2.5;
  int points_per_branch = 2000;
  double arc_prefix = 0.0;  // angular width of an optional arc of radius r0 centred on angle 0
  bool closed = true;       // branches run to angle pi
  double closure_radius() const;
  double lambda() const;
};

// Two mirror branches r = r0 exp((theta - a/2) / lambda), theta in [a/2, pi], about the origin.
std::vector<Segment> spiral_segments(const SpiralSpec& spec);
Barrier spiral_barrier(const SpiralSpec& spec);

// count non-touching segments of length total/count inside box, deterministic in seed.
std::vector<Segment> dust_segments(Box region, int count, double total_length, std::uint64_t seed);
Barrier dust_barrier(Box region, int count, double total_length, std::uint64_t seed);

std::vector<Segment> shield_segments(Point center, double r0, int n = 64);
Barrier shield_disc(Point center, double r0, int n = 64);

}  // namespace fireline
