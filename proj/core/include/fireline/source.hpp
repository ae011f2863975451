#pragma once

#include <vector>

#include "fireline/geometry.hpp"

namespace fireline {

// The initial burned set R0 as a union of discs, each either an inscribed
// regular n-gon or (n == 0) the exact circle.
class SourceModel {
 public:
  SourceModel() = default;
  SourceModel(std::vector<Disc> discs, int n);

  int n() const { return n_; }
  const std::vector<Disc>& discs() const { return discs_; }
  bool inside(Point x) const;
  bool inside_disc(std::size_t disc, Point x) const;
  // Euclidean distance to R0 ignoring barriers.
  double distance(Point x) const;
  double distance_to(std::size_t disc, Point x, Point* foot) const;
  // Nearest visible boundary point over all discs; +inf if every per-disc foot is hidden.
  double visible_distance(Point x, const Barrier& barrier, Point* foot) const;
  // Hausdorff gap between the modelled source and the true discs.
  double error_bound() const;
  // Boundary polygons (n-gons, or 720-gons for exact circles) for drawing and flood seeds.
  std::vector<Polyline> outlines() const;

 private:
  std::vector<Disc> discs_;
  int n_ = 0;
};

}  // namespace fireline
