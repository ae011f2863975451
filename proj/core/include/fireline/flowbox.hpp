#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fireline/eikonal_exact.hpp"
#include "fireline/firefront.hpp"

namespace fireline {

// Cumulative mass as a right-continuous step function: value(t) = sum of weights at positions <= t.
struct MassProfile {
  std::vector<double> at;    // ascending jump positions
  std::vector<double> mass;  // cumulative mass at each position
  double value(double t) const;
  static MassProfile from_samples(std::vector<std::pair<double, double>> samples);
};

// Smallest t0 in [t_lo, t_hi] with phi(t0 + s) - phi(t0) <= 6 eps s for all s in (0, t_end - t0].
std::optional<double> choose_t0(const MassProfile& phi, double eps, double t_lo, double t_hi, double t_end);
std::optional<double> choose_t0(const TouchProfile& profile, double eps, double t_lo, double t_hi, double t_end);
// Largest h in [h_lo, h_hi] with psi(h) - psi(d) <= 12 eps (h - d) for all d in [0, h]; psi by distance.
std::optional<double> choose_h(const MassProfile& psi, double eps, double h_lo, double h_hi);

// Local frame: scene point = x + scale (s1 e1 + s2 e2), scene time = t + scale t'.
struct Anchor {
  Point x;
  double t = 0.0;
  Point e1;
  Point e2;  // direction of grad T
  double scale = 0.0;
  double worst_density = 0.0;  // max of m1(B(x, r) and barrier) / r^2 over the dyadic radii
  double local_mass = 0.0;     // m1 of the barrier in the square [-2, 2]^2 of the frame
  double flatness = 0.0;       // max |T' - s2| on the frame square [-1, 1]^2 sampled coarsely
  Point to_scene(Point s) const { return x + scale * (s.x * e1 + s.y * e2); }
  Point to_frame(Point p) const { return {dot(p - x, e1) / scale, dot(p - x, e2) / scale}; }
};

struct FlowboxOptions {
  double eps = 0.2;
  double r_max = 0.5;       // largest frame scale tried
  int candidates = 64;      // anchor candidates
  std::uint64_t seed = 1;
  int leg_grid = 40;        // samples per side of each leg rectangle
  double grid_step = 1.0 / 64.0;  // frame lattice spacing for level sets and the distance transform
  int density_levels = 4;   // dyadic radii below the scale in the anchor density test
  double density_max = 0.2; // threshold for m1(B(x, r)) / r^2
};

std::vector<Point> anchor_candidates(Box omega, int count, std::uint64_t seed);
// Density scan, gradient check and scale selection at one point.
std::optional<Anchor> test_anchor(const TimeSolver& solver, Point x, const FlowboxOptions& opts, std::string* why = nullptr);

struct AnchorSearch {
  std::optional<Anchor> anchor;
  int tried = 0;
  std::vector<std::string> rejections;
};
AnchorSearch find_anchor(const TimeSolver& solver, Box omega, const FlowboxOptions& opts);

struct FlowBox {
  Anchor anchor;
  double t0 = 0.0;  // frame units
  double h = 0.0;
  double eps = 0.0;
  double time0 = 0.0;   // scene time of the lower front
  double height = 0.0;  // scene length h * scale
  Segment side_A;       // A -> C
  Segment side_B;       // B -> D
  Polyline lower;       // gamma0 from A to B
  Polyline upper;       // gamma* from C to D
  std::vector<Point> region;
  double h_grid = 0.0;  // scene spacing of the lattice behind lower/upper
  double barrier_mass = 0.0;
  double clearance = 0.0;       // distance between the two sides
  double side_clearance = 0.0;  // distance from the sides to the barrier
  bool basm_ok = false;
  bool sparse_lower_ok = false;
  bool sparse_upper_ok = false;
  double worst_lower_ratio = 0.0;  // max mass(d < s) / (6 eps s)
  double worst_upper_ratio = 0.0;
  bool valid() const { return basm_ok && sparse_lower_ok && sparse_upper_ok; }
};

struct FlowboxBuild {
  bool ok = false;
  FlowBox box;
  std::string message;
  int anchors_tried = 0;
};

FlowboxBuild build_flowbox(const TimeSolver& solver, const Anchor& anchor, double t0, double h, const FlowboxOptions& opts);
// Anchor search, sunrise choices of t0 and h, then build; tries further anchors on failure.
FlowboxBuild construct_flowbox(const TimeSolver& solver, Box omega, const FlowboxOptions& opts);

// Local touched mass in frame units: phi(t') over the square [-2, 2]^2 after the anchor time.
MassProfile local_phi(const TimeSolver& solver, const Anchor& anchor);

Scene prune(const Scene& scene, const FlowBox& box);

struct CertifyReport {
  double removed_mass = 0.0;
  double tolerance = 0.0;
  // (a)
  bool pruned_admissible = false;
  double worst_margin_after = 0.0;
  double required_margin = 0.0;
  double violation_time = -1.0;
  bool check_a = false;
  // (b)
  double area_original = 0.0;
  double area_pruned = 0.0;
  double area_band = 0.0;
  bool check_b = false;
  // (c)
  double cost_original = 0.0;
  double cost_pruned = 0.0;
  double delta_cost = 0.0;
  bool check_c = false;
  // shield for c0 = 0
  bool shield_placed = false;
  Point shield_center;
  double shield_radius = 0.0;
  double shield_touch_time = 0.0;
  bool shield_admissible = false;
  double shield_reduction = 0.0;
  double shield_expected = 0.0;
  bool check_shield = false;
  // trajectory properties outside the box
  int non_escape_samples = 0;
  double non_escape_worst = 0.0;
  bool check_non_escape = false;
  double tdga_worst = 0.0;
  bool check_tdga = false;
  bool passed = false;
  std::string message;
};

CertifyReport certify_improvement(const Scene& original, const Scene& pruned, const FlowBox& box, double h_grid,
                                  const Params& params = {});
CertifyReport certify_improvement(const TimeSolver& original, const Scene& pruned, const FlowBox& box, double h_grid);

}  // namespace fireline
