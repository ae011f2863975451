#pragma once

#include <string>
#include <vector>

#include "fireline/geometry.hpp"
#include "fireline/params.hpp"
#include "fireline/sweep.hpp"

namespace fireline {

// Orthonormal frame with P at t = -kappa and Q at t = +kappa.
struct DetourFrame {
  Point mid;
  Point u;  // along PQ
  Point n;  // left normal
  double kappa = 0.0;
  Point to_frame(Point p) const { return {dot(p - mid, u), dot(p - mid, n)}; }
  Point to_scene(Point q) const { return mid + q.x * u + q.y * n; }
};
DetourFrame make_frame(Point P, Point Q);

struct DetourPath {
  std::vector<Point> graph;     // (t, x) in the P->Q frame, t increasing
  std::vector<Point> polyline;  // same path in scene coordinates
  double slope_bound = 0.0;     // max |dx/dt| over legs
  double length = 0.0;
};

enum class DetourStatus { ok, hypothesis_failed, density_failed, overlap_empty, crossing_detected };
const char* to_string(DetourStatus s);

struct DetourResult {
  DetourStatus status = DetourStatus::ok;
  std::string message;
  DetourPath path;
  double kappa = 0.0;
  double h = 0.0;        // m1 of the barrier used
  double bound = 0.0;    // 2 kappa + 9 eps h (or |PQ| + eps0 m1 for the triangle variant)
  double y = 0.0;        // meeting value on t = 0
  double overlap = 0.0;  // m1(A- and A+ within [0, 3h])
  double wide_minus = 0.0;  // m1(A3 within [0, 3h]) for both halves, wide mode
  double wide_plus = 0.0;
  bool gsm = false;
  bool gp1 = false;
  bool gp11 = false;
  bool rotated = false;
  bool within_bound = false;
  bool crossing_free = false;
  bool ok() const { return status == DetourStatus::ok; }
};

// Strip density: m1(strip [-kappa, -kappa + r]) < eps r / 3 and the mirror condition.
bool strip_density_ok(const std::vector<Segment>& frame_segments, double kappa, double eps);
// Cone form of the same condition.
bool cone_density_ok(const std::vector<Segment>& frame_segments, double kappa, double eps);

DetourResult sparse_detour(Point P, Point Q, const Barrier& barrier, double eps, const Params& params = {});

// Builds the detour in a frame without checking the sparsity hypotheses.
DetourResult construct_detour(const DetourFrame& frame, const std::vector<Segment>& frame_segments, double eps,
                              const Params& params = {});

DetourResult flowbox_crossing(Point P, Point Q, Point Z, const Barrier& barrier, double eps, double eps0,
                              const Params& params = {});

// m1(barrier within triangle within B(c, r)) <= eps r for sampled r.
bool ball_density_ok(const std::vector<Segment>& segments, Point c, double eps, double r_max);

}  // namespace fireline
