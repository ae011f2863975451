#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "fireline/geometry.hpp"

namespace fireline {

// Sweep coordinates: Point.x is the time t, Point.y is the value x.
class DetourError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SweepMode { symmetric, drift, wide, construction };
const char* to_string(SweepMode m);
// Slope range [smin, smax] of admissible graphs.
std::pair<double, double> mode_slopes(SweepMode m, double eps);

struct SweepEndpoint {
  double x = 0.0;
  double v = 0.0;  // dx/dt until the next event
  int seg = -1;    // barrier segment being followed, -1 when free
  bool free() const { return seg < 0; }
};

struct SweepInterval {
  SweepEndpoint lo;
  SweepEndpoint hi;
  double width() const { return hi.x - lo.x; }
};

struct SweepState {
  double t = 0.0;
  std::vector<SweepInterval> intervals;  // ordered, disjoint
  double measure() const;
};

struct SweepResult {
  SweepMode mode = SweepMode::symmetric;
  double eps = 0.0;
  double smin = 0.0;
  double smax = 0.0;
  double t_end = 0.0;
  std::vector<Segment> segments;
  std::vector<SweepState> states;  // state right after each event, states[0] at t = 0

  // Intervals at time t (linear motion from the last event at or before t).
  SweepState state_at(double t) const;
  double measure_at(double t) const { return state_at(t).measure(); }
  std::vector<double> event_times() const;
  // m1(A(t_end) within [lo, hi]).
  double measure_within(double lo, double hi) const;
};

// Graphs start at (0, x0) and live on [0, T]. Segments parallel to the t axis are rejected.
SweepResult attainable_sweep(const std::vector<Segment>& segments, double eps, double T, SweepMode mode,
                             double x0 = 0.0);

// Rotates segments about the origin by angle (radians).
std::vector<Segment> rotate_segments(const std::vector<Segment>& segments, double angle);
bool has_t_parallel(const std::vector<Segment>& segments);

// m1 of the part of the segments with t in [t0, t1].
double strip_mass(const std::vector<Segment>& segments, double t0, double t1);
// Sorted t coordinates of all segment endpoints.
std::vector<double> strip_breaks(const std::vector<Segment>& segments);

struct SunriseReport {
  std::vector<double> times;
  std::vector<double> f;
  std::vector<double> psi;
  bool hypothesis = true;          // psi(t) <= sqrt2 eps t (drift: sheared barrier, as in the shift argument)
  bool hypothesis_shifted = true;  // psi(t) <= sqrt2 eps t / (1 + 2 eps) on the original barrier
  bool gap_instance = false;       // one hypothesis holds and the other does not
  bool verdict_claimed = false;
  bool positive = false;
  bool nondecreasing = false;
  double min_f = 0.0;
  double worst_drop = 0.0;
};
// f(t) = meas A(t) - sqrt2 (eps t - psi(t)) at all events and psi breakpoints.
SunriseReport sunrise_margin(const SweepResult& sweep, double tol = 1e-9);
SunriseReport sunrise_margin(const SweepResult& sweep, const std::function<double(double)>& psi,
                             const std::vector<double>& psi_breaks, double tol = 1e-9);

// Reconstructs a graph from (0, x0) to (t_end, y) inside the attainable tube.
// Vertices are (t, x). Throws DetourError if y is not attainable.
std::vector<Point> backtrack(const SweepResult& sweep, double y);

}  // namespace fireline
