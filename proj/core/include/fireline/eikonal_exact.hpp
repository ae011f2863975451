#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "fireline/geometry.hpp"
#include "fireline/params.hpp"
#include "fireline/source.hpp"

namespace fireline {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Trajectory {
  std::vector<Point> vertices;
  std::vector<double> times;
  double total_time = 0.0;
};

// A relay: a barrier endpoint together with one of its free angular sectors
// wider than pi. Paths may only bend there.
struct RelayNode {
  Point at;
  double sector_lo = 0.0;  // sector is [lo, lo + width) in angle, radians
  double sector_width = 2.0 * M_PI;
  double time = kInfinity;
  double lower = 0.0;                 // d(at, R0)
  bool from_source = false;           // source foot is a co-optimal predecessor
  Point foot;                         // source foot when from_source
  std::vector<int> preds;             // co-optimal relay predecessors
  bool contains(Point dir) const;     // direction dir (nonzero) in the open sector
};

class UnreachableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TimeSolver {
 public:
  TimeSolver() = default;
  TimeSolver(const Scene& scene, const Params& params = {});

  const Scene& scene() const { return scene_; }
  const Params& params() const { return params_; }
  const SourceModel& source() const { return source_; }
  const std::vector<RelayNode>& nodes() const { return nodes_; }

  double min_time(Point x) const;
  // Earliest and latest arrival over the two sides of a barrier point; equal off the barrier.
  std::pair<double, double> side_times(Point x) const;
  Trajectory optimal_trajectory(Point x) const;
  double rho(Point x) const;
  // d(x, R0) for the modelled source; lower bound of min_time.
  double lower_bound(Point x) const { return source_.distance(x); }
  // Polygonal source error attached to every time value.
  double error_bound() const { return source_.error_bound(); }
  double offset() const { return offset_; }

  struct Arrival {
    double time = kInfinity;
    int node = -1;  // -1: straight from the source
    Point foot;
    double leg = 0.0;  // final straight leg including collinear extension
  };
  // All co-optimal final arrivals at x (empty if unreachable).
  std::vector<Arrival> arrivals(Point x) const;

 private:
  std::vector<Arrival> arrivals_exact(Point x, double cap = kInfinity) const;
  double extended_leg(int node, Point x, int depth) const;
  bool on_barrier_interior(Point x, Point* normal) const;

  Scene scene_;
  Params params_;
  SourceModel source_;
  std::vector<RelayNode> nodes_;
  double offset_ = 0.0;
};

TimeSolver build(const Scene& scene, int source_n, const Params& params = {});

// Value at source resolution n and 2n plus the Richardson combination; the
// exact-circle limit is reported alongside.
struct Extrapolated {
  double t_n = 0.0;
  double t_2n = 0.0;
  double richardson = 0.0;
  double limit = 0.0;
  double bound_n = 0.0;
  double bound_2n = 0.0;
};
std::vector<Extrapolated> extrapolate_times(const Scene& scene, int n, const std::vector<Point>& probes,
                                            const Params& params = {});

struct RhoIntegral {
  double lhs = 0.0;     // integral of rho over R1
  double rhs = 0.0;     // integral of d(x,R0) minus ((T^2 + T)/2) m1
  double lhs_se = 0.0;  // standard errors from shifted replicates
  double rhs_se = 0.0;
  double diff_se = 0.0;
  double t_hat = 0.0;   // max sampled T over R1
  double length = 0.0;
  bool t_hat_bound = false;  // t_hat <= 1 + m1
  long samples = 0;
};
// Requires a connected barrier complement.
RhoIntegral rho_integral_report(const TimeSolver& solver, long samples, std::uint64_t seed = 1, int shifts = 10);

}  // namespace fireline
