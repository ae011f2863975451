#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "fireline/eikonal_exact.hpp"

namespace fireline {

struct GridField {
  Point origin;
  double h = 0.0;
  int nx = 0;
  int ny = 0;
  int order = 2;
  double metrication = 1.0;  // worst lattice/Euclidean length ratio for the stencil
  std::vector<double> times;  // row-major, index j * nx + i

  double at(int i, int j) const { return times[static_cast<std::size_t>(j) * nx + i]; }
  double& at(int i, int j) { return times[static_cast<std::size_t>(j) * nx + i]; }
  Point node(int i, int j) const { return {origin.x + i * h, origin.y + j * h}; }
  Box domain() const { return {origin, node(nx - 1, ny - 1)}; }
  bool empty() const { return times.empty(); }
};

// Stencil moves for order 1, 2, 3 (8, 16, 32 neighbours).
std::vector<std::pair<int, int>> stencil(int order);
double metrication_factor(int order);

// Default lattice domain: scene box grown by margin * (diameter + m1).
Box default_domain(const Scene& scene, double margin);

struct GridOptions {
  std::optional<Box> domain;     // overrides the margin rule
  double t_stop = kInfinity;     // stop once the front passes this time
};

GridField solve_grid(const Scene& scene, double h, int order, const Params& params = {},
                     const GridOptions& opts = {});

// Value at an arbitrary point from nearby visible lattice nodes.
double grid_probe(const GridField& field, const Scene& scene, const SourceModel& source, Point x);

// Exact times sampled on a lattice (used as a reference field).
GridField sample_field(const TimeSolver& solver, Box box, double h);

std::vector<Polyline> level_set(const GridField& field, double t);

struct ConvergenceRow {
  double h = 0.0;
  std::vector<double> errors;  // per probe |T_grid - T_exact|
  double max_error = 0.0;
};
struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::vector<double> exact;
  std::vector<double> orders;  // log2 ratios between consecutive rows of max error
  double mean_order = 0.0;
};
ConvergenceReport convergence_report(const Scene& scene, const std::vector<double>& h_list,
                                     const std::vector<Point>& probes, const Params& params = {},
                                     const GridOptions& opts = {});

void write_csv(const GridField& field, std::ostream& os);

}  // namespace fireline
