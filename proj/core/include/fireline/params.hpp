#pragma once

#include <cstdint>

namespace fireline {

// Numeric knobs shared by the solvers and the scene file [params] section.
struct Params {
  int source_n = 720;           // vertices per source disc, 0 = exact circle
  double grid_h = 0.02;         // lattice spacing
  int grid_order = 2;           // 1: 8, 2: 16, 3: 32 neighbours
  double grid_margin = 1.5;     // domain margin factor on (diameter + barrier length)
  double max_grid_nodes = 4e7;  // guard for lattice allocation
  double phi_per_unit = 64.0;   // barrier samples per unit length
  int phi_min_per_segment = 16;
  double coopt_tol = 1e-9;      // relative tie tolerance for co-optimal predecessors
  double offset_rel = 1e-7;     // one-sided offset, relative to scene diameter
  double adm_tol = 1e-6;        // admissibility tolerance, times sigma * diameter
  long rho_samples = 200000;
  int rho_shifts = 10;
  double sweep_rotation = 1e-9;  // radians
  int points_per_branch = 2000;
  int flowbox_grid = 40;
  std::uint64_t seed = 1;
};

}  // namespace fireline
