#pragma once

#include "fireline/geometry.hpp"
#include "fireline/params.hpp"

namespace fireline {

struct BurnReport {
  bool bounded = false;
  double area = 0.0;             // +inf when unbounded
  double area_error_band = 0.0;  // h^2 times the number of filled nodes next to a blocked edge
  double cost = 0.0;             // area + c0 m1, +inf when unbounded
  double h = 0.0;
  int component_count = 0;       // complement components reached from R0
  long filled = 0;
};

// Flood fill of the complement of the barrier from the lattice nodes inside R0.
BurnReport burned_region(const Scene& scene, double h, const Params& params = {});
double total_cost(const Scene& scene, double h, const Params& params = {});

// Burned area inside a window, filling from the window border and from R0.
// Used to compare two scenes that differ only inside the window.
double local_burned_area(const Scene& scene, Box window, double h);

}  // namespace fireline
