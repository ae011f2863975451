#pragma once

#include <vector>

#include "fireline/eikonal_exact.hpp"
#include "fireline/eikonal_grid.hpp"

namespace fireline {

struct TouchInterval {
  double a = kInfinity;  // first touch
  double b = kInfinity;  // both sides burned (enclosed sides skipped)
  double length = 0.0;   // m1 of the component
};

struct TouchProfile {
  std::vector<double> sample_times;  // breakpoints of phi, ascending
  std::vector<double> phi;           // phi at sample_times (right limits)
  std::vector<double> slope;         // d phi / dt just after each sample time
  std::vector<TouchInterval> component_intervals;
  double total_length = 0.0;
  double resolution = 0.0;  // largest arclength gap between samples

  double phi_at(double t) const;
};

// T along the barrier, piecewise linear between arclength samples.
TouchProfile phi_profile(const TimeSolver& solver, double per_unit, int min_per_segment);
TouchProfile phi_profile(const TimeSolver& solver);

std::vector<bool> check_touch_interval_bound(const TouchProfile& profile, double slack);

struct AdmissibilityReport {
  bool admissible = true;
  double worst_margin = 0.0;  // min over t of sigma t - phi(t)
  double worst_time = 0.0;
  double tolerance = 0.0;
  std::vector<double> violation_times;
  std::vector<double> saturation_times;
};

// tol: absolute tolerance on the margin; sat_rel: saturation band relative to sigma t.
AdmissibilityReport admissibility(const TouchProfile& profile, double sigma, double tol, double sat_rel = 0.02,
                                  double t_from = 0.0);

// r = m1([tau, tau'] minus the union of touch intervals).
double free_expansion_length(const TouchProfile& profile, double tau, double tau_prime);

struct ExpansionCheck {
  bool passed = true;
  double r = 0.0;
  double worst_excess = 0.0;  // max over checked nodes of T - tau' (slack not included)
  long checked = 0;
};
// Ball inclusion B(R(tau), r) within R(tau') on an exact-time lattice of spacing h, slack 2h.
ExpansionCheck unit_expansion_check(const TimeSolver& solver, double tau, double tau_prime,
                                    const TouchProfile& profile, double h);
ExpansionCheck unit_expansion_check(const GridField& field, double tau, double tau_prime, double r);

// Squared Euclidean distance transform on a binary lattice (in lattice units squared).
std::vector<double> distance_transform(const std::vector<std::uint8_t>& mask, int nx, int ny);

}  // namespace fireline
