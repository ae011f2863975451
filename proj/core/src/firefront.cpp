#include "fireline/firefront.hpp"

#include <algorithm>
#include <map>

#include "fireline/parallel.hpp"

namespace fireline {

double TouchProfile::phi_at(double t) const {
  if (sample_times.empty() || t < sample_times.front()) return 0.0;
  auto it = std::upper_bound(sample_times.begin(), sample_times.end(), t);
  std::size_t k = static_cast<std::size_t>(it - sample_times.begin()) - 1;
  return phi[k] + slope[k] * (t - sample_times[k]);
}

TouchProfile phi_profile(const TimeSolver& solver) {
  return phi_profile(solver, solver.params().phi_per_unit, solver.params().phi_min_per_segment);
}

TouchProfile phi_profile(const TimeSolver& solver, double per_unit, int min_per_segment) {
  const Barrier& B = solver.scene().barrier;
  TouchProfile prof;
  prof.total_length = B.total_length();
  prof.component_intervals.resize(B.components().size());
  for (std::size_t c = 0; c < B.components().size(); ++c) prof.component_intervals[c].length = B.components()[c].length;
  const auto& pieces = B.pieces();
  if (pieces.empty()) return prof;

  std::vector<std::vector<double>> T(pieces.size()), L(pieces.size());
  std::vector<int> counts(pieces.size());
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    double L = pieces[k].length();
    counts[k] = std::max(min_per_segment, static_cast<int>(std::ceil(per_unit * L)));
    prof.resolution = std::max(prof.resolution, L / counts[k]);
  }
  std::vector<std::pair<std::size_t, int>> jobs;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    T[k].resize(counts[k] + 1);
    L[k].resize(counts[k] + 1);
    for (int m = 0; m <= counts[k]; ++m) jobs.push_back({k, m});
  }
  parallel_for(jobs.size(), [&](std::size_t q) {
    auto [k, m] = jobs[q];
    const Segment& s = pieces[k];
    Point x = m == 0 ? s.a : (m == counts[k] ? s.b : s.at(static_cast<double>(m) / counts[k]));
    auto [first, last] = solver.side_times(x);
    T[k][m] = first;
    L[k][m] = last;
  });

  // phi is piecewise linear in t: each sample gap ramps between its two end times
  std::map<double, std::pair<double, double>> ev;  // time -> (jump, slope change)
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    double len = pieces[k].length() / counts[k];
    auto& iv = prof.component_intervals[B.piece_component()[k]];
    for (int m = 0; m <= counts[k]; ++m)
      if (T[k][m] < kInfinity) {
        // b: the component is surrounded once its later side burns (enclosed sides ignored)
        double late = L[k][m] < kInfinity ? L[k][m] : T[k][m];
        iv.a = std::min(iv.a, T[k][m]);
        iv.b = (iv.b == kInfinity) ? late : std::max(iv.b, late);
      }
    for (int m = 0; m < counts[k]; ++m) {
      double lo = std::min(T[k][m], T[k][m + 1]), hi = std::max(T[k][m], T[k][m + 1]);
      if (hi == kInfinity) continue;
      if (hi - lo <= 1e-15 * std::max(1.0, hi)) {
        ev[lo].first += len;
      } else {
        ev[lo].second += len / (hi - lo);
        ev[hi].second -= len / (hi - lo);
      }
    }
  }
  double phi = 0.0, sl = 0.0, last = 0.0;
  bool first = true;
  for (auto& [t, js] : ev) {
    if (!first) phi += sl * (t - last);
    first = false;
    phi += js.first;
    sl += js.second;
    if (std::abs(sl) < 1e-12) sl = 0.0;
    phi = std::min(phi, prof.total_length);
    prof.sample_times.push_back(t);
    prof.phi.push_back(phi);
    prof.slope.push_back(sl);
    last = t;
  }
  return prof;
}

std::vector<bool> check_touch_interval_bound(const TouchProfile& profile, double slack) {
  std::vector<bool> ok;
  for (const auto& iv : profile.component_intervals)
    ok.push_back(iv.a == kInfinity || iv.b - iv.a <= iv.length + slack);
  return ok;
}

AdmissibilityReport admissibility(const TouchProfile& p, double sigma, double tol, double sat_rel, double t_from) {
  AdmissibilityReport r;
  r.tolerance = tol;
  r.worst_margin = kInfinity;
  auto visit = [&](double t, double phi) {
    if (t < t_from) return;
    double m = sigma * t - phi;
    if (m < r.worst_margin) {
      r.worst_margin = m;
      r.worst_time = t;
    }
    if (m < -tol) {
      if (r.violation_times.size() < 1000) r.violation_times.push_back(t);
    } else if (m <= std::max(tol, sat_rel * sigma * t) && phi > 0.0) {
      if (r.saturation_times.size() < 1000) r.saturation_times.push_back(t);
    }
  };
  visit(t_from, p.phi_at(t_from));
  for (std::size_t k = 0; k < p.sample_times.size(); ++k) visit(p.sample_times[k], p.phi[k]);
  if (r.worst_margin == kInfinity) r.worst_margin = 0.0;
  r.admissible = r.worst_margin >= -tol;
  return r;
}

double free_expansion_length(const TouchProfile& profile, double tau, double tau_prime) {
  std::vector<std::pair<double, double>> iv;
  for (const auto& c : profile.component_intervals) {
    if (c.a == kInfinity) continue;
    double lo = std::max(c.a, tau), hi = std::min(c.b, tau_prime);
    if (hi > lo) iv.push_back({lo, hi});
  }
  std::sort(iv.begin(), iv.end());
  double covered = 0.0, lo = 0.0, hi = -1.0;
  for (auto [a, b] : iv) {
    if (a > hi) {
      if (hi > lo) covered += hi - lo;
      lo = a;
      hi = b;
    } else {
      hi = std::max(hi, b);
    }
  }
  if (hi > lo) covered += hi - lo;
  return std::max(0.0, tau_prime - tau - covered);
}

std::vector<double> distance_transform(const std::vector<std::uint8_t>& mask, int nx, int ny) {
  const double INF = 1e20;
  std::vector<double> f(static_cast<std::size_t>(nx) * ny);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = mask[k] ? 0.0 : INF;
  auto dt1 = [&](std::vector<double>& g, int n) {
    std::vector<double> d(n), z(n + 1);
    std::vector<int> v(n);
    int k = 0;
    v[0] = 0;
    z[0] = -INF;
    z[1] = INF;
    for (int q = 1; q < n; ++q) {
      auto inter = [&](int p) { return ((g[q] + double(q) * q) - (g[p] + double(p) * p)) / (2.0 * q - 2.0 * p); };
      double s = inter(v[k]);
      while (s <= z[k]) {
        --k;
        s = inter(v[k]);
      }
      ++k;
      v[k] = q;
      z[k] = s;
      z[k + 1] = INF;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
      while (z[k + 1] < q) ++k;
      d[q] = double(q - v[k]) * (q - v[k]) + g[v[k]];
    }
    g = d;
  };
  std::vector<double> col(ny), row(nx);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) col[j] = f[static_cast<std::size_t>(j) * nx + i];
    dt1(col, ny);
    for (int j = 0; j < ny; ++j) f[static_cast<std::size_t>(j) * nx + i] = col[j];
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) row[i] = f[static_cast<std::size_t>(j) * nx + i];
    dt1(row, nx);
    for (int i = 0; i < nx; ++i) f[static_cast<std::size_t>(j) * nx + i] = row[i];
  }
  return f;
}

ExpansionCheck unit_expansion_check(const GridField& g, double tau, double tau_prime, double r) {
  ExpansionCheck ec;
  ec.r = r;
  std::vector<std::uint8_t> mask(g.times.size());
  bool any = false;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    mask[k] = g.times[k] <= tau;
    any |= mask[k] != 0;
  }
  ec.worst_excess = -kInfinity;
  if (!any || r <= 0.0) {
    ec.worst_excess = 0.0;
    return ec;
  }
  auto d2 = distance_transform(mask, g.nx, g.ny);
  double rr = r / g.h;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (d2[k] > rr * rr) continue;
    ++ec.checked;
    double ex = g.times[k] - tau_prime;
    ec.worst_excess = std::max(ec.worst_excess, ex);
  }
  ec.passed = ec.worst_excess <= 2.0 * g.h;
  return ec;
}

ExpansionCheck unit_expansion_check(const TimeSolver& solver, double tau, double tau_prime,
                                    const TouchProfile& profile, double h) {
  if (!(tau >= 0.0 && tau < tau_prime)) throw std::invalid_argument("unit_expansion_check: need 0 <= tau < tau'");
  double r = free_expansion_length(profile, tau, tau_prime);
  Box b;
  for (const auto& d : solver.scene().initial) {
    b.add(d.center - Point{d.radius, d.radius});
    b.add(d.center + Point{d.radius, d.radius});
  }
  GridField g = sample_field(solver, b.expanded(tau + r + 3.0 * h), h);
  return unit_expansion_check(g, tau, tau_prime, r);
}

}  // namespace fireline
