// Acceptance suite: one line per criterion, exit status 1 if any fails.
// Usage: fireline_acceptance [criterion numbers...]
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "../common/sweep_oracle.hpp"
#include "fireline/burnedcost.hpp"
#include "fireline/cli/scene_io.hpp"
#include "fireline/detour.hpp"
#include "fireline/eikonal_grid.hpp"
#include "fireline/firefront.hpp"
#include "fireline/flowbox.hpp"
#include "fireline/strategy.hpp"
#include "fireline/sweep.hpp"

#ifndef FIRELINE_SCENE_DIR
#define FIRELINE_SCENE_DIR "scenes"
#endif

using namespace fireline;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

template <class... A>
std::string fmt(const char* f, A... a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

Params exact_params() {
  Params p;
  p.source_n = 0;
  return p;
}

double disc_distance(const std::vector<Disc>& discs, Point x) {
  double d = kInfinity;
  for (const auto& c : discs) d = std::min(d, std::max(0.0, dist(x, c.center) - c.radius));
  return d;
}

// Random scene with a connected complement: short chains in an annulus around the unit disc.
Scene random_scene(std::mt19937_64& rng, int max_components, double max_len, double sigma = 2.0) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (;;) {
    std::vector<Segment> segs;
    int comps = 1 + static_cast<int>(U(rng) * max_components);
    for (int c = 0; c < comps; ++c) {
      double r = 1.3 + 3.0 * U(rng), th = 2 * M_PI * U(rng);
      Point p{r * std::cos(th), r * std::sin(th)};
      int links = 1 + static_cast<int>(U(rng) * 3);
      for (int k = 0; k < links; ++k) {
        double a = 2 * M_PI * U(rng), L = (0.1 + 0.9 * U(rng)) * max_len;
        Point q = p + L * Point{std::cos(a), std::sin(a)};
        segs.push_back({p, q});
        p = q;
      }
    }
    Barrier b = split_components(segs);
    if (!complement_connected(b)) continue;
    bool clear = true;
    for (const auto& s : segs)
      if (point_segment_distance({0, 0}, s) < 1.05) clear = false;
    if (!clear) continue;
    return make_scene({{{0, 0}, 1.0}}, segs, sigma, 0.0);
  }
}

std::vector<Point> random_probes(std::mt19937_64& rng, Box b, int n) {
  std::uniform_real_distribution<double> ux(b.lo.x, b.hi.x), uy(b.lo.y, b.hi.y);
  std::vector<Point> out;
  for (int k = 0; k < n; ++k) out.push_back({ux(rng), uy(rng)});
  return out;
}

// ---------------------------------------------------------------------------

Outcome c1_no_barrier() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> uc(-3.0, 3.0), ur(0.3, 1.5);
  double worst_rich = 0.0, worst_limit = 0.0, worst_poly = -kInfinity;
  for (int cfg = 0; cfg < 5; ++cfg) {
    std::vector<Disc> discs;
    int nd = 1 + cfg % 3;
    for (int k = 0; k < nd; ++k) discs.push_back({{uc(rng), uc(rng)}, ur(rng)});
    Scene sc = make_scene(discs, {}, 2.0, 0.0);
    auto probes = random_probes(rng, {{-7, -7}, {7, 7}}, 100);
    auto ex = extrapolate_times(sc, 128, probes);
    for (std::size_t i = 0; i < probes.size(); ++i) {
      double d = disc_distance(discs, probes[i]);
      worst_rich = std::max(worst_rich, std::abs(ex[i].richardson - d));
      worst_limit = std::max(worst_limit, std::abs(ex[i].limit - d));
      worst_poly = std::max({worst_poly, std::abs(ex[i].t_n - d) - ex[i].bound_n, std::abs(ex[i].t_2n - d) - ex[i].bound_2n});
    }
  }
  // the pointwise polygon error is not a smooth function of n, so Richardson is informational only
  return {worst_limit <= 1e-6 && worst_poly <= 1e-12,
          fmt("max |T - d|: circle limit %.2e; polygon 128/256 within bound (max excess %.2e); Richardson %.2e",
              worst_limit, worst_poly, worst_rich)};
}

Outcome c2_corner() {
  Scene sc = make_scene({{{0, 0}, 1.0}}, {{{2, -1}, {2, 1}}}, 2.0, 0.0);
  const double oracle = (std::sqrt(5.0) - 1.0) + std::sqrt(2.0);
  TimeSolver s(sc, exact_params());
  double ex = std::abs(s.min_time({3, 0}) - oracle);
  GridOptions o;
  o.domain = Box{{-2, -3}, {5, 3}};
  auto rep = convergence_report(sc, {0.04, 0.02, 0.01}, {{3, 0}}, exact_params(), o);
  const double mf = metrication_factor(exact_params().grid_order);
  bool grid_ok = true;
  std::string errs;
  for (const auto& r : rep.rows) {
    if (r.max_error > 3.0 * r.h * mf) grid_ok = false;
    errs += fmt(" %.2e", r.max_error);
  }
  bool pass = ex <= 1e-6 && grid_ok && rep.mean_order >= 0.9;
  return {pass, fmt("exact err %.2e; grid err h=0.04,0.02,0.01:%s; order %.2f", ex, errs.c_str(), rep.mean_order)};
}

Outcome c3_loop_around() {
  std::mt19937_64 rng(303);
  double worst = -kInfinity;
  for (int k = 0; k < 50; ++k) {
    Scene sc = random_scene(rng, 5, 1.5);
    TimeSolver s(sc, exact_params());
    const double m1 = sc.barrier.total_length();
    for (Point x : random_probes(rng, sc.bounds().expanded(1.0), 200)) {
      double T = s.min_time(x);
      worst = std::max(worst, T - disc_distance(sc.initial, x) - m1);
    }
  }
  return {worst <= 1e-6, fmt("max T - d - m1 = %.3e over 50 scenes x 200 probes", worst)};
}

Outcome c4_touch_intervals() {
  std::mt19937_64 rng(404);
  double worst = -kInfinity;
  int comps = 0;
  for (int k = 0; k < 50; ++k) {
    Scene sc = random_scene(rng, 5, 1.5);
    TimeSolver s(sc, exact_params());
    auto p = phi_profile(s);
    for (const auto& iv : p.component_intervals) {
      if (!std::isfinite(iv.a)) continue;
      ++comps;
      worst = std::max(worst, (iv.b - iv.a) - iv.length - 2.0 * p.resolution);
    }
  }
  Scene radial = make_scene({{{0, 0}, 1.0}}, {{{2, 0}, {3, 0}}}, 2.0, 0.0);
  TimeSolver rs(radial, exact_params());
  auto rp = phi_profile(rs);
  const auto& iv = rp.component_intervals[0];
  double ratio = (iv.b - iv.a) / iv.length;
  bool pass = worst <= 1e-9 && std::abs(ratio - 1.0) <= 0.02;
  return {pass, fmt("max (b-a) - m1 - slack = %.3e over %d components; radial (b-a)/m1 = %.6f", worst, comps, ratio)};
}

Outcome c5_unit_expansion() {
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int checks = 0, fails = 0, nontrivial = 0;
  long nodes = 0;
  double worst = -kInfinity;
  const double h = 0.05;
  for (int k = 0; k < 20; ++k) {
    Scene sc = random_scene(rng, 4, 1.0);
    TimeSolver s(sc, exact_params());
    auto p = phi_profile(s);
    for (int j = 0; j < 5; ++j) {
      double tau = 2.5 * U(rng), tau2 = tau + 0.2 + 1.5 * U(rng);
      auto c = unit_expansion_check(s, tau, tau2, p, h);
      ++checks;
      if (!c.passed) ++fails;
      nodes += c.checked;
      if (c.checked > 0) {
        ++nontrivial;
        worst = std::max(worst, c.worst_excess);
      }
    }
  }
  return {fails == 0, fmt("%d/%d time pairs pass at slack 2h (h = %.2f); %d with r > 0 over %ld lattice nodes, "
                          "worst T - tau' %.3e",
                          checks - fails, checks, h, nontrivial, nodes, worst)};
}

Outcome c6_rho_integral() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int ok = 0, htb = 0;
  double worst_z = kInfinity;
  for (int k = 0; k < 20; ++k) {
    std::vector<Segment> segs;
    int n = 1 + static_cast<int>(U(rng) * 6);
    double budget = 0.3 * U(rng);
    for (int j = 0; j < n; ++j) {
      double r = 1.1 + 0.8 * U(rng), th = 2 * M_PI * U(rng), a = M_PI * U(rng);
      Point c{r * std::cos(th), r * std::sin(th)};
      Point d = (0.5 * budget / n) * Point{std::cos(a), std::sin(a)};
      segs.push_back({c - d, c + d});
    }
    Scene sc = make_scene({{{0, 0}, 1.0}}, segs, 2.0, 0.0);
    if (!complement_connected(sc.barrier)) continue;
    TimeSolver s(sc, exact_params());
    auto r = rho_integral_report(s, s.params().rho_samples, 1 + k, s.params().rho_shifts);
    double z = (r.lhs - r.rhs) / std::max(r.diff_se, 1e-300);
    worst_z = std::min(worst_z, z);
    if (r.lhs >= r.rhs - 3.0 * r.diff_se) ++ok;
    if (r.t_hat <= 1.0 + r.length + 1e-6) ++htb;
  }
  return {ok == 20 && htb == 20,
          fmt("lhs >= rhs - 3se on %d/20 (min z = %.2f); T_hat <= 1 + m1 on %d/20", ok, worst_z, htb)};
}

// random segments inside the cone |x| <= eps t, none parallel to the t axis
std::vector<Segment> cone_segments(std::mt19937_64& rng, double eps, double T, int n, double len) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<Segment> segs;
  for (int k = 0; k < n; ++k) {
    double t = (0.15 + 0.8 * U(rng)) * T;
    double x = (2 * U(rng) - 1) * eps * t;
    double a = 0.2 + (M_PI - 0.4) * U(rng);
    Point d = (0.5 * len) * Point{std::cos(a), std::sin(a)};
    segs.push_back({Point{t, x} - d, Point{t, x} + d});
  }
  return segs;
}

Outcome c7_sweep() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  // (bb) instances
  int sun_ok = 0, sun_n = 0, tries = 0;
  double min_f = kInfinity, worst_drop = 0.0;
  while (sun_n < 100 && tries < 100000) {
    ++tries;
    double eps = 0.1 + 0.3 * U(rng), T = 1.0 + 2.0 * U(rng);
    int n = 1 + static_cast<int>(U(rng) * 4);
    auto segs = cone_segments(rng, eps, T, n, 0.3 * eps * T / n * U(rng));
    auto sw = attainable_sweep(segs, eps, T, SweepMode::symmetric);
    auto sr = sunrise_margin(sw, 1e-9);
    if (!sr.hypothesis) continue;
    ++sun_n;
    if (sr.positive && sr.nondecreasing) ++sun_ok;
    min_f = std::min(min_f, sr.min_f);
    worst_drop = std::max(worst_drop, sr.worst_drop);
  }
  // (bb4)/(bb5) instances, wide mode
  int wide_ok = 0, wide_n = 0;
  double worst_ratio = kInfinity;
  tries = 0;
  while (wide_n < 100 && tries < 100000) {
    ++tries;
    double eps = 0.1 + 0.3 * U(rng), T = 1.0 + 2.0 * U(rng);
    int n = 1 + static_cast<int>(U(rng) * 4);
    auto segs = cone_segments(rng, 3 * eps, T, n, eps * T / (3.0 * n) * U(rng));
    double h = 0.0;
    for (const auto& s : segs) h += s.length();
    if (h <= 0.0 || h > eps * T / 3.0) continue;
    bool bb4 = true;
    for (double t : strip_breaks(segs))
      if (t > 0.0 && t <= T && strip_mass(segs, 0.0, t) > 0.5 * eps * t) bb4 = false;
    if (!bb4) continue;
    ++wide_n;
    auto sw = attainable_sweep(segs, eps, T, SweepMode::wide);
    double m = sw.measure_within(0.0, 3.0 * h);
    worst_ratio = std::min(worst_ratio, m / (2.0 * h));
    if (m >= 2.0 * h * (1.0 - 1e-9)) ++wide_ok;
  }
  // brute force
  int brute_ok = 0;
  double worst_rel = 0.0;
  for (int k = 0; k < 20; ++k) {
    double eps = 0.5, T = 1.0;
    int n = 1 + k % 4;
    std::vector<Segment> segs;
    for (int j = 0; j < n; ++j) {
      // steep walls cutting into the cone
      double t = 0.2 + 0.7 * U(rng), x = (2 * U(rng) - 1) * eps * t, L = 0.1 + 0.3 * U(rng);
      double a = M_PI / 2 + (U(rng) - 0.5) * 0.6;
      segs.push_back({{t, x}, {t + L * std::cos(a), x + L * std::sin(a)}});
    }
    auto sw = attainable_sweep(segs, eps, T, SweepMode::symmetric);
    double exact = sw.measure_at(T);
    double brute = test::path_tree_measure(segs, eps, T, 200, 8);
    double rel = std::abs(exact - brute) / std::max(brute, 2 * eps * T * 1e-3);
    worst_rel = std::max(worst_rel, rel);
    if (rel <= 0.01) ++brute_ok;
  }
  bool pass = sun_n == 100 && sun_ok == 100 && wide_n == 100 && wide_ok == 100 && brute_ok == 20;
  return {pass, fmt("sunrise %d/%d (min f %.3e, worst drop %.1e); wide overlap %d/%d (min ratio %.3f); "
                    "path tree %d/20 (worst rel %.3e)",
                    sun_ok, sun_n, min_f, worst_drop, wide_ok, wide_n, worst_ratio, brute_ok, worst_rel)};
}

Outcome c8_detour() {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const Point P{0, 0}, Q{2, 0};
  const double hg = 0.01;
  int n = 0, ok = 0, tries = 0;
  double worst_len = -kInfinity, worst_low = kInfinity;
  while (n < 100 && tries < 5000) {
    ++tries;
    double eps = 0.1 + 0.2 * U(rng);
    int count = 1 + static_cast<int>(U(rng) * 20);
    double total = (2.0 * eps / 3.0) * (0.2 + 0.75 * U(rng));
    std::vector<Segment> segs;
    for (int k = 0; k < count; ++k) {
      Point c{0.4 + 1.2 * U(rng), (2 * U(rng) - 1) * 0.3};
      double a = M_PI * U(rng);
      Point d = (0.5 * total / count) * Point{std::cos(a), std::sin(a)};
      segs.push_back({c - d, c + d});
    }
    Barrier b = split_components(segs);
    auto r = sparse_detour(P, Q, b, eps);
    if (r.status == DetourStatus::hypothesis_failed) continue;
    ++n;
    bool good = r.ok() && r.crossing_free;
    for (std::size_t k = 1; good && k < r.path.polyline.size(); ++k)
      good = visible(r.path.polyline[k - 1], r.path.polyline[k], b);
    double bound = 2.0 + 9.0 * eps * b.total_length();
    worst_len = std::max(worst_len, r.path.length - bound);
    // grid geodesic from a small source disc around P
    const double rs = 0.02;
    Scene gs = make_scene({{P, rs}}, segs, 2.0, 0.0);
    GridOptions go;
    go.domain = Box{{-0.5, -1.0}, {2.5, 1.0}};
    go.t_stop = 3.0;
    GridField f = solve_grid(gs, hg, 2, exact_params(), go);
    double geo = grid_probe(f, gs, SourceModel(gs.initial, 0), Q) + rs;
    worst_low = std::min(worst_low, r.path.length - (geo - 2 * hg));
    if (good && r.path.length <= bound + 1e-12 && r.path.length >= geo - 2 * hg) ++ok;
  }
  return {n == 100 && ok == 100, fmt("%d/%d instances (tries %d): max length - bound %.3e, min length - (grid - 2h) %.3e",
                                     ok, n, tries, worst_len, worst_low)};
}

Outcome c9_spiral() {
  SpiralSpec sp;
  sp.sigma = 2.5;
  sp.r0 = 0.1;
  Params p = exact_params();
  p.phi_min_per_segment = 2;
  Scene sc = make_scene({{{0, 0}, sp.r0}}, spiral_segments(sp), 2.5, 0.0);
  TimeSolver s(sc, p);
  auto prof = phi_profile(s);
  auto adm = admissibility(prof, 2.5, p.adm_tol * 2.5 * sc.diameter());
  // construction window: from the first resolved touch until the tips meet
  const double t_end = sp.closure_radius() - sp.r0;
  double worst_sat = 0.0;
  for (int k = 1; k <= 400; ++k) {
    double t = 0.05 + (t_end - 0.05) * k / 400.0;
    worst_sat = std::max(worst_sat, std::abs(prof.phi_at(t) - 2.5 * t) / (2.5 * t));
  }
  auto burn = burned_region(sc, 0.02, p);
  const double closure_oracle = sp.r0 * std::exp(M_PI / 0.75);
  // measured closure: farthest barrier point from the origin
  double far = 0.0;
  for (const auto& g : sc.barrier.segments()) far = std::max({far, norm(g.a), norm(g.b)});
  double closure_rel = std::abs(far - closure_oracle) / closure_oracle;

  // speed 1: closed curves around the source are all inadmissible
  std::vector<std::vector<Segment>> closed{spiral_segments(sp), polygonalize_disc({{0, 0}, 1.0}, 64).segments(),
                                           polygonalize_disc({{0, 0}, 3.0}, 128).segments(),
                                           {{{-2, -2}, {2, -2}}, {{2, -2}, {2, 2}}, {{2, 2}, {-2, 2}}, {{-2, 2}, {-2, -2}}}};
  SpiralSpec fast = sp;
  fast.sigma = 4.0;
  closed.push_back(spiral_segments(fast));
  int slow_inadm = 0;
  for (const auto& c : closed) {
    Scene cs = make_scene({{{0, 0}, 0.1}}, c, 2.5, 0.0);
    TimeSolver cs_s(cs, p);
    auto cp = phi_profile(cs_s);
    if (!admissibility(cp, 1.0, p.adm_tol * cs.diameter()).admissible) ++slow_inadm;
  }
  bool pass = adm.admissible && worst_sat <= 0.02 && burn.bounded && closure_rel <= 0.005 &&
              slow_inadm == static_cast<int>(closed.size());
  return {pass, fmt("admissible %d (worst margin %.2e); max |phi - sigma t|/(sigma t) %.4f on [0.05, %.3f]; "
                    "bounded %d (area %.4f); closure %.4f vs %.4f; sigma=1 inadmissible %d/%zu",
                    adm.admissible, adm.worst_margin, worst_sat, t_end, burn.bounded, burn.area, far,
                    closure_oracle, slow_inadm, closed.size())};
}

Outcome c10_flowbox() {
  SpiralSpec sp;
  Params p = exact_params();
  p.phi_min_per_segment = 2;
  const Box dust_box{{-4.5, -0.8}, {-1.5, 0.8}};
  int built = 0, certified = 0, shield_ok = 0;
  std::string notes;
  double worst_shield = kInfinity;
  for (int seed = 1; seed <= 10; ++seed) {
    auto segs = spiral_segments(sp);
    auto dust = dust_segments(dust_box, 200, 0.2, seed);
    segs.insert(segs.end(), dust.begin(), dust.end());
    Scene sc = make_scene({{{0, 0}, sp.r0}}, segs, 2.6, 1.0);
    TimeSolver s(sc, p);
    FlowboxOptions fo;
    fo.eps = 0.2;
    fo.r_max = 0.5;
    fo.seed = seed;
    fo.leg_grid = p.flowbox_grid;
    auto b = construct_flowbox(s, dust_box, fo);
    if (!b.ok) {
      notes += fmt(" s%d:nobox", seed);
      continue;
    }
    ++built;
    Scene pruned = prune(sc, b.box);
    auto cert = certify_improvement(s, pruned, b.box, 0.02);
    if (cert.passed) ++certified;
    else notes += fmt(" s%d:%s", seed, cert.message.c_str());

    Scene sc0 = sc;
    sc0.c0 = 0.0;
    Scene pr0 = pruned;
    pr0.c0 = 0.0;
    TimeSolver s0(sc0, p);
    auto c0 = certify_improvement(s0, pr0, b.box, 0.02);
    if (c0.check_shield) ++shield_ok;
    if (c0.shield_expected > 0.0) worst_shield = std::min(worst_shield, c0.shield_reduction / c0.shield_expected);
  }
  bool pass = built >= 7 && certified == built && shield_ok == built;
  return {pass, fmt("flow boxes %d/10, certified %d/%d, shield variant %d/%d (min reduction / pi r0^2 %.3f)%s", built,
                    certified, built, shield_ok, built, worst_shield, notes.c_str())};
}

Outcome c11_stability() {
  std::vector<int> ns{16, 32, 64, 128, 256};
  std::vector<std::vector<double>> T;
  std::mt19937_64 rng(1111);
  std::vector<Point> probes;
  for (Point x : random_probes(rng, {{-4, -4}, {4, 4}}, 400)) {
    double r = norm(x);
    if (std::abs(r - 2.0) >= 0.05 + 0.01 && r > 1.0) probes.push_back(x);
  }
  for (int n : ns) {
    Scene sc = make_scene({{{0, 0}, 1.0}}, polygonalize_arc({0, 0}, 2.0, -M_PI / 2, M_PI / 2, n).segments(), 2.0, 0.0);
    TimeSolver s(sc, exact_params());
    std::vector<double> t;
    for (Point x : probes) t.push_back(s.min_time(x));
    T.push_back(t);
  }
  std::vector<double> diffs;
  for (std::size_t k = 0; k + 1 < T.size(); ++k) {
    double d = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) d = std::max(d, std::abs(T[k][i] - T[k + 1][i]));
    diffs.push_back(d);
  }
  bool pass = true;
  std::string s;
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    s += fmt(" %.2e", diffs[k]);
    if (k > 0 && diffs[k] > 0.6 * diffs[k - 1]) pass = false;
  }
  return {pass, fmt("max |T_n - T_2n| for n = 16..128:%s (%zu probes)", s.c_str(), probes.size())};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "no-barrier identity", c1_no_barrier},
      {2, "corner-path oracle", c2_corner},
      {3, "loop-around bound", c3_loop_around},
      {4, "touch intervals", c4_touch_intervals},
      {5, "unit expansion", c5_unit_expansion},
      {6, "rho integral", c6_rho_integral},
      {7, "sweep engine", c7_sweep},
      {8, "detour bound", c8_detour},
      {9, "spiral strategy", c9_spiral},
      {10, "flow box pruning demo", c10_flowbox},
      {11, "approximation stability", c11_stability},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %2d %-26s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), sec);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed ? 1 : 0;
}
