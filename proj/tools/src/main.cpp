#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fireline/burnedcost.hpp"
#include "fireline/cli/lemmas.hpp"
#include "fireline/cli/report.hpp"
#include "fireline/cli/scene_io.hpp"
#include "fireline/cli/svg.hpp"
#include "fireline/detour.hpp"
#include "fireline/eikonal_grid.hpp"
#include "fireline/firefront.hpp"
#include "fireline/flowbox.hpp"
#include "fireline/strategy.hpp"

#ifndef FIRELINE_SCENE_DIR
#define FIRELINE_SCENE_DIR "scenes"
#endif

using namespace fireline;
using namespace fireline::cli;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& s, std::size_t expect, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError(std::string("bad number in ") + what + ": '" + tok + "'");
    }
  }
  if (expect && v.size() != expect) throw InputError(std::string(what) + " needs " + std::to_string(expect) + " values");
  return v;
}

Point parse_point(const std::string& s, const char* what) {
  auto v = parse_list(s, 2, what);
  return {v[0], v[1]};
}

void draw_scene(Svg& svg, const Scene& sc) {
  for (const auto& d : sc.initial) svg.circle(d.center, d.radius, "#d62728", "#f4cccc");
  for (const auto& s : sc.barrier.segments()) svg.segment(s, "black", 1.5);
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---- solve
struct SolveOpts {
  std::string scene;
  std::vector<std::string> probes;
  bool grid = false;
  double h = 0.0;
  int order = 0;
  std::string csv, svg, levels;
  bool json_out = false;
};

int cmd_solve(const SolveOpts& o) {
  SceneFile sf = load_scene(o.scene);
  Params p = sf.params;
  if (o.h > 0.0) p.grid_h = o.h;
  if (o.order > 0) p.grid_order = o.order;
  TimeSolver solver(sf.scene, p);
  GridField field;
  if (o.grid || !o.csv.empty() || !o.svg.empty()) field = solve_grid(sf.scene, p.grid_h, p.grid_order, p);
  json out = json::array();
  for (const auto& s : o.probes) {
    Point x = parse_point(s, "--probe");
    double t = solver.min_time(x);
    json row = {{"x", to_json(x)}, {"time", jnum(t)}, {"error_bound", solver.error_bound()}};
    if (std::isfinite(t)) row["rho"] = solver.rho(x);
    if (!field.empty()) row["grid"] = jnum(grid_probe(field, sf.scene, solver.source(), x));
    if (o.json_out) {
      out.push_back(row);
    } else {
      std::printf("%.10g\n", t);
      if (!field.empty()) std::printf("grid %.10g\n", grid_probe(field, sf.scene, solver.source(), x));
    }
  }
  if (o.json_out) print_json(out);
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw InputError("cannot write " + o.csv);
    write_csv(field, f);
  }
  if (!o.svg.empty()) {
    Svg svg(field.domain());
    draw_scene(svg, sf.scene);
    std::vector<double> levels;
    if (!o.levels.empty()) levels = parse_list(o.levels, 0, "--levels");
    for (double t : levels)
      for (const auto& pl : level_set(field, t)) svg.polyline(pl.points, "#1f77b4", 1.0, pl.closed);
    svg.save(o.svg);
  }
  return 0;
}

// ---- verify
int cmd_verify(const std::string& scene) {
  SceneFile sf = load_scene(scene);
  TimeSolver solver(sf.scene, sf.params);
  TouchProfile prof = phi_profile(solver);
  double tol = sf.params.adm_tol * sf.scene.sigma * sf.scene.diameter();
  auto rep = admissibility(prof, sf.scene.sigma, tol);
  print_json(to_json(rep, prof));
  return rep.admissible ? 0 : 1;
}

// ---- cost
int cmd_cost(const std::string& scene, double h) {
  SceneFile sf = load_scene(scene);
  if (h <= 0.0) h = sf.params.grid_h;
  print_json(to_json(burned_region(sf.scene, h, sf.params)));
  return 0;
}

// ---- detour
struct DetourOpts {
  std::string scene, from, to, csv;
  double eps = 0.1;
  bool force = false;
};

int cmd_detour(const DetourOpts& o) {
  SceneFile sf = load_scene(o.scene);
  Point P = parse_point(o.from, "--from"), Q = parse_point(o.to, "--to");
  if (!(o.eps > 0.0 && o.eps < 1.0)) throw InputError("--eps must lie in (0, 1)");
  DetourResult r;
  if (o.force) {
    DetourFrame fr = make_frame(P, Q);
    std::vector<Segment> segs;
    for (const auto& s : sf.scene.barrier.pieces()) segs.push_back({fr.to_frame(s.a), fr.to_frame(s.b)});
    r = construct_detour(fr, segs, o.eps, sf.params);
  } else {
    r = sparse_detour(P, Q, sf.scene.barrier, o.eps, sf.params);
  }
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw InputError("cannot write " + o.csv);
    f << "t,x\n";
    char buf[80];
    for (Point g : r.path.graph) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", g.x, g.y);
      f << buf;
    }
  }
  print_json(to_json(r));
  return r.ok() && r.within_bound ? 0 : 1;
}

// ---- prune
struct PruneOpts {
  std::string scene, omega, out, svg;
  double eps = 0.2;
  double h_grid = 0.0;
  int candidates = 64;
  double r_max = 0.5;
  std::uint64_t seed = 1;
};

int cmd_prune(const PruneOpts& o) {
  SceneFile sf = load_scene(o.scene);
  Box omega = sf.scene.bounds();
  if (!o.omega.empty()) {
    auto v = parse_list(o.omega, 4, "--omega");
    omega = {{v[0], v[1]}, {v[2], v[3]}};
  }
  FlowboxOptions fo;
  fo.eps = o.eps;
  fo.candidates = o.candidates;
  fo.seed = o.seed;
  fo.r_max = o.r_max;
  fo.leg_grid = sf.params.flowbox_grid;
  TimeSolver solver(sf.scene, sf.params);
  FlowboxBuild b = construct_flowbox(solver, omega, fo);
  if (!b.ok) {
    print_json({{"status", "failed"}, {"message", b.message}, {"anchors_tried", b.anchors_tried}});
    return 1;
  }
  Scene pruned = prune(sf.scene, b.box);
  double hg = o.h_grid > 0.0 ? o.h_grid : sf.params.grid_h;
  CertifyReport cert = certify_improvement(solver, pruned, b.box, hg);
  if (!o.out.empty()) save_scene(o.out, pruned, sf.params);
  if (!o.svg.empty()) {
    Svg svg(sf.scene.bounds().expanded(0.5));
    svg.polygon(b.box.region, "#2ca02c", 0.4);
    draw_scene(svg, sf.scene);
    svg.save(o.svg);
  }
  print_json({{"status", cert.passed ? "certified" : "rejected"},
              {"anchors_tried", b.anchors_tried},
              {"flowbox", to_json(b.box)},
              {"certification", to_json(cert)}});
  return cert.passed ? 0 : 1;
}

// ---- lemmas
int cmd_lemmas(const std::string& scene, const std::string& suite, double slack, std::uint64_t seed) {
  std::vector<LemmaRow> rows;
  if (!scene.empty()) {
    auto r = scene_lemmas(load_scene(scene), scene, slack, seed);
    rows.insert(rows.end(), r.begin(), r.end());
  } else if (suite == "default") {
    for (const char* name : {"empty", "corner", "radial", "circle", "arc", "spiral"}) {
      std::string path = std::string(FIRELINE_SCENE_DIR) + "/" + name + ".scene";
      auto r = scene_lemmas(load_scene(path), name, slack, seed);
      rows.insert(rows.end(), r.begin(), r.end());
    }
    auto e = engine_lemmas(slack, seed);
    rows.insert(rows.end(), e.begin(), e.end());
  } else if (suite == "empty") {
    SceneFile sf;
    sf.scene = make_scene({{{0.0, 0.0}, 1.0}}, {}, 2.0, 0.0);
    sf.params.source_n = 0;
    rows = scene_lemmas(sf, "empty", slack, seed);
  } else {
    throw InputError("unknown suite '" + suite + "'");
  }
  int failed = 0;
  for (const auto& r : rows) {
    std::printf("[%s] %-10s %-16s %s\n", r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL"), r.scene.c_str(),
                r.lemma.c_str(), r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%zu checks, %d failed\n", rows.size(), failed);
  return failed ? 1 : 0;
}

// ---- generate
struct GenOpts {
  std::string kind, out, box = "-4.5,-0.8,-1.5,0.8";
  double sigma = 2.5, scene_sigma = 0.0, r0 = 0.1, c0 = 0.0, radius = 3.0, total = 0.2, arc_from = 0.0, arc_to = 0.0;
  int points = 2000, count = 200, n = 360;
  std::uint64_t seed = 1;
};

int cmd_generate(const GenOpts& o) {
  Params p;
  p.source_n = 0;
  std::vector<Disc> discs{{{0.0, 0.0}, 1.0}};
  std::vector<Segment> segs;
  double sigma = o.scene_sigma > 0.0 ? o.scene_sigma : 2.0;
  if (o.kind == "spiral" || o.kind == "dust") {
    SpiralSpec sp;
    sp.sigma = o.sigma;
    sp.r0 = o.r0;
    sp.points_per_branch = o.points;
    segs = spiral_segments(sp);
    discs = {{{0.0, 0.0}, o.r0}};
    sigma = o.scene_sigma > 0.0 ? o.scene_sigma : o.sigma;
    p.points_per_branch = o.points;
    p.phi_min_per_segment = 2;
    if (o.kind == "dust") {
      auto v = parse_list(o.box, 4, "--box");
      auto d = dust_segments({{v[0], v[1]}, {v[2], v[3]}}, o.count, o.total, o.seed);
      segs.insert(segs.end(), d.begin(), d.end());
      p.seed = o.seed;
    }
  } else if (o.kind == "circle") {
    segs = polygonalize_disc({{0.0, 0.0}, o.radius}, o.n).segments();
  } else if (o.kind == "arc") {
    segs = polygonalize_arc({0.0, 0.0}, o.radius, o.arc_from, o.arc_to, o.n).segments();
  } else {
    throw InputError("unknown scene kind '" + o.kind + "'");
  }
  Scene sc = make_scene(discs, segs, sigma, o.c0);
  if (o.out.empty())
    write_scene(std::cout, sc, p);
  else
    save_scene(o.out, sc, p);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fireline: fire confinement barriers, minimum time fronts and flow box pruning"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  SolveOpts so;
  auto* solve = app.add_subcommand("solve", "minimum time at probes, grid fields and level sets");
  solve->add_option("scene", so.scene)->required();
  solve->add_option("--probe", so.probes, "x,y (repeatable)");
  solve->add_flag("--grid", so.grid, "also run the lattice solver");
  solve->add_option("--h", so.h, "lattice spacing");
  solve->add_option("--order", so.order, "stencil order 1..3");
  solve->add_option("--csv", so.csv, "write the lattice field");
  solve->add_option("--svg", so.svg, "draw level sets");
  solve->add_option("--levels", so.levels, "t1,t2,... for --svg");
  solve->add_flag("--json", so.json_out);

  std::string vscene;
  auto* verify = app.add_subcommand("verify", "admissibility of the barrier");
  verify->add_option("scene", vscene)->required();

  std::string cscene;
  double ch = 0.0;
  auto* cost = app.add_subcommand("cost", "burned region and total cost");
  cost->add_option("scene", cscene)->required();
  cost->add_option("--h", ch, "lattice spacing");

  DetourOpts dop;
  auto* detour = app.add_subcommand("detour", "sparse detour between two points");
  detour->add_option("scene", dop.scene)->required();
  detour->add_option("--from", dop.from)->required();
  detour->add_option("--to", dop.to)->required();
  detour->add_option("--eps", dop.eps);
  detour->add_option("--csv", dop.csv);
  detour->add_flag("--force", dop.force, "construct without checking the density hypotheses");

  PruneOpts po;
  auto* prune_cmd = app.add_subcommand("prune", "find a flow box, prune it and certify the result");
  prune_cmd->add_option("scene", po.scene)->required();
  prune_cmd->add_option("--eps", po.eps);
  prune_cmd->add_option("--omega", po.omega, "x0,y0,x1,y1 search box");
  prune_cmd->add_option("--out", po.out, "pruned scene file");
  prune_cmd->add_option("--svg", po.svg);
  prune_cmd->add_option("--h-grid", po.h_grid);
  prune_cmd->add_option("--candidates", po.candidates);
  prune_cmd->add_option("--r-max", po.r_max);
  prune_cmd->add_option("--seed", po.seed);

  std::string lscene, suite = "default";
  double slack = 1.0;
  std::uint64_t lseed = 1;
  auto* lemmas = app.add_subcommand("lemmas", "property checks on a scene or a bundled suite");
  lemmas->add_option("scene", lscene);
  lemmas->add_option("--suite", suite);
  lemmas->add_option("--slack", slack, "tolerance multiplier");
  lemmas->add_option("--seed", lseed);

  GenOpts go;
  auto* gen = app.add_subcommand("generate", "write a reference scene");
  gen->add_option("kind", go.kind, "spiral | dust | circle | arc")->required();
  gen->add_option("-o,--out", go.out);
  gen->add_option("--sigma", go.sigma, "spiral construction speed");
  gen->add_option("--scene-sigma", go.scene_sigma);
  gen->add_option("--r0", go.r0);
  gen->add_option("--c0", go.c0);
  gen->add_option("--points", go.points);
  gen->add_option("--count", go.count);
  gen->add_option("--total", go.total);
  gen->add_option("--box", go.box);
  gen->add_option("--seed", go.seed);
  gen->add_option("--radius", go.radius);
  gen->add_option("--n", go.n);
  gen->add_option("--from-angle", go.arc_from);
  gen->add_option("--to-angle", go.arc_to);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    if (*solve) return cmd_solve(so);
    if (*verify) return cmd_verify(vscene);
    if (*cost) return cmd_cost(cscene, ch);
    if (*detour) return cmd_detour(dop);
    if (*prune_cmd) return cmd_prune(po);
    if (*lemmas) return cmd_lemmas(lscene, suite, slack, lseed);
    if (*gen) return cmd_generate(go);
  } catch (const SceneParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
