#include "fireline/cli/scene_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace fireline::cli {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Knob {
  std::function<void(Params&, Scene&, double)> set;
  std::function<double(const Params&, const Scene&)> get;
};

const std::vector<std::pair<std::string, Knob>>& knobs() {
  static const std::vector<std::pair<std::string, Knob>> k = {
      {"sigma", {[](Params&, Scene& s, double v) { s.sigma = v; }, [](const Params&, const Scene& s) { return s.sigma; }}},
      {"c0", {[](Params&, Scene& s, double v) { s.c0 = v; }, [](const Params&, const Scene& s) { return s.c0; }}},
#define FIRELINE_KNOB(name, type)                                                          \
  {#name, {[](Params& p, Scene&, double v) { p.name = static_cast<type>(v); },            \
           [](const Params& p, const Scene&) { return static_cast<double>(p.name); }}}
      FIRELINE_KNOB(source_n, int),
      FIRELINE_KNOB(grid_h, double),
      FIRELINE_KNOB(grid_order, int),
      FIRELINE_KNOB(grid_margin, double),
      FIRELINE_KNOB(max_grid_nodes, double),
      FIRELINE_KNOB(phi_per_unit, double),
      FIRELINE_KNOB(phi_min_per_segment, int),
      FIRELINE_KNOB(coopt_tol, double),
      FIRELINE_KNOB(offset_rel, double),
      FIRELINE_KNOB(adm_tol, double),
      FIRELINE_KNOB(rho_samples, long),
      FIRELINE_KNOB(rho_shifts, int),
      FIRELINE_KNOB(sweep_rotation, double),
      FIRELINE_KNOB(points_per_branch, int),
      FIRELINE_KNOB(flowbox_grid, int),
      FIRELINE_KNOB(seed, std::uint64_t),
#undef FIRELINE_KNOB
  };
  return k;
}

const Knob* find_knob(const std::string& key) {
  for (const auto& [name, k] : knobs())
    if (name == key) return &k;
  return nullptr;
}

bool is_integer_knob(const std::string& key) {
  static const char* ints[] = {"source_n", "grid_order", "phi_min_per_segment", "rho_samples",
                               "rho_shifts", "points_per_branch", "flowbox_grid", "seed"};
  for (const char* s : ints)
    if (key == s) return true;
  return false;
}

}  // namespace

SceneParseError::SceneParseError(const std::string& where, int line, const std::string& what)
    : std::runtime_error(where + ":" + std::to_string(line) + ": " + what), line_(line) {}

SceneFile read_scene(std::istream& is, const std::string& name) {
  SceneFile out;
  std::vector<Disc> discs;
  std::vector<Segment> segs;
  std::string line, section;
  int ln = 0;
  bool header = false;
  auto fail = [&](const std::string& msg) { throw SceneParseError(name, ln, msg); };
  while (std::getline(is, line)) {
    ++ln;
    if (auto c = line.find('#'); c != std::string::npos) line.erase(c);
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (!header) {
      int version = 0;
      if (first != "fireline-scene" || !(ss >> version)) fail("expected header 'fireline-scene 1'");
      if (version != 1) fail("unsupported scene version " + std::to_string(version));
      header = true;
      continue;
    }
    if (first.front() == '[') {
      if (first != "[params]" && first != "[discs]" && first != "[segments]") fail("unknown section " + first);
      section = first;
      continue;
    }
    std::string rest;
    auto numbers = [&](std::size_t n) {
      std::vector<double> v;
      std::istringstream all(line);
      double x;
      while (all >> x) v.push_back(x);
      if (!all.eof()) fail("malformed number");
      if (v.size() != n) fail("expected " + std::to_string(n) + " numbers");
      return v;
    };
    if (section == "[params]") {
      const Knob* k = find_knob(first);
      if (!k) fail("unknown key '" + first + "'");
      double v;
      if (!(ss >> v)) fail("missing value for '" + first + "'");
      if (ss >> rest) fail("trailing text after '" + first + "'");
      if (is_integer_knob(first) && (v != std::floor(v) || v < 0)) fail("'" + first + "' must be a non-negative integer");
      k->set(out.params, out.scene, v);
    } else if (section == "[discs]") {
      auto v = numbers(3);
      if (!(v[2] > 0.0)) fail("disc radius must be positive");
      discs.push_back({{v[0], v[1]}, v[2]});
    } else if (section == "[segments]") {
      auto v = numbers(4);
      Segment s{{v[0], v[1]}, {v[2], v[3]}};
      if (s.a == s.b) fail("zero-length segment");
      segs.push_back(s);
    } else {
      fail("data outside of a section");
    }
  }
  if (!header) throw SceneParseError(name, ln, "empty scene file");
  if (discs.empty()) throw SceneParseError(name, ln, "no [discs] given");
  try {
    out.scene = make_scene(discs, segs, out.scene.sigma, out.scene.c0);
  } catch (const GeometryError& e) {
    throw SceneParseError(name, ln, e.what());
  }
  return out;
}

SceneFile load_scene(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw SceneParseError(path, 0, "cannot open");
  return read_scene(f, path);
}

void write_scene(std::ostream& os, const Scene& scene, const Params& params) {
  os << "fireline-scene 1\n[params]\n";
  const Params defaults;
  const Scene plain;
  for (const auto& [name, k] : knobs()) {
    double v = k.get(params, scene);
    if (name != "sigma" && name != "c0" && v == k.get(defaults, plain)) continue;
    os << name << ' ' << num(v) << '\n';
  }
  os << "[discs]\n";
  for (const auto& d : scene.initial) os << num(d.center.x) << ' ' << num(d.center.y) << ' ' << num(d.radius) << '\n';
  os << "[segments]\n";
  for (const auto& s : scene.barrier.segments())
    os << num(s.a.x) << ' ' << num(s.a.y) << ' ' << num(s.b.x) << ' ' << num(s.b.y) << '\n';
}

void save_scene(const std::string& path, const Scene& scene, const Params& params) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  write_scene(f, scene, params);
}

}  // namespace fireline::cli
