#include "fireline/cli/report.hpp"

#include <cmath>

namespace fireline::cli {

json jnum(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

json to_json(Point p) { return json::array({p.x, p.y}); }

json to_json(const std::vector<Point>& pts) {
  json a = json::array();
  for (Point p : pts) a.push_back(to_json(p));
  return a;
}

json to_json(const BurnReport& r) {
  return {{"bounded", r.bounded},
          {"area", jnum(r.area)},
          {"area_error_band", jnum(r.area_error_band)},
          {"cost", jnum(r.cost)},
          {"h", r.h},
          {"component_count", r.component_count}};
}

json to_json(const AdmissibilityReport& r, const TouchProfile& p) {
  json iv = json::array();
  for (const auto& c : p.component_intervals)
    iv.push_back({{"a", jnum(c.a)}, {"b", jnum(c.b)}, {"length", c.length}});
  return {{"admissible", r.admissible},
          {"worst_margin", r.worst_margin},
          {"worst_time", r.worst_time},
          {"tolerance", r.tolerance},
          {"violation_times", r.violation_times},
          {"saturation_count", r.saturation_times.size()},
          {"total_length", p.total_length},
          {"resolution", p.resolution},
          {"touch_intervals", iv}};
}

json to_json(const DetourResult& r) {
  json g = json::array();
  for (Point p : r.path.graph) g.push_back(to_json(p));
  return {{"status", to_string(r.status)},
          {"message", r.message},
          {"kappa", r.kappa},
          {"h", r.h},
          {"bound", r.bound},
          {"length", r.path.length},
          {"slope_bound", r.path.slope_bound},
          {"within_bound", r.within_bound},
          {"crossing_free", r.crossing_free},
          {"y", r.y},
          {"overlap", r.overlap},
          {"wide_minus", r.wide_minus},
          {"wide_plus", r.wide_plus},
          {"gsm", r.gsm},
          {"gp1", r.gp1},
          {"gp11", r.gp11},
          {"rotated", r.rotated},
          {"graph", g},
          {"polyline", to_json(r.path.polyline)}};
}

json to_json(const FlowBox& b) {
  const Anchor& a = b.anchor;
  return {{"frame",
           {{"anchor", to_json(a.x)},
            {"time", a.t},
            {"e1", to_json(a.e1)},
            {"e2", to_json(a.e2)},
            {"scale", a.scale},
            {"local_mass", a.local_mass},
            {"worst_density", a.worst_density},
            {"flatness", a.flatness}}},
          {"t0", b.t0},
          {"h", b.h},
          {"eps", b.eps},
          {"time0", b.time0},
          {"height", b.height},
          {"h_grid", b.h_grid},
          {"side_A", to_json(std::vector<Point>{b.side_A.a, b.side_A.b})},
          {"side_B", to_json(std::vector<Point>{b.side_B.a, b.side_B.b})},
          {"lower", to_json(b.lower.points)},
          {"upper", to_json(b.upper.points)},
          {"region", to_json(b.region)},
          {"barrier_mass", b.barrier_mass},
          {"clearance", b.clearance},
          {"side_clearance", b.side_clearance},
          {"basm", b.basm_ok},
          {"sparse_lower", b.sparse_lower_ok},
          {"sparse_upper", b.sparse_upper_ok},
          {"worst_lower_ratio", jnum(b.worst_lower_ratio)},
          {"worst_upper_ratio", jnum(b.worst_upper_ratio)}};
}

json to_json(const CertifyReport& r) {
  return {{"passed", r.passed},
          {"message", r.message},
          {"removed_mass", r.removed_mass},
          {"tolerance", r.tolerance},
          {"admissibility",
           {{"pass", r.check_a},
            {"pruned_admissible", r.pruned_admissible},
            {"worst_margin_after", r.worst_margin_after},
            {"required_margin", r.required_margin},
            {"violation_time", r.violation_time}}},
          {"burned_area",
           {{"pass", r.check_b},
            {"original", jnum(r.area_original)},
            {"pruned", jnum(r.area_pruned)},
            {"band", r.area_band}}},
          {"cost",
           {{"pass", r.check_c},
            {"original", jnum(r.cost_original)},
            {"pruned", jnum(r.cost_pruned)},
            {"delta", jnum(r.delta_cost)}}},
          {"shield",
           {{"pass", r.check_shield},
            {"placed", r.shield_placed},
            {"center", to_json(r.shield_center)},
            {"radius", r.shield_radius},
            {"touch_time", r.shield_touch_time},
            {"admissible", r.shield_admissible},
            {"reduction", r.shield_reduction},
            {"expected", r.shield_expected}}},
          {"non_escape",
           {{"pass", r.check_non_escape}, {"samples", r.non_escape_samples}, {"worst", r.non_escape_worst}}},
          {"delay_bound", {{"pass", r.check_tdga}, {"worst", r.tdga_worst}}}};
}

}  // namespace fireline::cli
