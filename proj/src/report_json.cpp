#include "avd/report_json.hpp"

namespace avd {

Json to_json(const Certificate& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  j["sigma1"] = c.sigma1;
  j["sigma1_provenance"] = to_string(c.sigma1_provenance);
  j["cover"] = c.cover;
  j["cover_resolution"] = c.cover_resolution;
  j["packing"] = c.packing;
  j["ratio"] = c.ratio;
  j["condition_value"] = c.condition_value ? Json(*c.condition_value) : Json(nullptr);
  j["verdict"] = to_string(c.verdict);
  j["reason"] = c.reason;
  return j;
}

Json to_json(const OrphanReport& r) {
  Json j;
  j["orphan_free"] = r.orphan_free;
  j["num_sites"] = r.component_count.size();
  j["component_count"] = r.component_count;
  Json orphans = Json::array();
  for (const auto& o : r.orphans)
    orphans.push_back(Json{{"site", o.site}, {"cells", o.cell_count}, {"representative_cell", o.representative_cell}});
  j["orphans"] = orphans;
  j["displaced_sites"] = r.displaced_sites;
  j["orphan_cell_count"] = r.orphan_cells.size();
  return j;
}

Json to_json(const NeighborBoundReport& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["sigma"] = r.sigma;
  j["k"] = r.k;
  j["lower_bound"] = r.lower_bound;
  j["upper_bound"] = r.upper_bound;
  j["slack"] = r.slack;
  j["pairs_checked"] = r.pairs_checked;
  j["checks"] = r.checks;
  j["violation_count"] = r.violation_count;
  Json list = Json::array();
  for (const auto& v : r.violations)
    list.push_back(Json{{"v", v.v}, {"w", v.w}, {"at", v.cell}, {"value", v.value}, {"bound", v.bound}, {"side", v.side}});
  j["violations"] = list;
  return j;
}

Json to_json(const VariationReport& r) {
  Json j;
  j["sigma1_bound"] = r.sigma1_bound;
  j["sigma1_sampled"] = r.sigma1_sampled;
  j["sigma1_points"] = r.sigma1_points;
  j["sigma1_dirs"] = r.sigma1_dirs;
  j["sigma0_sampled"] = r.sigma0_sampled;
  j["sigma0_pairs"] = r.sigma0_pairs;
  j["cover"] = r.cover;
  j["sigma0_of_C_bound"] = r.sigma0_of_C_bound;
  j["seed"] = r.seed;
  return j;
}

Json to_json(const VerifyReport& r) {
  Json j;
  j["sigma1"] = r.sigma1;
  j["sigma1_overridden"] = r.sigma1_overridden;
  j["seed"] = r.seed;
  Json props = Json::array();
  for (const auto& p : r.properties)
    props.push_back(Json{{"name", p.name},
                         {"checks", p.checks},
                         {"violations", p.violations},
                         {"worst_excess", p.worst_excess},
                         {"passed", p.passed()}});
  j["properties"] = props;
  j["all_passed"] = r.all_passed();
  return j;
}

}  // namespace avd
