// avdcert: command-line front end over the avd C API.
//
//   avdcert sigma   --mesh M [--sampled --cover C] [--seed N]
//   avdcert certify --mesh M --sites S [--kind dw|ls] [--resolution N]
//   avdcert diagram --mesh M --sites S [--kind dw|ls] [--resolution N] [--format ppm|svg --out PATH]
//   avdcert verify  --mesh M [--seed N] [--sigma-override X]
//
// Exit codes: 0 success / Certified / orphan-free / all properties pass,
// 1 NotCertified / orphans found / property failures, 2 Inapplicable or error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "avd/avd.h"

namespace {

using Json = nlohmann::ordered_json;

struct Config {
  std::string mesh_path;
  std::string sites_path;
  std::string kind = "dw";
  int resolution = 128;
  std::optional<double> cover;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "json";
  bool text = false;
  bool sampled = false;
  std::optional<double> sigma_override;
};

struct CliError {
  std::string message;
};

void check(avd_status s, const std::string& what) {
  if (s != AVD_OK) throw CliError{what + ": " + avd_last_error()};
}

struct MeshDeleter {
  void operator()(avd_mesh* m) const { avd_mesh_free(m); }
};
struct SitesDeleter {
  void operator()(avd_sites* s) const { avd_sites_free(s); }
};
struct LabelingDeleter {
  void operator()(avd_labeling* l) const { avd_labeling_free(l); }
};
using MeshPtr = std::unique_ptr<avd_mesh, MeshDeleter>;
using SitesPtr = std::unique_ptr<avd_sites, SitesDeleter>;
using LabelingPtr = std::unique_ptr<avd_labeling, LabelingDeleter>;

MeshPtr load_mesh(const Config& c) {
  avd_mesh* m = nullptr;
  check(avd_mesh_load(c.mesh_path.c_str(), &m), "mesh");
  return MeshPtr(m);
}

SitesPtr load_sites(const Config& c) {
  avd_sites* s = nullptr;
  check(avd_sites_load(c.sites_path.c_str(), &s), "sites");
  return SitesPtr(s);
}

avd_kind kind_of(const Config& c) { return c.kind == "ls" ? AVD_KIND_LS : AVD_KIND_DW; }

Json take_json(char* raw) {
  std::string s(raw);
  avd_string_free(raw);
  return Json::parse(s);
}

void print_text(const Json& j, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      print_text(*it, key);
    } else if (it->is_array() && !it->empty() && it->front().is_object() && it->front().contains("name")) {
      for (const auto& e : *it) {
        const std::string sub = key + "." + e["name"].get<std::string>();
        Json rest = e;
        rest.erase("name");
        print_text(rest, sub);
      }
    } else if (it->is_string()) {
      std::cout << key << ": " << it->get<std::string>() << "\n";
    } else {
      std::cout << key << ": " << it->dump() << "\n";
    }
  }
}

void emit(const Config& c, const Json& j) {
  if (c.text || c.format == "text") print_text(j);
  else std::cout << j.dump(2) << "\n";
}

int cmd_sigma(const Config& c) {
  auto mesh = load_mesh(c);
  if (!c.sampled) {
    double bound = 0.0;
    check(avd_sigma1_pl_bound(mesh.get(), &bound), "sigma1");
    Json j;
    j["sigma1_bound"] = bound;
    emit(c, j);
    return 0;
  }
  if (!c.cover) throw CliError{"--sampled needs --cover"};
  char* raw = nullptr;
  check(avd_variation_report(mesh.get(), 2000, 32, *c.cover, c.seed, &raw), "sigma");
  emit(c, take_json(raw));
  return 0;
}

int cmd_certify(const Config& c) {
  auto mesh = load_mesh(c);
  auto sites = load_sites(c);
  char* raw = nullptr;
  avd_verdict verdict = AVD_NOT_CERTIFIED;
  check(avd_certify(mesh.get(), sites.get(), kind_of(c), c.resolution, &raw, &verdict), "certify");
  emit(c, take_json(raw));
  return verdict == AVD_CERTIFIED ? 0 : verdict == AVD_NOT_CERTIFIED ? 1 : 2;
}

int cmd_diagram(const Config& c) {
  const bool image = c.format == "ppm" || c.format == "svg";
  if (image && c.out_path.empty()) throw CliError{"--format " + c.format + " needs --out PATH"};
  auto mesh = load_mesh(c);
  auto sites = load_sites(c);
  if (image && avd_mesh_dimension(mesh.get()) != 2)
    throw CliError{"image output needs a 2D diagram; use --format json for a report only"};
  avd_labeling* raw_labeling = nullptr;
  check(avd_label_grid(mesh.get(), sites.get(), kind_of(c), c.resolution, &raw_labeling), "diagram");
  LabelingPtr labeling(raw_labeling);
  if (image)
    check(avd_write_image(labeling.get(), sites.get(), c.format == "ppm" ? AVD_IMAGE_PPM : AVD_IMAGE_SVG,
                          c.out_path.c_str()),
          "image");
  char* raw = nullptr;
  int orphan_free = 0;
  check(avd_orphan_report(labeling.get(), sites.get(), &raw, &orphan_free), "orphans");
  Config report = c;
  if (image) report.format = "json";
  emit(report, take_json(raw));
  return orphan_free ? 0 : 1;
}

int cmd_verify(const Config& c) {
  auto mesh = load_mesh(c);
  avd_verify_options opt;
  avd_verify_options_default(&opt);
  opt.seed = c.seed;
  if (c.sigma_override) {
    opt.has_sigma_override = 1;
    opt.sigma_override = *c.sigma_override;
  }
  char* raw = nullptr;
  int all_passed = 0;
  check(avd_verify(mesh.get(), &opt, &raw, &all_passed), "verify");
  emit(c, take_json(raw));
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orphan-freedom certificates for anisotropic Voronoi diagrams"};
  app.require_subcommand(1);
  Config c;
  const auto formats = CLI::IsMember({"json", "text", "ppm", "svg"});
  const auto kinds = CLI::IsMember({"dw", "ls"});

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--mesh", c.mesh_path, "mesh + metric file")->required();
    sub->add_option("--seed", c.seed, "seed for sampled estimates")->capture_default_str();
    sub->add_option("--format", c.format, "output format")->check(formats)->capture_default_str();
    sub->add_flag("--text", c.text, "human-readable text instead of JSON");
  };
  auto add_diagram_inputs = [&](CLI::App* sub) {
    sub->add_option("--sites", c.sites_path, "sites file")->required();
    sub->add_option("--kind", c.kind, "distance kind")->check(kinds)->capture_default_str();
    sub->add_option("--resolution", c.resolution, "grid cells per axis")
        ->check(CLI::Range(2, 1 << 20))
        ->capture_default_str();
  };

  auto* sigma = app.add_subcommand("sigma", "metric variation bounds");
  add_common(sigma);
  sigma->add_flag("--sampled", c.sampled, "add sampled sigma1/sigma0 and the sigma0(C) bound");
  sigma->add_option("--cover", c.cover, "cover constant C for the sigma0(C) bound")->check(CLI::NonNegativeNumber);

  auto* certify = app.add_subcommand("certify", "orphan-freedom certificate");
  add_common(certify);
  add_diagram_inputs(certify);

  auto* diagram = app.add_subcommand("diagram", "discrete diagram and orphan report");
  add_common(diagram);
  add_diagram_inputs(diagram);
  diagram->add_option("--out", c.out_path, "image output path");

  auto* verify = app.add_subcommand("verify", "numerical property suite");
  add_common(verify);
  verify->add_option("--sigma-override", c.sigma_override, "replace the sigma1 bound (negative controls)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!c.out_path.empty() && !diagram->parsed()) throw CliError{"--out is only used by diagram"};
    if ((c.format == "ppm" || c.format == "svg") && !diagram->parsed())
      throw CliError{"--format " + c.format + " is only available for diagram"};
    if (sigma->parsed()) return cmd_sigma(c);
    if (certify->parsed()) return cmd_certify(c);
    if (diagram->parsed()) return cmd_diagram(c);
    return cmd_verify(c);
  } catch (const CliError& e) {
    std::cerr << "avdcert: " << e.message << "\n";
  } catch (const std::exception& e) {
    std::cerr << "avdcert: " << e.what() << "\n";
  }
  return 2;
}
