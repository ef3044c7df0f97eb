#include "avd/avd.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "avd/certify.hpp"
#include "avd/diagram.hpp"
#include "avd/error.hpp"
#include "avd/io.hpp"
#include "avd/render.hpp"
#include "avd/report_json.hpp"
#include "avd/variation.hpp"
#include "avd/verify.hpp"

struct avd_mesh {
  std::shared_ptr<const avd::SimplicialMetricMesh> mesh;
  avd::MetricField field;
};

struct avd_sites {
  avd::SiteSet sites;
};

struct avd_labeling {
  avd::GridLabeling labeling;
};

namespace {

thread_local std::string g_last_error;

avd_status status_of(avd::ErrorCode code) {
  switch (code) {
    case avd::ErrorCode::Parse: return AVD_ERR_PARSE;
    case avd::ErrorCode::Domain: return AVD_ERR_DOMAIN;
    case avd::ErrorCode::Degenerate: return AVD_ERR_DEGENERATE;
    case avd::ErrorCode::NotSpd: return AVD_ERR_NOT_SPD;
    case avd::ErrorCode::Argument: return AVD_ERR_ARGUMENT;
    case avd::ErrorCode::Resolution: return AVD_ERR_RESOLUTION;
    case avd::ErrorCode::Io: return AVD_ERR_IO;
    case avd::ErrorCode::Inapplicable: return AVD_ERR_INAPPLICABLE;
  }
  return AVD_ERR_INTERNAL;
}

template <typename Fn>
avd_status guarded(Fn&& fn) {
  try {
    fn();
    return AVD_OK;
  } catch (const avd::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return AVD_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (!p) throw avd::Error(avd::ErrorCode::Argument, std::string("null ") + what);
}

avd::DistanceKind kind_of(avd_kind k) {
  if (k != AVD_KIND_DW && k != AVD_KIND_LS) throw avd::Error(avd::ErrorCode::Argument, "invalid distance kind");
  return k == AVD_KIND_DW ? avd::DistanceKind::DW : avd::DistanceKind::LS;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

avd_mesh* wrap_mesh(std::shared_ptr<avd::SimplicialMetricMesh> m) {
  auto field = avd::MetricField::piecewise_linear(m);
  return new avd_mesh{std::move(m), std::move(field)};
}

}  // namespace

extern "C" {

const char* avd_version(void) { return "1.0.0"; }
const char* avd_last_error(void) { return g_last_error.c_str(); }
void avd_string_free(char* s) { std::free(s); }

avd_status avd_mesh_load(const char* path, avd_mesh** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output");
    *out = wrap_mesh(avd::load_mesh(path));
  });
}

avd_status avd_mesh_parse(const char* text, avd_mesh** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output");
    std::istringstream in(text);
    *out = wrap_mesh(avd::parse_mesh(in));
  });
}

void avd_mesh_free(avd_mesh* mesh) { delete mesh; }
int avd_mesh_dimension(const avd_mesh* mesh) { return mesh ? mesh->mesh->dimension() : 0; }
size_t avd_mesh_num_simplices(const avd_mesh* mesh) { return mesh ? mesh->mesh->num_simplices() : 0; }

avd_status avd_sites_load(const char* path, avd_sites** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output");
    *out = new avd_sites{avd::load_sites(path)};
  });
}

avd_status avd_sites_parse(const char* text, avd_sites** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output");
    std::istringstream in(text);
    *out = new avd_sites{avd::parse_sites(in)};
  });
}

void avd_sites_free(avd_sites* sites) { delete sites; }
size_t avd_sites_count(const avd_sites* sites) { return sites ? sites->sites.size() : 0; }

avd_status avd_sigma1_pl_bound(const avd_mesh* mesh, double* out) {
  return guarded([&] {
    require(mesh, "mesh");
    require(out, "output");
    *out = avd::sigma1_pl_bound(*mesh->mesh);
  });
}

avd_status avd_sigma0_of_C_bound(double sigma1, double cover, double* out) {
  return guarded([&] {
    require(out, "output");
    *out = avd::sigma0_of_C_bound(sigma1, cover);
  });
}

avd_status avd_variation_report(const avd_mesh* mesh, uint64_t num_points, uint64_t num_dirs, double cover,
                                uint64_t seed, char** json_out) {
  return guarded([&] {
    require(mesh, "mesh");
    require(json_out, "output");
    const auto r = avd::variation_report(mesh->field, num_points, num_dirs, cover, seed);
    *json_out = dup_string(avd::to_json(r).dump());
  });
}

avd_status avd_dw_condition(double cover, double packing, double sigma, double* out) {
  return guarded([&] {
    require(out, "output");
    *out = avd::dw_condition(cover, packing, sigma);
  });
}

avd_status avd_ls_condition(double cover, double packing, double sigma, double* out) {
  return guarded([&] {
    require(out, "output");
    const auto v = avd::ls_condition(cover, packing, sigma);
    if (!v) throw avd::Error(avd::ErrorCode::Inapplicable, "C * sigma >= 1: the LS condition is undefined");
    *out = *v;
  });
}

avd_status avd_net_threshold(avd_kind kind, double* out) {
  return guarded([&] {
    require(out, "output");
    *out = avd::net_threshold(kind_of(kind));
  });
}

avd_status avd_packing_constant(const avd_mesh* mesh, const avd_sites* sites, avd_kind kind, double* out) {
  return guarded([&] {
    require(mesh, "mesh");
    require(sites, "sites");
    require(out, "output");
    *out = avd::packing_constant(sites->sites, mesh->field, kind_of(kind));
  });
}

avd_status avd_cover_constant(const avd_mesh* mesh, const avd_sites* sites, avd_kind kind, int resolution,
                              double* out) {
  return guarded([&] {
    require(mesh, "mesh");
    require(sites, "sites");
    require(out, "output");
    *out = avd::cover_constant(sites->sites, mesh->field, kind_of(kind), resolution).value;
  });
}

avd_status avd_certify(const avd_mesh* mesh, const avd_sites* sites, avd_kind kind, int resolution, char** json_out,
                       avd_verdict* verdict_out) {
  return guarded([&] {
    require(mesh, "mesh");
    require(sites, "sites");
    require(json_out, "output");
    const auto cert = avd::certify_pipeline(mesh->mesh, sites->sites, kind_of(kind), resolution);
    *json_out = dup_string(avd::to_json(cert).dump());
    if (verdict_out)
      *verdict_out = cert.verdict == avd::Verdict::Certified      ? AVD_CERTIFIED
                     : cert.verdict == avd::Verdict::NotCertified ? AVD_NOT_CERTIFIED
                                                                  : AVD_INAPPLICABLE;
  });
}

avd_status avd_label_grid(const avd_mesh* mesh, const avd_sites* sites, avd_kind kind, int resolution,
                          avd_labeling** out) {
  return guarded([&] {
    require(mesh, "mesh");
    require(sites, "sites");
    require(out, "output");
    *out = new avd_labeling{avd::label_grid(mesh->field, sites->sites, kind_of(kind), resolution)};
  });
}

avd_status avd_labeling_create(int dimension, int resolution, const double* lo, const double* hi,
                               const int32_t* labels, size_t num_labels, size_t num_sites, avd_labeling** out) {
  return guarded([&] {
    require(lo, "lo");
    require(hi, "hi");
    require(labels, "labels");
    require(out, "output");
    if (dimension != 2 && dimension != 3) throw avd::Error(avd::ErrorCode::Argument, "dimension must be 2 or 3");
    avd::Box box;
    box.lo = Eigen::Map<const avd::Vec>(lo, dimension);
    box.hi = Eigen::Map<const avd::Vec>(hi, dimension);
    *out = new avd_labeling{
        avd::make_labeling(box, resolution, std::vector<std::int32_t>(labels, labels + num_labels), num_sites)};
  });
}

void avd_labeling_free(avd_labeling* labeling) { delete labeling; }

avd_status avd_labeling_label(const avd_labeling* labeling, size_t cell, int32_t* out) {
  return guarded([&] {
    require(labeling, "labeling");
    require(out, "output");
    if (cell >= labeling->labeling.labels.size()) throw avd::Error(avd::ErrorCode::Argument, "cell out of range");
    *out = labeling->labeling.labels[cell];
  });
}

avd_status avd_orphan_report(const avd_labeling* labeling, const avd_sites* sites, char** json_out, int* orphan_free) {
  return guarded([&] {
    require(labeling, "labeling");
    require(sites, "sites");
    require(json_out, "output");
    const auto report = avd::detect_orphans(labeling->labeling, sites->sites);
    *json_out = dup_string(avd::to_json(report).dump());
    if (orphan_free) *orphan_free = report.orphan_free ? 1 : 0;
  });
}

avd_status avd_neighbor_bounds(const avd_labeling* labeling, const avd_mesh* mesh, const avd_sites* sites, double cover,
                               double packing, double sigma, char** json_out, size_t* violation_count) {
  return guarded([&] {
    require(labeling, "labeling");
    require(mesh, "mesh");
    require(sites, "sites");
    require(json_out, "output");
    const auto r = avd::check_neighbor_bounds(labeling->labeling, sites->sites, mesh->field, cover, packing, sigma,
                                              labeling->labeling.kind);
    *json_out = dup_string(avd::to_json(r).dump());
    if (violation_count) *violation_count = r.violation_count;
  });
}

avd_status avd_write_image(const avd_labeling* labeling, const avd_sites* sites, avd_image_format format,
                           const char* path) {
  return guarded([&] {
    require(labeling, "labeling");
    require(sites, "sites");
    require(path, "path");
    if (labeling->labeling.grid.dimension() != 2)
      throw avd::Error(avd::ErrorCode::Argument, "image output needs a 2D diagram; use --format json for a report only");
    const auto report = avd::detect_orphans(labeling->labeling, sites->sites);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw avd::Error(avd::ErrorCode::Io, std::string("cannot write '") + path + "'");
    if (format == AVD_IMAGE_PPM) avd::write_ppm(out, labeling->labeling, &report);
    else if (format == AVD_IMAGE_SVG) avd::write_svg(out, labeling->labeling, sites->sites, &report);
    else throw avd::Error(avd::ErrorCode::Argument, "unknown image format");
    if (!out) throw avd::Error(avd::ErrorCode::Io, std::string("failed writing '") + path + "'");
  });
}

void avd_verify_options_default(avd_verify_options* options) {
  if (!options) return;
  const avd::VerifyOptions d;
  options->num_pairs = d.num_pairs;
  options->sigma1_points = d.sigma1_points;
  options->sigma1_dirs = d.sigma1_dirs;
  options->seed = d.seed;
  options->has_sigma_override = 0;
  options->sigma_override = 0.0;
}

avd_status avd_verify(const avd_mesh* mesh, const avd_verify_options* options, char** json_out, int* all_passed) {
  return guarded([&] {
    require(mesh, "mesh");
    require(json_out, "output");
    avd::VerifyOptions opt;
    std::optional<double> override_sigma;
    if (options) {
      opt.num_pairs = options->num_pairs;
      opt.sigma1_points = options->sigma1_points;
      opt.sigma1_dirs = options->sigma1_dirs;
      opt.seed = options->seed;
      if (options->has_sigma_override) {
        if (!(options->sigma_override >= 0.0))
          throw avd::Error(avd::ErrorCode::Argument, "sigma override must be non-negative");
        override_sigma = options->sigma_override;
      }
    }
    const double bound = avd::sigma1_pl_bound(*mesh->mesh);
    const auto report = avd::run_verification(mesh->field, bound, opt, override_sigma);
    *json_out = dup_string(avd::to_json(report).dump());
    if (all_passed) *all_passed = report.all_passed() ? 1 : 0;
  });
}

}  // extern "C"
