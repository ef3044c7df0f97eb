/*
 * C interface to the anisotropic Voronoi certification library.
 *
 * Objects are opaque handles created by *_load / *_parse / *_create calls
 * and released with the matching *_free. Every fallible call returns an
 * avd_status; on failure avd_last_error() describes the problem (the
 * message is thread-local and valid until the next failing call on the
 * same thread). Strings returned through char** are heap allocated and
 * must be released with avd_string_free.
 */
#ifndef AVD_AVD_H
#define AVD_AVD_H

#include <stddef.h>
#include <stdint.h>

#if defined(AVD_BUILDING_LIBRARY)
#define AVD_API __attribute__((visibility("default")))
#else
#define AVD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum avd_status {
  AVD_OK = 0,
  AVD_ERR_PARSE = 1,
  AVD_ERR_DOMAIN = 2,
  AVD_ERR_DEGENERATE = 3,
  AVD_ERR_NOT_SPD = 4,
  AVD_ERR_ARGUMENT = 5,
  AVD_ERR_RESOLUTION = 6,
  AVD_ERR_IO = 7,
  AVD_ERR_INAPPLICABLE = 8,
  AVD_ERR_INTERNAL = 99
} avd_status;

typedef enum avd_kind { AVD_KIND_DW = 0, AVD_KIND_LS = 1 } avd_kind;

typedef enum avd_verdict { AVD_CERTIFIED = 0, AVD_NOT_CERTIFIED = 1, AVD_INAPPLICABLE = 2 } avd_verdict;

typedef enum avd_image_format { AVD_IMAGE_PPM = 0, AVD_IMAGE_SVG = 1 } avd_image_format;

typedef struct avd_mesh avd_mesh;
typedef struct avd_sites avd_sites;
typedef struct avd_labeling avd_labeling;

AVD_API const char* avd_version(void);
AVD_API const char* avd_last_error(void);
AVD_API void avd_string_free(char* s);

/* Mesh + metric (avdmesh text format). */
AVD_API avd_status avd_mesh_load(const char* path, avd_mesh** out);
AVD_API avd_status avd_mesh_parse(const char* text, avd_mesh** out);
AVD_API void avd_mesh_free(avd_mesh* mesh);
AVD_API int avd_mesh_dimension(const avd_mesh* mesh);
AVD_API size_t avd_mesh_num_simplices(const avd_mesh* mesh);

/* Site sets (avdsites text format). */
AVD_API avd_status avd_sites_load(const char* path, avd_sites** out);
AVD_API avd_status avd_sites_parse(const char* text, avd_sites** out);
AVD_API void avd_sites_free(avd_sites* sites);
AVD_API size_t avd_sites_count(const avd_sites* sites);

/* Metric variation. */
AVD_API avd_status avd_sigma1_pl_bound(const avd_mesh* mesh, double* out);
AVD_API avd_status avd_sigma0_of_C_bound(double sigma1, double cover, double* out);
/* JSON: {sigma1_bound, sigma1_sampled, sigma1_points, sigma1_dirs,
 *        sigma0_sampled, sigma0_pairs, cover, sigma0_of_C_bound, seed} */
AVD_API avd_status avd_variation_report(const avd_mesh* mesh, uint64_t num_points, uint64_t num_dirs, double cover,
                                        uint64_t seed, char** json_out);

/* Orphan-freedom conditions. avd_ls_condition returns AVD_ERR_INAPPLICABLE
 * when cover * sigma >= 1. */
AVD_API avd_status avd_dw_condition(double cover, double packing, double sigma, double* out);
AVD_API avd_status avd_ls_condition(double cover, double packing, double sigma, double* out);
AVD_API avd_status avd_net_threshold(avd_kind kind, double* out);

/* Delone constants of a site set under the mesh metric. */
AVD_API avd_status avd_packing_constant(const avd_mesh* mesh, const avd_sites* sites, avd_kind kind, double* out);
AVD_API avd_status avd_cover_constant(const avd_mesh* mesh, const avd_sites* sites, avd_kind kind, int resolution,
                                      double* out);

/* End-to-end certificate. JSON: {kind, sigma1, sigma1_provenance, cover,
 * cover_resolution, packing, ratio, condition_value, verdict, reason}. */
AVD_API avd_status avd_certify(const avd_mesh* mesh, const avd_sites* sites, avd_kind kind, int resolution,
                               char** json_out, avd_verdict* verdict_out);

/* Discrete diagrams. */
AVD_API avd_status avd_label_grid(const avd_mesh* mesh, const avd_sites* sites, avd_kind kind, int resolution,
                                  avd_labeling** out);
/* Wraps caller-provided labels (x fastest) over the box [lo, hi]. */
AVD_API avd_status avd_labeling_create(int dimension, int resolution, const double* lo, const double* hi,
                                       const int32_t* labels, size_t num_labels, size_t num_sites,
                                       avd_labeling** out);
AVD_API void avd_labeling_free(avd_labeling* labeling);
AVD_API avd_status avd_labeling_label(const avd_labeling* labeling, size_t cell, int32_t* out);
/* JSON: {orphan_free, num_sites, component_count, orphans, displaced_sites,
 * orphan_cell_count}. */
AVD_API avd_status avd_orphan_report(const avd_labeling* labeling, const avd_sites* sites, char** json_out,
                                     int* orphan_free);
AVD_API avd_status avd_neighbor_bounds(const avd_labeling* labeling, const avd_mesh* mesh, const avd_sites* sites,
                                       double cover, double packing, double sigma, char** json_out,
                                       size_t* violation_count);
/* 2D only; orphan cells are drawn black. */
AVD_API avd_status avd_write_image(const avd_labeling* labeling, const avd_sites* sites, avd_image_format format,
                                   const char* path);

/* Property suite. */
typedef struct avd_verify_options {
  size_t num_pairs;
  size_t sigma1_points;
  size_t sigma1_dirs;
  uint64_t seed;
  int has_sigma_override;
  double sigma_override;
} avd_verify_options;

AVD_API void avd_verify_options_default(avd_verify_options* options);
AVD_API avd_status avd_verify(const avd_mesh* mesh, const avd_verify_options* options, char** json_out,
                              int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* AVD_AVD_H */
