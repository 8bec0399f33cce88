/* C interface to the degulab library: opaque handles, status codes, and
 * reports carried as JSON documents with a CSV rendering. Every function that
 * can fail returns a dgl_status; on failure dgl_last_error() describes the
 * problem for the calling thread. Output handles are owned by the caller and
 * released with the matching *_free function. */
#ifndef DEGULAB_H
#define DEGULAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(DGL_BUILDING)
#define DGL_API __attribute__((visibility("default")))
#else
#define DGL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dgl_status {
  DGL_OK = 0,
  DGL_E_ARGUMENT = 1,
  DGL_E_PRECONDITION = 2,
  DGL_E_CAPACITY = 3,
  DGL_E_CONSTRUCTION = 4,
  DGL_E_SIZE = 5,
  DGL_E_IO = 6,
  DGL_E_INTERNAL = 7
} dgl_status;

typedef struct dgl_graph dgl_graph;
typedef struct dgl_partition dgl_partition;
typedef struct dgl_separator dgl_separator;
typedef struct dgl_bundle dgl_bundle;
typedef struct dgl_report dgl_report;

DGL_API const char* dgl_version(void);
DGL_API const char* dgl_status_name(dgl_status status);
/* Message of the last failure on this thread ("" if none). */
DGL_API const char* dgl_last_error(void);

/* ---- graphs ---------------------------------------------------------- */

DGL_API dgl_status dgl_graph_create(size_t n, int simple, dgl_graph** out);
/* kind: "edgeless", "complete", "circulant" (offsets), "random-simple" (p), "random-weighted". */
DGL_API dgl_status dgl_graph_generate(const char* kind, size_t n, double p, const size_t* offsets, size_t offset_count,
                                      uint64_t seed, dgl_graph** out);
/* format: "auto", "dgl", "csv", "edges"; n_hint pads CSV and edge lists. */
DGL_API dgl_status dgl_graph_load(const char* path, const char* format, size_t n_hint, dgl_graph** out);
DGL_API dgl_status dgl_graph_save(const dgl_graph* g, const char* path, const char* format);
DGL_API size_t dgl_graph_order(const dgl_graph* g);
DGL_API int dgl_graph_is_simple(const dgl_graph* g);
DGL_API double dgl_graph_weight(const dgl_graph* g, uint32_t u, uint32_t v);
DGL_API dgl_status dgl_graph_set_weight(dgl_graph* g, uint32_t u, uint32_t v, double w);
DGL_API void dgl_graph_free(dgl_graph* g);

/* ---- partitions ------------------------------------------------------ */

DGL_API dgl_status dgl_partition_create(const uint32_t* assign, size_t n, size_t ell, dgl_partition** out);
DGL_API dgl_status dgl_partition_load(const char* path, dgl_partition** out);
DGL_API dgl_status dgl_partition_save(const dgl_partition* p, const char* path);
DGL_API size_t dgl_partition_order(const dgl_partition* p);
DGL_API size_t dgl_partition_cluster_count(const dgl_partition* p);
DGL_API uint32_t dgl_partition_cluster_of(const dgl_partition* p, uint32_t v);
DGL_API void dgl_partition_free(dgl_partition* p);

/* ---- reports --------------------------------------------------------- */

DGL_API const char* dgl_report_json(const dgl_report* r);
DGL_API const char* dgl_report_csv(const dgl_report* r);
DGL_API int dgl_report_passed(const dgl_report* r);
DGL_API void dgl_report_set_passed(dgl_report* r, int passed);
/* Sets doc[key] to the parsed JSON value. */
DGL_API dgl_status dgl_report_annotate(dgl_report* r, const char* key, const char* json_value);
/* Writes the JSON and/or CSV form; NULL or "" skips a file. */
DGL_API dgl_status dgl_report_write(const dgl_report* r, const char* json_path, const char* csv_path);
DGL_API dgl_status dgl_report_parse(const char* json_text, dgl_report** out);
DGL_API void dgl_report_free(dgl_report* r);

/* ---- separators and schedule ---------------------------------------- */

DGL_API dgl_status dgl_separator_build(size_t m, size_t d, uint64_t c_exp, uint64_t seed, size_t retry_cap,
                                       dgl_separator** out);
DGL_API dgl_status dgl_separator_from_json(const char* text, dgl_separator** out);
DGL_API dgl_status dgl_separator_save(const dgl_separator* s, const char* path);
/* Verification report including the system and, for built systems, how it was built. */
DGL_API dgl_status dgl_separator_verify(const dgl_separator* s, double c_bal, dgl_report** out);
DGL_API dgl_status dgl_mass_split_count(const dgl_separator* s, const double* lambda, size_t m, double zeta,
                                        size_t* count);
DGL_API void dgl_separator_free(dgl_separator* s);

DGL_API dgl_status dgl_schedule(size_t s, uint64_t c_exp, uint64_t cap, dgl_report** out);
DGL_API dgl_status dgl_tower(double a, double x, int self_referential, dgl_report** out);

/* ---- construction ---------------------------------------------------- */

typedef struct dgl_construct_options {
  int per_target_separators; /* 0: one separator per level */
  int total_only;            /* 1: do not keep per-layer graphs */
  size_t separator_retry_cap;
  uint64_t schedule_cap;     /* 0: default 2^24 */
} dgl_construct_options;

DGL_API void dgl_construct_options_init(dgl_construct_options* o);
DGL_API dgl_status dgl_bundle_build(size_t n, size_t s, double delta, uint64_t c_exp, uint64_t seed,
                                    const dgl_construct_options* options, dgl_bundle** out);
DGL_API size_t dgl_bundle_depth(const dgl_bundle* b);
DGL_API dgl_status dgl_bundle_total(const dgl_bundle* b, dgl_graph** out);
DGL_API dgl_status dgl_bundle_layer(const dgl_bundle* b, size_t r, dgl_graph** out);
DGL_API dgl_status dgl_bundle_level_partition(const dgl_bundle* b, size_t r, dgl_partition** out);
DGL_API dgl_status dgl_bundle_manifest(const dgl_bundle* b, dgl_report** out);
DGL_API dgl_status dgl_bundle_verify_homogeneity(const dgl_bundle* b, dgl_report** out);
/* r = 0 audits every level 1..s. */
DGL_API dgl_status dgl_bundle_audit_degree_sums(const dgl_bundle* b, size_t r, dgl_report** out);
/* Directed block edges of tournament T_r as JSON. */
DGL_API dgl_status dgl_bundle_tournament(const dgl_bundle* b, size_t r, dgl_report** out);
DGL_API void dgl_bundle_free(dgl_bundle* b);

/* ---- pairs and partitions -------------------------------------------- */

typedef enum dgl_pair_mode { DGL_PAIR_DEGULAR = 0, DGL_PAIR_EXHAUSTIVE = 1, DGL_PAIR_WITNESS = 2 } dgl_pair_mode;

DGL_API dgl_status dgl_check_pair(const dgl_graph* g, const uint32_t* a, size_t na, const uint32_t* b, size_t nb,
                                  double eps, dgl_pair_mode mode, dgl_report** out);
DGL_API dgl_status dgl_subset_density_check(const dgl_graph* g, const uint32_t* a, size_t na, const uint32_t* b,
                                            size_t nb, const uint32_t* x, size_t nx, double eps, dgl_report** out);
DGL_API dgl_status dgl_check_partition(const dgl_graph* g, const dgl_partition* p, double eps, dgl_report** out);
DGL_API dgl_status dgl_aggregate_to_degree_form(const dgl_graph* g, const dgl_partition* p, double eps,
                                                dgl_partition** out);
DGL_API dgl_status dgl_equalize_partition(const dgl_graph* g, const dgl_partition* p, double eps, uint64_t seed,
                                          dgl_partition** out, dgl_report** report);
DGL_API dgl_status dgl_refinement_beta(const dgl_partition* p, const dgl_partition* q, dgl_report** out);

typedef struct dgl_search_options {
  uint64_t budget;
  size_t restarts;
  size_t max_ell;
  const dgl_partition* initial; /* may be NULL */
} dgl_search_options;

DGL_API void dgl_search_options_init(dgl_search_options* o);
/* local_search = 0 selects the exhaustive mode. *out is NULL when nothing was found. */
DGL_API dgl_status dgl_search(const dgl_graph* g, double eps, int local_search, uint64_t seed,
                              const dgl_search_options* options, dgl_partition** out, dgl_report** report);
/* n_floor = 0 keeps the default assertion floor. */
DGL_API dgl_status dgl_cascade_audit(const dgl_bundle* b, const dgl_partition* z, double eps, double beta, double mu,
                                     size_t n_floor, dgl_report** out);

/* ---- rounding -------------------------------------------------------- */

typedef struct dgl_audit_options {
  size_t samples;
  size_t min_size; /* 0: ceil(20 zeta^-2 log n) */
  double log_base; /* 0: natural log */
} dgl_audit_options;

DGL_API void dgl_audit_options_init(dgl_audit_options* o);
DGL_API dgl_status dgl_round(const dgl_graph* gw, uint64_t seed, dgl_graph** out);
DGL_API dgl_status dgl_audit_rounding(const dgl_graph* gw, const dgl_graph* gs, double zeta, uint64_t seed,
                                      const dgl_audit_options* options, dgl_report** out);
/* Re-rounds with derived seeds until the audit passes (max_attempts >= 1). */
DGL_API dgl_status dgl_round_until_pass(const dgl_graph* gw, double zeta, uint64_t seed,
                                        const dgl_audit_options* options, size_t max_attempts, dgl_graph** out,
                                        dgl_report** report);
DGL_API dgl_status dgl_transfer_check(const dgl_graph* gw, const dgl_graph* gs, const uint32_t* a, size_t na,
                                      const uint32_t* b, size_t nb, double eps_prime, double zeta, dgl_report** out);

/* ---- regular hosts --------------------------------------------------- */

DGL_API dgl_status dgl_equipartition(const dgl_graph* g, size_t parts, double eps, uint64_t seed, dgl_partition** out,
                                     dgl_report** report);
DGL_API dgl_status dgl_embed(const dgl_graph* g, dgl_graph** out, dgl_report** report);
/* *out is NULL when the sequence is not graphic. */
DGL_API dgl_status dgl_realize_degree_sequence(const size_t* degrees, size_t n, dgl_graph** out, dgl_report** report);

#ifdef __cplusplus
}
#endif

#endif /* DEGULAB_H */
