/* spd: signed persistence diagram vectorization.
 *
 * C interface over the core library: opaque handles, status codes, and JSON
 * strings for structured results. Every char* returned through an out
 * parameter is owned by the caller and released with spd_string_free().
 * Error details for the last failing call on the current thread are available
 * via spd_last_error().
 */
#ifndef SPD_H
#define SPD_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spd_status {
  SPD_OK = 0,
  SPD_ERR_INVALID_ARGUMENT = 1,
  SPD_ERR_PARSE = 2,
  SPD_ERR_DOMAIN = 3,
  SPD_ERR_CHECK_FAILED = 4,
  SPD_ERR_INTERNAL = 5
} spd_status;

typedef struct spd_pair spd_pair;
typedef struct spd_basis spd_basis;
typedef struct spd_diagram spd_diagram;
typedef struct spd_features spd_features;

const char* spd_status_string(spd_status status);
const char* spd_last_error(void);
void spd_string_free(char* s);

/* ---- polyhedral pairs ---------------------------------------------------
 * JSON form: {"dimension": d, "relations": [[i,j],...], "essential": [[i,j],...]}
 * with 1-based indices. */
spd_status spd_pair_from_json(const char* json_text, spd_pair** out);
void spd_pair_free(spd_pair* pair);
int spd_pair_dimension(const spd_pair* pair);
spd_status spd_pair_contains(const spd_pair* pair, const double* x, int len, int* out_contains);
spd_status spd_pair_distance_to_a(const spd_pair* pair, const double* x, int len, double* out);

/* ---- basis configuration -------------------------------------------------
 * Lipschitz schedule: L_0 = l0, L_n = a * rho^n for n >= 1. A stacked basis
 * requires l0 = 1, a = 1, rho = 1/z. */
spd_status spd_basis_create(const spd_pair* pair, int z, double l0, double a, double rho,
                            int max_layer, int rafter_radius, int stacked, spd_basis** out);
void spd_basis_free(spd_basis* basis);
spd_status spd_basis_info_json(const spd_basis* basis, char** out_json);
spd_status spd_basis_index_count(const spd_basis* basis, uint64_t* out);

/* ---- diagrams -------------------------------------------------------------
 * format: "csv" (weight,c1,...,cd), "jsonl" ({"w": w, "x": [..]} per line),
 * "rects" (rectangle barcode JSON; ignores pair and derives its own), or
 * "mixup" (b,dprime,d CSV rows on the mixup pair). pair may be NULL for the
 * latter two. out_pair (optional) receives the pair the diagram lives on. */
spd_status spd_diagram_parse(const spd_pair* pair, const char* text, const char* format,
                             spd_diagram** out, spd_pair** out_pair);
void spd_diagram_free(spd_diagram* diagram);
int spd_diagram_size(const spd_diagram* diagram);

spd_status spd_wasserstein1(const spd_diagram* a, const spd_diagram* b, double* out);
spd_status spd_wasserstein1_matching_json(const spd_diagram* a, const spd_diagram* b,
                                          char** out_json);
/* |alpha| = W1(alpha+, alpha-) = W1(alpha, empty). */
spd_status spd_diagram_norm(const spd_diagram* diagram, double* out);

/* ---- featurization ------------------------------------------------------ */
spd_status spd_vectorize(const spd_basis* basis, const spd_diagram* diagram, spd_features** out);
void spd_features_free(spd_features* features);
double spd_features_l1(const spd_features* features);
spd_status spd_features_sparse_json(const spd_features* features, char** out_json);
spd_status spd_features_dense_csv(const spd_features* features, char** out_csv,
                                  char** out_columns_json);
spd_status spd_tail_bound(const spd_basis* basis, const spd_diagram* diagram, double* out);

/* ---- plot-data export ---------------------------------------------------- */
spd_status spd_viz_export_json(const spd_basis* basis, const spd_diagram* diagram, char** out_json);

/* ---- verification suites --------------------------------------------------
 * suites: comma-separated suite names, or NULL for all. trials = 0 keeps each
 * suite's pinned trial count. Returns SPD_OK with *all_passed = 0 when a
 * suite fails; non-OK only for invalid input. */
spd_status spd_run_checks(const char* suites, uint64_t seed, uint64_t trials, char** report_json,
                          int* all_passed);
spd_status spd_check_suite_names(char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* SPD_H */
