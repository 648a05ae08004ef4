/* blockcorr - correlation-based direct blockmodeling of binary and valued
 * networks.
 *
 * C interface to the engine: opaque handles, integer status codes, and
 * caller-owned output strings. Every function that can fail returns a
 * bc_status; bc_last_error() describes the most recent failure on the
 * calling thread. Strings returned through char** outputs are heap-allocated
 * and must be released with bc_string_free().
 */
#ifndef BLOCKCORR_H
#define BLOCKCORR_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bc_status {
    BC_OK = 0,
    BC_ERR_USAGE = 1,     /* bad arguments / unknown names */
    BC_ERR_DATA = 2,      /* invalid matrices, labels, files */
    BC_ERR_UNDEFINED = 3, /* criterion undefined (constant vector) */
    BC_ERR_LIMIT = 4,     /* enumeration over the configured limit */
    BC_ERR_INTERNAL = 5
} bc_status;

typedef struct bc_network bc_network;
typedef struct bc_partition bc_partition;
typedef struct bc_blockimage bc_blockimage;
typedef struct bc_evaluation bc_evaluation;
typedef struct bc_pool bc_pool;
typedef struct bc_qap bc_qap;

/* message for the last failing call on this thread */
const char* bc_last_error(void);

void bc_string_free(char* s);

/* ---- networks ---------------------------------------------------------- */

/* values is row-major n*n; labels may be NULL for "1".."n" */
bc_status bc_network_create(const char* const* labels, const double* values, int n,
                            int directed, int self_ties_defined, bc_network** out);
bc_status bc_network_parse(const char* text, int directed, int self_ties_defined,
                           bc_network** out);
bc_status bc_network_parse_file(const char* path, int directed, int self_ties_defined,
                                bc_network** out);
/* bundled fixtures ("befig1", "transatlantic") and external ones when their
 * files are available under fixture_dir (NULL: $BLOCKCORR_FIXTURES or
 * ./fixtures) */
bc_status bc_network_fixture(const char* name, const char* fixture_dir, bc_network** out);
void bc_network_free(bc_network* net);

int bc_network_size(const bc_network* net);
int bc_network_directed(const bc_network* net);
int bc_network_is_binary(const bc_network* net);
const char* bc_network_label(const bc_network* net, int actor);
double bc_network_value(const bc_network* net, int row, int col);
bc_status bc_network_digest(const bc_network* net, char** hex_out);
bc_status bc_network_format(const bc_network* net, char** text_out);

/* ---- partitions --------------------------------------------------------- */

/* assignment[i] in 0..k-1 for each actor */
bc_status bc_partition_create(const bc_network* net, const int* assignment, int k,
                              bc_partition** out);
bc_status bc_partition_parse(const bc_network* net, const char* text, bc_partition** out);
bc_status bc_partition_parse_file(const bc_network* net, const char* path,
                                  bc_partition** out);
void bc_partition_free(bc_partition* part);
int bc_partition_k(const bc_partition* part);
int bc_partition_position(const bc_partition* part, int actor);
bc_status bc_partition_format(const bc_partition* part, const bc_network* net,
                              char** text_out);

/* ---- blockimages -------------------------------------------------------- */

/* text grid: rows split by newlines or ';', cells by whitespace, each cell
 * a code from {com,nul,reg,rre,cre,rfn,cfn,dnc} or "code|code|..." for
 * ensemble alternatives */
bc_status bc_blockimage_parse(const char* text, bc_blockimage** out);
bc_status bc_blockimage_parse_file(const char* path, bc_blockimage** out);
void bc_blockimage_free(bc_blockimage* image);
int bc_blockimage_k(const bc_blockimage* image);
int bc_blockimage_is_fixed(const bc_blockimage* image);
long long bc_blockimage_ensemble_size(const bc_blockimage* image);
bc_status bc_blockimage_format(const bc_blockimage* image, char** text_out);
/* number of k x k fixed blockimages over the allowed codes (comma list) */
bc_status bc_blockimage_enumerate_count(int k, const char* allowed_codes,
                                        int dedupe_relabeling, int drop_trivial,
                                        int drop_degenerate, long long* count_out);
/* the same enumeration as one string, one blockimage per line with rows
 * joined by "; " */
bc_status bc_blockimage_enumerate(int k, const char* allowed_codes, int dedupe_relabeling,
                                  int drop_trivial, int drop_degenerate, char** list_out);

/* ---- evaluation --------------------------------------------------------- */

bc_status bc_evaluate(const bc_network* net, const bc_partition* part,
                      const bc_blockimage* image, bc_evaluation** out);
void bc_evaluation_free(bc_evaluation* ev);
double bc_evaluation_correlation(const bc_evaluation* ev);
/* -1 when the penalty is not applicable (valued network) */
long bc_evaluation_penalty(const bc_evaluation* ev);
bc_status bc_evaluation_json(const bc_evaluation* ev, char** json_out);

/* conventional inconsistency count of one block under one ideal type */
bc_status bc_block_penalty(const bc_network* net, const bc_partition* part, int i, int j,
                           const char* type_code, long* out);

/* text rendering of the blocked matrix with per-block annotations */
bc_status bc_render(const bc_network* net, const bc_partition* part,
                    const bc_blockimage* image, char** text_out);

/* ---- search ------------------------------------------------------------- */

typedef struct bc_search_params {
    int k;
    const char* allowed_codes; /* comma list, priority order; NULL: "com,nul" */
    const char* criterion;     /* "correlation" (default) or "penalty" */
    int restarts;              /* <=0: 50 */
    int max_no_improve;        /* 0: disabled */
    uint64_t seed;
    double epsilon_near;       /* <0: 0.01 */
    int pool_cap;              /* <=0: 100 */
    double exhaustive_limit;   /* <=0: 5e6 */
    int threads;               /* <=0: 1 */
} bc_search_params;

void bc_search_params_init(bc_search_params* params);

/* fixed_image and fixed_partition are optional (NULL) */
bc_status bc_exhaustive_search(const bc_network* net, const bc_search_params* params,
                               const bc_blockimage* fixed_image, bc_pool** out);
bc_status bc_local_search(const bc_network* net, const bc_search_params* params,
                          const bc_partition* fixed_partition,
                          const bc_blockimage* image, bc_pool** out);
bc_status bc_count_optima(const bc_network* net, const bc_search_params* params,
                          const bc_blockimage* fixed_image, int drop_degenerate,
                          long* count_out, bc_pool** pool_out);

void bc_pool_free(bc_pool* pool);
int bc_pool_size(const bc_pool* pool);
int bc_pool_optimum_is_proven(const bc_pool* pool);
double bc_pool_best_score(const bc_pool* pool);
bc_status bc_pool_solution(const bc_pool* pool, int index, bc_partition** part_out,
                           bc_blockimage** image_out);
double bc_pool_correlation(const bc_pool* pool, int index);
long bc_pool_penalty(const bc_pool* pool, int index);
bc_status bc_pool_json(const bc_pool* pool, const bc_network* net, char** json_out);

/* ---- QAP test ----------------------------------------------------------- */

/* iterations apply to Monte-Carlo mode; networks of at most 8 actors are
 * tested exactly over all permutations */
bc_status bc_qap_test(const bc_network* net, const bc_partition* part,
                      const bc_blockimage* image, long iterations, uint64_t seed,
                      bc_qap** out);
void bc_qap_free(bc_qap* qap);
double bc_qap_observed(const bc_qap* qap);
double bc_qap_p_value(const bc_qap* qap);
long bc_qap_iterations(const bc_qap* qap);
int bc_qap_exact(const bc_qap* qap);
bc_status bc_qap_json(const bc_qap* qap, char** json_out);

/* ---- replication -------------------------------------------------------- */

/* re-run the published analyses for a fixture name or "all"; text_out gets
 * the pass/fail table, json_out the structured report. failures_out counts
 * FAIL rows (external fixtures without data are SKIP, not FAIL). */
bc_status bc_replicate(const char* fixture, const char* fixture_dir, int expensive,
                       char** text_out, char** json_out, int* failures_out);

/* write bundled fixture files and the external-data manifest into dir */
bc_status bc_write_fixtures(const char* dir);

#ifdef __cplusplus
}
#endif

#endif /* BLOCKCORR_H */
