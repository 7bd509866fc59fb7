/* forestwalk: C API for sampling connected graph partitions.
 *
 * Every function that can fail returns a status code (FW_OK on success).
 * On failure, fw_last_error() returns a thread-local message describing
 * the most recent failing call on this thread.
 *
 * Handles are opaque and must be released with the matching *_free; any
 * out-pointer of char* is a NUL-terminated string the caller releases
 * with fw_string_free. Handles are not thread safe; graphs are immutable
 * after creation and may be shared across derived handles (forests,
 * chains keep the graph alive internally).
 */

#ifndef FORESTWALK_H
#define FORESTWALK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    FW_OK = 0,
    FW_ERR_INVALID_ARGUMENT = 1,
    FW_ERR_INVALID_FOREST = 2,
    FW_ERR_CYCLE_EDGE = 3,
    FW_ERR_EDGE_NOT_PRESENT = 4,
    FW_ERR_NOT_CONNECTED = 5,
    FW_ERR_NO_SPANNING_TREE = 6,
    FW_ERR_INITIALIZATION_FAILURE = 7,
    FW_ERR_STEP_FAILURE = 8,
    FW_ERR_SIZE_GUARD = 9,
    FW_ERR_UNSUPPORTED_GRAPH = 10,
    FW_ERR_NUMERICAL_FAILURE = 11,
    FW_ERR_BUDGET_EXHAUSTED = 12,
    FW_ERR_IO_FAILURE = 13,
    FW_ERR_UNKNOWN = 127
};

typedef struct fw_graph fw_graph;
typedef struct fw_forest fw_forest;
typedef struct fw_chain fw_chain;
typedef struct fw_dist fw_dist;

const char* fw_version(void);
const char* fw_last_error(void);
void fw_string_free(char* s);

/* ---- Graphs --------------------------------------------------------- */

/* name: path|cycle|grid|double_cycle|grid_with_hole, args as the
 * generator expects (grid takes rows, cols). */
int fw_graph_generate(const char* name, const int* args, int nargs, fw_graph** out);
int fw_graph_read_file(const char* path, fw_graph** out);
int fw_graph_from_text(const char* edge_list, fw_graph** out);
int fw_graph_to_text(const fw_graph* g, char** out_text);
int fw_graph_write_file(const fw_graph* g, const char* path);
int fw_graph_vertex_count(const fw_graph* g);
int fw_graph_edge_count(const fw_graph* g);
int fw_graph_edge(const fw_graph* g, int e, int* u, int* v);
void fw_graph_free(fw_graph* g);

/* Spanning tree count as a decimal string (exact), or its natural log
 * (-inf for disconnected graphs). */
int fw_count_spanning_trees(const fw_graph* g, char** out_decimal);
int fw_log_count_spanning_trees(const fw_graph* g, double* out_log);

/* ---- Forests --------------------------------------------------------- */

int fw_forest_create(const fw_graph* g, fw_forest** out);
int fw_forest_from_edges(const fw_graph* g, const int* edges, int nedges, fw_forest** out);
int fw_forest_link(fw_forest* f, int edge);
int fw_forest_cut(fw_forest* f, int edge);
int fw_forest_connected(fw_forest* f, int u, int v, int* out_connected);
int fw_forest_component_count(const fw_forest* f);
int fw_forest_component_size(fw_forest* f, int v, int* out_size);
/* out_assignment must hold vertex_count ints; parts are numbered by
 * their smallest vertex, densely from 0. */
int fw_forest_assignment(const fw_forest* f, int* out_assignment);
int fw_forest_edges(const fw_forest* f, int* out_edges, int cap, int* out_count);
void fw_forest_free(fw_forest* f);

/* ---- Chains ----------------------------------------------------------- */

/* variant: "recom" or "forest_walk". The initial state is the library
 * default for this graph/seed; use fw_chain_create_from_edges to start
 * from a specific forest. */
int fw_chain_create(const fw_graph* g, const char* variant, int k, double c,
                    uint64_t seed, int resample_cap, fw_chain** out);
int fw_chain_create_from_edges(const fw_graph* g, const char* variant, int k, double c,
                               uint64_t seed, int resample_cap,
                               const int* edges, int nedges, fw_chain** out);
int fw_chain_step(fw_chain* ch);
int fw_chain_run(fw_chain* ch, int64_t steps);
int64_t fw_chain_steps_done(const fw_chain* ch);
int fw_chain_assignment(const fw_chain* ch, int* out_assignment);
int fw_chain_component_count(const fw_chain* ch);
void fw_chain_free(fw_chain* ch);

/* ---- Exact distributions --------------------------------------------- */

/* Distribution over connected k-partitions weighted by
 * prod_i T(P_i) |P_i|^c. Enumeration refuses graphs above 20 vertices
 * unless override_guard is nonzero (hard limit 64). */
int fw_exact_distribution(const fw_graph* g, int k, double c, int override_guard,
                          fw_dist** out);
int fw_dist_size(const fw_dist* d);
/* Row i in sorted support order. out_weight receives the exact integer
 * weight, or "-" when c is not an integer. Any out pointer may be NULL. */
int fw_dist_row(const fw_dist* d, int i, char** out_partition, char** out_weight,
                double* out_prob);
/* Full table ("partition<TAB>weight<TAB>probability" lines) as one string. */
int fw_dist_table(const fw_dist* d, char** out_text);
void fw_dist_free(fw_dist* d);

/* Z_balanced / Z at c = 0, as an exact "numerator/denominator" string. */
int fw_fraction_balanced(const fw_graph* g, int k, int override_guard, char** out_ratio);

/* ---- Config-driven runs ----------------------------------------------- */

/* All three take the JSON run config documented in the README. Output
 * paths: "-" or empty means stdout. */
int fw_config_validate(const char* config_json);
/* Writes one JSON record per sample. */
int fw_sample_jsonl(const char* config_json, const char* out_path);
/* Forest-walk rejection sampling of balanced partitions. Accepted
 * samples go to out_path; counters may be NULL. */
int fw_reject_jsonl(const char* config_json, const char* out_path,
                    int64_t* out_tried, int64_t* out_accepted,
                    double* out_rate, double* out_ci_low, double* out_ci_high);
/* TV-vs-exact mixing table as CSV. checkpoints is an increasing list of
 * step counts; trials independent chains are pooled. */
int fw_mix_report_csv(const char* config_json, const int64_t* checkpoints,
                      int ncheckpoints, int trials, int override_guard,
                      const char* out_path);
/* Renders the configured samples into output.render_dir as
 * sample_NNNN.ppm (lattice layouts) or .svg. render_count of 0 falls
 * back to the sample count. */
int fw_render_samples(const char* config_json);
/* One image for an explicit assignment (length = vertex count). */
int fw_render_partition(const fw_graph* g, const int* assignment, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* FORESTWALK_H */
