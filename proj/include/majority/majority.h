/* majority: synchronous two-color majority dynamics on graphs.
 *
 * C ABI: opaque handles, integer status codes, malloc'd strings released
 * with mjr_string_free. Thread safety: distinct handles may be used from
 * distinct threads; a single handle must not be shared without external
 * synchronization. mjr_last_error() is thread-local.
 */
#ifndef MAJORITY_MAJORITY_H
#define MAJORITY_MAJORITY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MJR_API __declspec(dllexport)
#else
#define MJR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mjr_status {
  MJR_OK = 0,
  MJR_ERR_INVALID_ARGUMENT = 1,
  MJR_ERR_ATTEMPTS_EXHAUSTED = 2,
  MJR_ERR_CAP_EXCEEDED = 3,
  MJR_ERR_IO = 4,
  MJR_ERR_PARSE = 5,
  MJR_ERR_INTERNAL = 6,
} mjr_status;

/* Stable lowercase identifier for a status code, e.g. "invalid-argument". */
MJR_API const char* mjr_status_name(mjr_status status);

/* Message for the most recent failing call on this thread ("" if none). */
MJR_API const char* mjr_last_error(void);

/* Frees any string returned through a char** out-parameter. NULL is a no-op. */
MJR_API void mjr_string_free(char* s);

/* Pure seed-derivation mix; identical to the one used inside experiment
 * runners, so clients can reproduce per-trial seeds. */
MJR_API uint64_t mjr_derive_seed(uint64_t master, uint64_t stream, uint64_t index);

/* ------------------------------------------------------------------ graphs */

typedef struct mjr_graph mjr_graph;

/* Uniform simple d-regular graph by configuration-model rejection sampling.
 * Fails with MJR_ERR_ATTEMPTS_EXHAUSTED when no simple projection appears
 * within max_attempts (pass 0 for the default of 1000). */
MJR_API mjr_status mjr_graph_random_regular(uint64_t n, uint32_t d, uint64_t seed,
                                            uint32_t max_attempts, mjr_graph** out);

/* Approximately uniform simple d-regular graph; practical for large d where
 * rejection sampling is hopeless. max_restarts 0 means the default of 100. */
MJR_API mjr_status mjr_graph_random_regular_fast(uint64_t n, uint32_t d, uint64_t seed,
                                                 uint32_t max_restarts, mjr_graph** out);

/* Picks between the two samplers: rejection while its expected attempt count
 * fits comfortably inside max_attempts (0 = default 1000), fast otherwise. */
MJR_API mjr_status mjr_graph_random_regular_auto(uint64_t n, uint32_t d, uint64_t seed,
                                                 uint32_t max_attempts, mjr_graph** out);

MJR_API mjr_status mjr_graph_cycle_union(const uint64_t* lengths, size_t count,
                                         mjr_graph** out);
MJR_API mjr_status mjr_graph_matching(uint64_t n, mjr_graph** out);
MJR_API mjr_status mjr_graph_empty(uint64_t n, mjr_graph** out);
MJR_API mjr_status mjr_graph_gnp(uint64_t n, double p, uint64_t seed, mjr_graph** out);

/* Plain-text edge list ("n m" header, then "u v" per line, 0-indexed). */
MJR_API mjr_status mjr_graph_read(const char* path, mjr_graph** out);
MJR_API mjr_status mjr_graph_write(const mjr_graph* g, const char* path);

MJR_API uint64_t mjr_graph_order(const mjr_graph* g);
MJR_API uint64_t mjr_graph_edge_count(const mjr_graph* g);
/* Common degree if the graph is regular, else -1. */
MJR_API int64_t mjr_graph_regular_degree(const mjr_graph* g);
MJR_API void mjr_graph_free(mjr_graph* g);

/* ---------------------------------------------------------------- dynamics */

typedef enum mjr_outcome {
  MJR_OUTCOME_RED_MONO = 0,
  MJR_OUTCOME_BLUE_MONO = 1,
  MJR_OUTCOME_COEXIST_FIXED = 2,
  MJR_OUTCOME_COEXIST_PERIOD2 = 3,
} mjr_outcome;

typedef struct mjr_consensus_report {
  uint64_t consensus_time; /* rounds until the limit cycle is entered */
  uint32_t period;         /* 1 or 2 */
  int32_t outcome;         /* mjr_outcome */
  uint64_t initial_blue;
  uint64_t final_blue;
} mjr_consensus_report;

/* Bernoulli(p_blue) coloring as a newline-terminated 'b'/'r' string. */
MJR_API mjr_status mjr_random_coloring(uint64_t n, double p_blue, uint64_t seed,
                                       char** out);

/* Runs to the limit cycle from the given coloring ('b'/'r' string, optional
 * trailing newline; length must equal the graph order). round_cap 0 means
 * n^2 + 2. */
MJR_API mjr_status mjr_simulate(const mjr_graph* g, const char* coloring,
                                uint64_t round_cap, mjr_consensus_report* out);

/* Same run, rendered as a JSON document (optionally with the per-round blue
 * count trajectory). */
MJR_API mjr_status mjr_simulate_json(const mjr_graph* g, const char* coloring,
                                     uint64_t round_cap, int include_trajectory,
                                     char** json_out);

/* ------------------------------------------------------------------ theory */

/* values must hold k+1 doubles: the initial density and k recurrence levels.
 * d must be odd and >= 3. */
MJR_API mjr_status mjr_propagation_recurrence(uint32_t d, double p_blue, uint32_t k,
                                              double* values);

/* exp(-2 (d-1) eps^2); d odd >= 3, 0 < eps <= 1/2. Returns a negative value
 * on invalid arguments. */
MJR_API double mjr_propagation_level1_bound(uint32_t d, double eps);

/* 4 d^(2k), saturating at UINT64_MAX. 0 signals an invalid degree. */
MJR_API uint64_t mjr_non_tree_expectation_bound(uint32_t d, uint32_t k);

/* ceil(c' log_d log2 n); n passed as a double so huge orders fit. */
MJR_API mjr_status mjr_predicted_round_bound(uint32_t d, double n, double c_prime,
                                             uint32_t* out);

/* ---------------------------------------------------------------- monopoly */

/* Exact minimum dynamo size by exhaustive enumeration (n <= 20; n <= 14 also
 * checks every adversary coloring of the complement). */
MJR_API mjr_status mjr_dynamo_exact_min(const mjr_graph* g, uint32_t* out_size);

/* Budgeted stochastic shrink search; JSON result with best_size, best_set,
 * rounds_to_takeover, evaluations, exhaustive_verifier. */
MJR_API mjr_status mjr_dynamo_greedy_json(const mjr_graph* g, uint64_t budget,
                                          uint64_t seed, char** json_out);

/* Blue-on-set start. adversary: 0 = canonical all-red complement,
 * 1 = exhaustive over complement colorings (<= 24 free vertices). */
MJR_API mjr_status mjr_is_dynamo(const mjr_graph* g, const uint64_t* vertices,
                                 size_t count, int adversary, uint64_t round_cap,
                                 int32_t* out_is_dynamo, uint64_t* out_rounds);

/* Random seed-set audit; JSON report with alpha_observed, witness, and the
 * control-growth tally. strategy: "uniform" or "greedy". */
MJR_API mjr_status mjr_immunity_audit_json(const mjr_graph* g, double beta,
                                           uint64_t trials, const char* strategy,
                                           uint64_t seed, char** json_out);

/* ------------------------------------------------------------- experiments */

/* Runs one experiment described by flat key=value text (see README for the
 * key set). Either output pointer may be NULL; json_records controls whether
 * the JSON embeds per-trial records. Deterministic for fixed spec text,
 * independent of threads (0 means 1). */
MJR_API mjr_status mjr_experiment_run(const char* spec_text, uint32_t threads,
                                      int json_records, char** csv_out,
                                      char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* MAJORITY_MAJORITY_H */
