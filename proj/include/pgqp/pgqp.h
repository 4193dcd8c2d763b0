// Copyright 2026 The PGQP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/* C interface to the partitioned graph query processor. All handles are
 * opaque. Functions returning pgqp_status leave a message for
 * pgqp_last_error() on failure. Strings handed out through char** must be
 * released with pgqp_string_free(). */

#ifndef PGQP_PGQP_H_
#define PGQP_PGQP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(PGQP_BUILDING_LIBRARY)
#define PGQP_API __attribute__((visibility("default")))
#else
#define PGQP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pgqp_status {
  PGQP_OK = 0,
  PGQP_ERR_PARSE = 1,
  PGQP_ERR_REFERENCE = 2,
  PGQP_ERR_VALIDATION = 3,
  PGQP_ERR_ARGUMENT = 4,
  PGQP_ERR_INVARIANT = 5,
  PGQP_ERR_IO = 6,
  PGQP_ERR_INTERNAL = 7
} pgqp_status;

typedef enum pgqp_mode { PGQP_MODE_OPAT = 0, PGQP_MODE_TRADITIONAL = 1, PGQP_MODE_MAPREDUCE = 2 } pgqp_mode;
typedef enum pgqp_heuristic { PGQP_MAX_SN = 0, PGQP_MIN_SN = 1, PGQP_RANDOM_SN = 2 } pgqp_heuristic;
typedef enum pgqp_scheme_choice { PGQP_MIN_CC = 0, PGQP_MAX_CC = 1, PGQP_RANDOM_CC = 2 } pgqp_scheme_choice;

typedef struct pgqp_graph pgqp_graph;
typedef struct pgqp_catalog pgqp_catalog;
typedef struct pgqp_partitions pgqp_partitions;
typedef struct pgqp_query pgqp_query;
typedef struct pgqp_result pgqp_result;

/* Message of the last failure on the calling thread, or "". */
PGQP_API const char* pgqp_last_error(void);
PGQP_API const char* pgqp_version(void);
PGQP_API void pgqp_string_free(char* s);

/* Name parsing: "opat" / "trad" / "mr", "max-sn" ..., "min-cc" ... */
PGQP_API pgqp_status pgqp_parse_mode(const char* name, pgqp_mode* out);
PGQP_API pgqp_status pgqp_parse_heuristic(const char* name, pgqp_heuristic* out);
PGQP_API pgqp_status pgqp_parse_scheme_choice(const char* name, pgqp_scheme_choice* out);

/* Graphs */
PGQP_API pgqp_status pgqp_graph_load(const char* path, pgqp_graph** out);
PGQP_API pgqp_status pgqp_graph_parse(const char* text, pgqp_graph** out);
PGQP_API pgqp_status pgqp_graph_save(const pgqp_graph* g, const char* path);
PGQP_API pgqp_status pgqp_graph_counts(const pgqp_graph* g, uint64_t* vertices, uint64_t* edges);
PGQP_API uint64_t pgqp_graph_resident_bytes(const pgqp_graph* g);
PGQP_API void pgqp_graph_free(pgqp_graph* g);

typedef struct pgqp_synthetic_params {
  uint64_t vertices;
  uint64_t edges;
  uint32_t vertex_labels;
  uint32_t edge_labels;
  uint32_t embed_count;
  uint64_t seed;
  /* Random edges join vertices at most this far apart in id order; 0 = any. */
  uint64_t window;
} pgqp_synthetic_params;

/* templ may be NULL when embed_count is 0. */
PGQP_API pgqp_status pgqp_generate(const pgqp_synthetic_params* params, const pgqp_graph* templ, pgqp_graph** out);
/* Query text matching a template graph exactly. */
PGQP_API pgqp_status pgqp_template_query(const pgqp_graph* templ, char** out);

/* Catalogs */
PGQP_API pgqp_status pgqp_catalog_build(const pgqp_graph* g, pgqp_catalog** out);
PGQP_API pgqp_status pgqp_catalog_load(const char* path, pgqp_catalog** out);
PGQP_API pgqp_status pgqp_catalog_serialize(const pgqp_catalog* c, char** out);
PGQP_API void pgqp_catalog_free(pgqp_catalog* c);

/* Partitioning schemes */
PGQP_API pgqp_status pgqp_partition_builtin(const pgqp_graph* g, uint32_t k, uint64_t seed, pgqp_partitions** out);
PGQP_API pgqp_status pgqp_partition_import(const pgqp_graph* g, const char* assignment_path, uint32_t k,
                                           const char* scheme_name, pgqp_partitions** out);
/* Opens a directory written by pgqp_partitions_write. Partitions are read
 * from disk on every load. */
PGQP_API pgqp_status pgqp_partitions_open(const char* dir, pgqp_partitions** out);
PGQP_API pgqp_status pgqp_partitions_write(const pgqp_partitions* p, const char* dir);
PGQP_API uint32_t pgqp_partitions_k(const pgqp_partitions* p);
/* TSV: pid, local_vertices, boundary_vertices, local_edges, cut_edges, cc. */
PGQP_API pgqp_status pgqp_partitions_metrics(const pgqp_partitions* p, char** out);
PGQP_API uint64_t pgqp_partitions_total_cc(const pgqp_partitions* p);
PGQP_API pgqp_status pgqp_choose_scheme(const pgqp_partitions* const* schemes, size_t n, pgqp_scheme_choice mode,
                                        uint64_t seed, size_t* index);
PGQP_API void pgqp_partitions_free(pgqp_partitions* p);

/* Queries */
PGQP_API pgqp_status pgqp_query_load(const char* path, pgqp_query** out);
PGQP_API pgqp_status pgqp_query_parse(const char* text, pgqp_query** out);
PGQP_API pgqp_status pgqp_plan_dump(const pgqp_query* q, const pgqp_catalog* c, char** out);
PGQP_API void pgqp_query_free(pgqp_query* q);

/* Runs */
typedef struct pgqp_run_options {
  pgqp_mode mode;
  pgqp_heuristic heuristic;
  /* p for traditional, m for mapreduce; 0 = every eligible partition. */
  uint32_t workers;
  uint64_t seed;
  int has_limit;
  uint64_t limit;
  /* Bookkeeping directory; required when in_memory is 0. */
  const char* run_dir;
  int in_memory;
} pgqp_run_options;

PGQP_API void pgqp_run_options_init(pgqp_run_options* o);
PGQP_API pgqp_status pgqp_run(const pgqp_partitions* p, const pgqp_query* q, const pgqp_catalog* c,
                              const pgqp_run_options* o, pgqp_result** out);
PGQP_API size_t pgqp_result_answer_count(const pgqp_result* r);
/* One `qnode=vid@pid ...` line per answer in FAA order. */
PGQP_API pgqp_status pgqp_result_answers(const pgqp_result* r, char** out);
/* Sorted `qnode=vid ...` keys, one per line. */
PGQP_API pgqp_status pgqp_result_keys(const pgqp_result* r, char** out);
PGQP_API pgqp_status pgqp_result_runlog(const pgqp_result* r, char** out);
PGQP_API pgqp_status pgqp_result_iterations(const pgqp_result* r, char** out);
PGQP_API uint64_t pgqp_result_loads(const pgqp_result* r);
PGQP_API uint32_t pgqp_result_l_ideal(const pgqp_result* r);
PGQP_API int pgqp_result_complete(const pgqp_result* r);
/* Returns 1 and sets *ratio when the load ratio is defined. */
PGQP_API int pgqp_result_ratio(const pgqp_result* r, double* ratio);
PGQP_API void pgqp_result_peak_bytes(const pgqp_result* r, uint64_t* partition, uint64_t* bookkeeping);
PGQP_API void pgqp_result_free(pgqp_result* r);

/* Whole-graph matcher. Sorted answer keys, one per line. */
PGQP_API pgqp_status pgqp_oracle(const pgqp_graph* g, const pgqp_query* q, char** out);

/* Runs a campaign config. On a failed run the outputs still hold the
 * partial report and the status reports the failure. */
PGQP_API pgqp_status pgqp_campaign(const char* config_path, char** rows_tsv, char** summary);

#ifdef __cplusplus
}
#endif

#endif /* PGQP_PGQP_H_ */
