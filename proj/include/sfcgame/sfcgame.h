/* C interface to the SFC placement game library.
 *
 * Every function returns an sfc_status. On failure a message is available
 * from sfc_last_error() on the calling thread until the next call. Objects
 * are opaque and owned by the caller; release them with the matching
 * *_destroy function. Strings returned through char** are released with
 * sfc_string_free. */
#ifndef SFCGAME_SFCGAME_H
#define SFCGAME_SFCGAME_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SFC_API __declspec(dllexport)
#else
#define SFC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sfc_status {
  SFC_OK = 0,
  SFC_ERR_INVALID_ARGUMENT = 1,
  SFC_ERR_CONFIG = 2,
  SFC_ERR_NO_PATH = 3,
  SFC_ERR_ILLEGAL_TRANSITION = 4,
  SFC_ERR_IO = 5,
  SFC_ERR_INTERNAL = 6
} sfc_status;

typedef enum sfc_algorithm {
  SFC_ALGORITHM_PGRA = 0,
  SFC_ALGORITHM_VITERBI = 1,
  SFC_ALGORITHM_GREEDY = 2
} sfc_algorithm;

typedef enum sfc_format { SFC_FORMAT_CSV = 0, SFC_FORMAT_JSON = 1 } sfc_format;

typedef struct sfc_config sfc_config;
typedef struct sfc_graph sfc_graph;
typedef struct sfc_run sfc_run;
typedef struct sfc_taguchi sfc_taguchi;

typedef struct sfc_slot_metrics {
  int slot;
  sfc_algorithm algorithm;
  uint64_t seed;
  double phi;
  double allocated_fraction;
  double mean_bw;
  double mean_power;
  double mean_delay;
  int iterations;
} sfc_slot_metrics;

typedef struct sfc_taguchi_row {
  int d;
  int beam;
  int requests;
  double mean_phi;
  double mean_allocated;
} sfc_taguchi_row;

typedef struct sfc_taguchi_effect {
  int is_beam; /* 0: factor d, 1: factor beam */
  int level;
  int requests;
  double mean_phi;
} sfc_taguchi_effect;

/* Called once per property check by sfc_check. */
typedef void (*sfc_check_callback)(const char* name, int passed, const char* detail, void* user);

SFC_API const char* sfc_last_error(void);
SFC_API const char* sfc_version(void);
SFC_API void sfc_string_free(char* s);

/* Configuration. A new config holds the default simulation parameters. */
SFC_API sfc_status sfc_config_create(sfc_config** out);
SFC_API sfc_status sfc_config_load(const char* path, sfc_config** out);
SFC_API sfc_status sfc_config_parse(const char* json_text, sfc_config** out);
/* Keys: nodes, d, beam (0 = unbounded), requests, slots, k_max, threads. */
SFC_API sfc_status sfc_config_set_int(sfc_config* config, const char* key, long value);
SFC_API size_t sfc_config_seed_count(const sfc_config* config);
SFC_API sfc_status sfc_config_seed(const sfc_config* config, size_t index, uint64_t* out);
SFC_API sfc_status sfc_config_to_json(const sfc_config* config, char** out);
SFC_API void sfc_config_destroy(sfc_config* config);

/* Constellation built from a config. */
SFC_API sfc_status sfc_graph_create(const sfc_config* config, sfc_graph** out);
SFC_API int sfc_graph_node_count(const sfc_graph* graph);
SFC_API int sfc_graph_link_count(const sfc_graph* graph);
SFC_API sfc_status sfc_graph_to_json(const sfc_graph* graph, char** out);
SFC_API void sfc_graph_destroy(sfc_graph* graph);

/* Runs. A run accumulates slots; sfc_run_append moves another run's slots
 * into `into`. */
SFC_API sfc_status sfc_run_batch(const sfc_config* config, sfc_algorithm algorithm,
                                 uint64_t seed, sfc_run** out);
SFC_API sfc_status sfc_run_batch_workload(const sfc_config* config, sfc_algorithm algorithm,
                                          uint64_t seed, const char* workload_path,
                                          sfc_run** out);
SFC_API sfc_status sfc_run_online(const sfc_config* config, sfc_algorithm algorithm,
                                  uint64_t seed, sfc_run** out);
SFC_API sfc_status sfc_run_append(sfc_run* into, sfc_run* from);
SFC_API size_t sfc_run_slot_count(const sfc_run* run);
SFC_API sfc_status sfc_run_slot(const sfc_run* run, size_t index, sfc_slot_metrics* out);
SFC_API long sfc_run_check_count(const sfc_run* run);
SFC_API size_t sfc_run_violation_count(const sfc_run* run);
/* path NULL or "-" writes to stdout. */
SFC_API sfc_status sfc_run_emit_metrics(const sfc_run* run, sfc_format format, const char* path);
SFC_API sfc_status sfc_run_emit_trace(const sfc_run* run, sfc_format format, const char* path);
SFC_API sfc_status sfc_run_emit_costs(const sfc_run* run, sfc_format format, const char* path);
SFC_API sfc_status sfc_run_emit_timeline(const sfc_run* run, sfc_format format,
                                         const char* path);
SFC_API sfc_status sfc_run_emit_workload(const sfc_run* run, const char* path);
SFC_API void sfc_run_destroy(sfc_run* run);

/* Taguchi sweep over d and beam levels; NULL level arrays use 1, 2, 4, 8
 * and NULL m_values uses 10, 20, 30. */
SFC_API sfc_status sfc_run_taguchi(const sfc_config* config, uint64_t seed, const int* d_levels,
                                   size_t d_count, const int* b_levels, size_t b_count,
                                   const int* m_values, size_t m_count, int repetitions,
                                   sfc_taguchi** out);
SFC_API size_t sfc_taguchi_row_count(const sfc_taguchi* t);
SFC_API sfc_status sfc_taguchi_get_row(const sfc_taguchi* t, size_t index, sfc_taguchi_row* out);
SFC_API size_t sfc_taguchi_effect_count(const sfc_taguchi* t);
SFC_API sfc_status sfc_taguchi_get_effect(const sfc_taguchi* t, size_t index,
                                      sfc_taguchi_effect* out);
SFC_API sfc_status sfc_taguchi_emit(const sfc_taguchi* t, sfc_format format, const char* path);
SFC_API void sfc_taguchi_destroy(sfc_taguchi* t);

/* Runs the property suites; `failures` receives the number that failed. */
SFC_API sfc_status sfc_check(const sfc_config* config, uint64_t seed, sfc_check_callback callback,
                             void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* SFCGAME_SFCGAME_H */
