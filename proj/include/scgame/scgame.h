// Copyright 2026 The scgame Authors
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

/* C interface to the scgame library. All objects are opaque handles; every
 * fallible call returns an scg_status and leaves a message retrievable with
 * scg_last_error() on the calling thread. Strings returned through char**
 * are owned by the caller and released with scg_string_free(). */
#ifndef SCGAME_SCGAME_H_
#define SCGAME_SCGAME_H_

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define SCG_API __attribute__((visibility("default")))
#else
#define SCG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum scg_status {
  SCG_OK = 0,
  SCG_ERR_CONFIG = 1,
  SCG_ERR_EPISODE = 2,
  SCG_ERR_FIXTURE = 3,
  SCG_ERR_CALIBRATION = 4,
  SCG_ERR_IO = 5,
  SCG_ERR_ARGUMENT = 6,
  SCG_ERR_INTERNAL = 7
} scg_status;

enum {
  SCG_CLASS_NORMAL = 0,
  SCG_CLASS_DANGER = 1,
  SCG_CLASS_FULL_STOP = 2,
  SCG_CLASS_FAILED = 3
};

enum { SCG_LEADER_AV = 0, SCG_LEADER_HV = 1 };

typedef struct scg_config scg_config;
typedef struct scg_episode scg_episode;

typedef struct scg_result {
  int classification;
  int has_arrival;
  double tta; /* -1 when the lagging vehicle stopped */
  int leader;
  double f_end;
  double lag_speed;
  double lag_distance;
  int aeb;
  int collision;
  int overspeed;
  int timeout;
  int aborted;
  int decel_decisions;
  size_t steps;
} scg_result;

SCG_API const char* scg_version(void);
SCG_API const char* scg_last_error(void);
SCG_API const char* scg_status_name(scg_status s);
SCG_API const char* scg_class_name(int classification);
SCG_API void scg_string_free(char* s);

/* Configuration */
SCG_API scg_status scg_config_new(scg_config** out);
SCG_API scg_status scg_config_load(const char* path, scg_config** out);
SCG_API scg_status scg_config_parse(const char* yaml, scg_config** out);
SCG_API scg_status scg_config_clone(const scg_config* cfg, scg_config** out);
/* "section.key=value", e.g. "scenario.policy=rss". */
SCG_API scg_status scg_config_set(scg_config* cfg, const char* assignment);
SCG_API scg_status scg_config_serialize(const scg_config* cfg, char** out_yaml);
SCG_API scg_status scg_config_hash(const scg_config* cfg, char** out_hex);
SCG_API void scg_config_free(scg_config* cfg);

/* Episodes */
SCG_API scg_status scg_episode_new(const scg_config* cfg, scg_episode** out);
/* Advances one step; *running is 0 once the episode has ended. */
SCG_API scg_status scg_episode_step(scg_episode* ep, int* running);
/* Only affects episodes whose driver model is "external". */
SCG_API scg_status scg_episode_set_control(scg_episode* ep, double throttle, double brake);
SCG_API scg_status scg_episode_abort(scg_episode* ep);
/* Runs to completion (if needed) and fills the result. */
SCG_API scg_status scg_episode_run(scg_episode* ep, scg_result* out);
SCG_API scg_status scg_episode_trace(scg_episode* ep, char** out_ndjson);
SCG_API scg_status scg_episode_write_trace(scg_episode* ep, const char* path);
SCG_API scg_status scg_episode_steps_tsv(scg_episode* ep, char** out_tsv);
SCG_API scg_status scg_episode_summary(scg_episode* ep, char** out_line);
SCG_API void scg_episode_free(scg_episode* ep);

/* Batch over n sampled scenarios for each policy in a comma-separated list
 * ("sc,nosc,rss"); all policies see the same scenarios. Tables are written to
 * out_dir (if non-empty) and a printable report is returned. */
SCG_API scg_status scg_batch_run(const scg_config* cfg, const char* policies, size_t n,
                                 uint64_t seed, int threads, const char* out_dir,
                                 char** out_report);

/* Random search over game weights; the results table goes to out_path. */
SCG_API scg_status scg_calibrate(const scg_config* cfg, int candidates, size_t budget,
                                 uint64_t seed, int threads, const char* out_path,
                                 char** out_report);

/* Replays the pinned cases in dir; SCG_ERR_FIXTURE if any signature or
 * golden trace fails. */
SCG_API scg_status scg_fixtures_run(const char* dir, const char* out_dir, int regenerate,
                                    char** out_report);

/* Interactive session server on 127.0.0.1:port. max_sessions = 0 serves
 * forever. */
SCG_API scg_status scg_serve(const scg_config* cfg, int port, const char* record_dir,
                             int max_sessions, double speedup);

/* Re-runs a recorded interactive session headless. */
SCG_API scg_status scg_replay(const char* session_log_path, const char* trace_out,
                              scg_result* out);

#ifdef __cplusplus
}
#endif

#endif /* SCGAME_SCGAME_H_ */
