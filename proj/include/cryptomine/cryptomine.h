// Copyright 2026 The Cryptomine Authors.
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


/*
 * C interface to the cryptomine text-mining pipeline.
 *
 * Every function returns a cm_status. On failure a description of the last
 * error on the calling thread is available from cm_last_error(). Objects are
 * opaque handles released with their matching *_free function; strings
 * returned through char** are released with cm_string_free.
 */

#ifndef CRYPTOMINE_CRYPTOMINE_H_
#define CRYPTOMINE_CRYPTOMINE_H_

#include <stddef.h>
#include <stdint.h>
#include <stdio.h>

#if defined(_WIN32)
#define CM_API __declspec(dllexport)
#elif defined(CRYPTOMINE_BUILDING_LIBRARY)
#define CM_API __attribute__((visibility("default")))
#else
#define CM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cm_status {
  CM_OK = 0,
  CM_ERR_IO = 1,
  CM_ERR_INVALID_ARGUMENT = 2,
  CM_ERR_UNPARSABLE_LINE = 3,
  CM_ERR_MALFORMED_RECORD = 4,
  CM_ERR_UNKNOWN_STAGE = 5,
  CM_ERR_STAGE_DEPENDENCY = 6,
  CM_ERR_MALFORMED_ROW = 7,
  CM_ERR_DUPLICATE_DATE = 8,
  CM_ERR_NEGATIVE_VALUE = 9,
  CM_ERR_EMPTY_OVERLAP = 10,
  CM_ERR_LENGTH_MISMATCH = 11,
  CM_ERR_TOO_FEW_POINTS = 12,
  CM_ERR_CONSTANT_SERIES = 13,
  CM_ERR_ABORTED = 14,
  CM_ERR_INTERNAL = 99
} cm_status;

/* "ConstantSeries", "EmptyOverlap", ... ; "Ok" for CM_OK. */
CM_API const char *cm_status_name(cm_status status);
/* Message of the last failed call on this thread, "" if none. */
CM_API const char *cm_last_error(void);
CM_API const char *cm_version(void);
CM_API void cm_string_free(char *s);

/* ---- sanitize ---------------------------------------------------------- */

typedef struct cm_sanitize_stats {
  uint64_t lines_in;
  uint64_t lines_out;
  uint64_t replacements;
  uint64_t malformed_escapes;
} cm_sanitize_stats;

/* Sanitizes `len` bytes of `line` into `out` (which must hold `len` bytes;
 * it may alias `line`). */
CM_API cm_status cm_sanitize_line(const char *line, size_t len, char *out,
                                  size_t *replacements, size_t *malformed);
/* Filters `in` to `out` line by line. `stats` is filled even on failure. */
CM_API cm_status cm_sanitize_stream(FILE *in, FILE *out, cm_sanitize_stats *stats);

/* ---- IRC logs ---------------------------------------------------------- */

typedef struct cm_irc_options {
  const char *in_path;
  const char *out_path;  /* Message JSONL */
  const char *channel;   /* "#bitcoin" */
  const char *stream_id; /* NULL or "" for "irc:<channel>" */
  const char *tz;        /* NULL, "UTC" or a fixed offset such as "-04:00" */
  int strict;
} cm_irc_options;

typedef struct cm_irc_stats {
  uint64_t lines;
  uint64_t parsed;
  uint64_t messages;
  uint64_t dropped_network;
  uint64_t unparsable;
  uint64_t blank;
} cm_irc_stats;

CM_API cm_status cm_irc_ingest_file(const cm_irc_options *options, cm_irc_stats *stats);

/* ---- tweets ------------------------------------------------------------ */

typedef struct cm_tweet_options {
  const char *in_path;
  const char *out_path;  /* Message JSONL */
  const char *keywords;  /* comma separated; NULL or "" for "bitcoin" */
  int substring;
  int strict;
} cm_tweet_options;

typedef struct cm_tweet_stats {
  uint64_t lines;
  uint64_t parsed;
  uint64_t malformed;
  uint64_t duplicates;
  uint64_t matched;
  uint64_t replacements;
} cm_tweet_stats;

CM_API cm_status cm_tweets_ingest_file(const cm_tweet_options *options, cm_tweet_stats *stats);

/* `*result` is 1 when any keyword matches the text as a whole word (or
 * substring) or equals a hashtag, case-insensitively. */
CM_API cm_status cm_keywords_match(const char *text, const char *const *hashtags,
                                   size_t hashtag_count, const char *const *keywords,
                                   size_t keyword_count, int substring, int *result);

/* ---- backoff ----------------------------------------------------------- */

typedef enum cm_failure_mode {
  CM_FAILURE_NETWORK = 0,
  CM_FAILURE_HTTP = 1,
  CM_FAILURE_RATE_LIMITED = 2
} cm_failure_mode;

typedef struct cm_backoff_policy {
  cm_failure_mode mode;
  double base_delay;
  double factor;
  double cap;
  uint64_t jitter_seed;
  double max_jitter; /* 0 disables jitter */
} cm_backoff_policy;

typedef struct cm_backoff_state {
  uint32_t consecutive_failures;
  int has_last_mode;
  cm_failure_mode last_mode;
} cm_backoff_state;

CM_API cm_status cm_backoff_default_policy(cm_failure_mode mode, cm_backoff_policy *policy);
/* success != 0 resets the state and yields 0; otherwise the failure `mode`
 * advances the state and yields the next delay in seconds. */
CM_API cm_status cm_backoff_next(const cm_backoff_policy *policy, cm_backoff_state *state,
                                 int success, cm_failure_mode mode, double *delay);

typedef struct cm_collect_options {
  const char *records_path;      /* tweet JSONL replayed as the stream */
  const char *fault_script_path; /* NULL for no faults */
  const char *out_path;          /* Message JSONL, may be NULL */
  const char *keywords;
  int substring;
  uint32_t max_consecutive_failures; /* 0 selects 10 */
  uint64_t jitter_seed;
  int disable_jitter;
} cm_collect_options;

typedef struct cm_collect_stats {
  uint64_t received;
  uint64_t matched;
  uint64_t reconnects;
  double total_backoff_seconds;
  int aborted;
} cm_collect_stats;

/* Returns CM_ERR_ABORTED (with stats filled) when the failure limit hits. */
CM_API cm_status cm_collect_simulated(const cm_collect_options *options, cm_collect_stats *stats);

/* ---- annotation -------------------------------------------------------- */

typedef struct cm_gazetteer cm_gazetteer;

CM_API cm_status cm_gazetteer_load(const char *path, cm_gazetteer **out);
CM_API size_t cm_gazetteer_size(const cm_gazetteer *gazetteer);
CM_API void cm_gazetteer_free(cm_gazetteer *gazetteer);

typedef struct cm_annotate_stats {
  uint64_t documents;
  uint64_t annotations;
} cm_annotate_stats;

/* `stages` is comma separated ("tokenize,gazetteer,entity"); NULL selects
 * that default. `gazetteer` may be NULL. */
CM_API cm_status cm_annotate_file(const char *in_path, const char *out_path,
                                  const cm_gazetteer *gazetteer, const char *stages,
                                  cm_annotate_stats *stats);

/* Annotates one text and returns the AnnotatedDocument JSON. */
CM_API cm_status cm_annotate_text(const char *doc_id, const char *text,
                                  const cm_gazetteer *gazetteer, const char *stages,
                                  char **json);

/* ---- daily series ------------------------------------------------------ */

typedef struct cm_series cm_series;

/* Buckets a Message JSONL file. With stream_id NULL the file must hold a
 * single stream. */
CM_API cm_status cm_series_from_messages(const char *path, const char *stream_id,
                                         cm_series **out);
/* Reads "date,count,flag" CSV. */
CM_API cm_status cm_series_load_csv(const char *path, const char *stream_id, cm_series **out);
CM_API cm_status cm_series_write_csv(const cm_series *series, const char *path);
CM_API cm_status cm_series_detect_gaps(cm_series *series, double theta, size_t window);
CM_API uint64_t cm_series_total(const cm_series *series);
CM_API size_t cm_series_days(const cm_series *series);
CM_API size_t cm_series_outage_days(const cm_series *series);
CM_API const char *cm_series_stream_id(const cm_series *series);
CM_API void cm_series_free(cm_series *series);

typedef enum cm_market_metric { CM_METRIC_PRICE_USD = 0, CM_METRIC_VOLUME_USD = 1 } cm_market_metric;

typedef struct cm_market cm_market;

CM_API cm_status cm_market_load_csv(const char *path, cm_market_metric metric, cm_market **out);
CM_API size_t cm_market_days(const cm_market *market);
CM_API void cm_market_free(cm_market *market);

/* ---- statistics and reports ------------------------------------------- */

CM_API cm_status cm_pearson(const double *x, const double *y, size_t n, double *r);

typedef struct cm_report cm_report;

typedef enum cm_table_format { CM_FORMAT_TSV = 0, CM_FORMAT_MARKDOWN = 1 } cm_table_format;

CM_API cm_status cm_report_build(const cm_series *const *series, size_t count,
                                 const cm_market *price, const cm_market *volume,
                                 int exclude_outages, cm_report **out);
CM_API cm_status cm_report_load_json(const char *path, cm_report **out);
CM_API cm_status cm_report_write_json(const cm_report *report, const char *path);
CM_API cm_status cm_report_render(const cm_report *report, cm_table_format format, char **text);
CM_API size_t cm_report_rows(const cm_report *report);
/* 1 when any correlation cell is undefined. */
CM_API int cm_report_has_undefined(const cm_report *report);
typedef struct cm_report_row_info {
  const char *stream_id; /* valid while the report lives */
  uint64_t total_messages;
  double r_volume;         /* NaN when undefined */
  double r_price;          /* NaN when undefined */
  cm_status volume_error;  /* CM_OK when defined */
  cm_status price_error;
  size_t n_days_volume;
  size_t n_days_price;
} cm_report_row_info;

CM_API cm_status cm_report_row(const cm_report *report, size_t index, cm_report_row_info *row);
CM_API void cm_report_free(cm_report *report);

CM_API cm_status cm_plot_series_write(const cm_series *series, const cm_market *market,
                                      const char *path, size_t *rows);

/* ---- end to end -------------------------------------------------------- */

typedef struct cm_run_result {
  int partial;
  size_t rows;
  size_t outputs;
} cm_run_result;

/* Runs the JSON configuration; see README. `notes` (optional) receives a
 * newline separated list of non-fatal problems. */
CM_API cm_status cm_run_all(const char *config_path, cm_run_result *result, char **notes);

#ifdef __cplusplus
}
#endif

#endif /* CRYPTOMINE_CRYPTOMINE_H_ */
