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


// extern "C" surface over the C++ core. Exceptions never cross this
// boundary; they are mapped to cm_status plus a thread-local message.

#include "cryptomine/cryptomine.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <sstream>
#include <streambuf>

#include "cryptomine/annotate.hpp"
#include "cryptomine/backoff.hpp"
#include "cryptomine/collect.hpp"
#include "cryptomine/errors.hpp"
#include "cryptomine/irc.hpp"
#include "cryptomine/pipeline.hpp"
#include "cryptomine/report.hpp"
#include "cryptomine/sanitize.hpp"
#include "cryptomine/series.hpp"
#include "cryptomine/stats.hpp"
#include "cryptomine/twitter.hpp"

struct cm_gazetteer {
  cryptomine::Gazetteer value;
};
struct cm_series {
  cryptomine::DailySeries value;
};
struct cm_market {
  cryptomine::MarketSeries value;
};
struct cm_report {
  cryptomine::CorrelationReport value;
};

namespace {

using namespace cryptomine;

thread_local std::string g_last_error;

cm_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return CM_ERR_IO;
    case ErrorCode::kInvalidArgument: return CM_ERR_INVALID_ARGUMENT;
    case ErrorCode::kUnparsableLine: return CM_ERR_UNPARSABLE_LINE;
    case ErrorCode::kMalformedRecord: return CM_ERR_MALFORMED_RECORD;
    case ErrorCode::kUnknownStage: return CM_ERR_UNKNOWN_STAGE;
    case ErrorCode::kStageDependencyViolation: return CM_ERR_STAGE_DEPENDENCY;
    case ErrorCode::kMalformedRow: return CM_ERR_MALFORMED_ROW;
    case ErrorCode::kDuplicateDate: return CM_ERR_DUPLICATE_DATE;
    case ErrorCode::kNegativeValue: return CM_ERR_NEGATIVE_VALUE;
    case ErrorCode::kEmptyOverlap: return CM_ERR_EMPTY_OVERLAP;
    case ErrorCode::kLengthMismatch: return CM_ERR_LENGTH_MISMATCH;
    case ErrorCode::kTooFewPoints: return CM_ERR_TOO_FEW_POINTS;
    case ErrorCode::kConstantSeries: return CM_ERR_CONSTANT_SERIES;
    case ErrorCode::kAborted: return CM_ERR_ABORTED;
  }
  return CM_ERR_INTERNAL;
}

cm_status fail(cm_status status, const std::string &message) {
  g_last_error = message;
  return status;
}

// Runs `body`, translating exceptions into a status.
template <typename F>
cm_status guarded(F &&body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const Error &e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc &) {
    return fail(CM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception &e) {
    return fail(CM_ERR_INTERNAL, e.what());
  }
}

#define CM_REQUIRE(cond)                                                   \
  do {                                                                     \
    if (!(cond)) return fail(CM_ERR_INVALID_ARGUMENT, "requires " #cond); \
  } while (0)

// Minimal streambuf over a C stdio handle.
class FileBuf : public std::streambuf {
 public:
  explicit FileBuf(FILE *f) : f_(f) { setg(in_, in_, in_); }

 protected:
  int_type underflow() override {
    size_t n = std::fread(in_, 1, sizeof(in_), f_);
    if (n == 0) return traits_type::eof();
    setg(in_, in_, in_ + n);
    return traits_type::to_int_type(in_[0]);
  }
  int_type overflow(int_type ch) override {
    if (traits_type::eq_int_type(ch, traits_type::eof())) return traits_type::not_eof(ch);
    return std::fputc(ch, f_) == EOF ? traits_type::eof() : ch;
  }
  std::streamsize xsputn(const char *s, std::streamsize n) override {
    return std::streamsize(std::fwrite(s, 1, size_t(n), f_));
  }
  int sync() override { return std::fflush(f_) == 0 ? 0 : -1; }

 private:
  FILE *f_;
  char in_[1 << 16];
};

std::ifstream open_in(const char *path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, std::string("cannot open '") + path + "'");
  return in;
}

std::ofstream open_out(const char *path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, std::string("cannot create '") + path + "'");
  return out;
}

std::vector<std::string> split_list(const char *csv) {
  std::vector<std::string> out;
  if (csv == nullptr) return out;
  std::string_view s(csv);
  size_t start = 0;
  while (start <= s.size()) {
    size_t comma = s.find(',', start);
    std::string_view item = s.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

KeywordMatcher matcher_from(const char *keywords, int substring) {
  auto list = split_list(keywords);
  if (list.empty()) list.push_back("bitcoin");
  return KeywordMatcher(std::move(list), substring != 0);
}

Pipeline pipeline_from(const char *stages) {
  if (stages == nullptr) return Pipeline::standard();
  auto names = split_list(stages);
  return Pipeline::from_names(names);
}

char *copy_string(const std::string &s) {
  char *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

BackoffPolicy policy_from(const cm_backoff_policy &p) {
  BackoffPolicy out;
  out.mode = FailureMode(p.mode);
  out.base_delay = p.base_delay;
  out.factor = p.factor;
  out.cap = p.cap;
  out.jitter_seed = p.jitter_seed;
  out.max_jitter = p.max_jitter;
  return out;
}

bool valid_mode(cm_failure_mode m) {
  return m == CM_FAILURE_NETWORK || m == CM_FAILURE_HTTP || m == CM_FAILURE_RATE_LIMITED;
}

}  // namespace

extern "C" {

const char *cm_status_name(cm_status status) {
  switch (status) {
    case CM_OK: return "Ok";
    case CM_ERR_INTERNAL: return "InternalError";
    default: break;
  }
  for (int c = 0; c <= int(ErrorCode::kAborted); ++c) {
    if (to_status(ErrorCode(c)) == status) return error_name(ErrorCode(c));
  }
  return "Unknown";
}

const char *cm_last_error(void) { return g_last_error.c_str(); }

const char *cm_version(void) { return "0.1.0"; }

void cm_string_free(char *s) { std::free(s); }

cm_status cm_sanitize_line(const char *line, size_t len, char *out, size_t *replacements,
                           size_t *malformed) {
  CM_REQUIRE(line != nullptr || len == 0);
  CM_REQUIRE(out != nullptr || len == 0);
  return guarded([&] {
    std::string buf(line, len);
    LineCounts c = sanitize_line_inplace(buf);
    if (len > 0) std::memcpy(out, buf.data(), len);
    if (replacements) *replacements = c.replacements;
    if (malformed) *malformed = c.malformed;
    return CM_OK;
  });
}

cm_status cm_sanitize_stream(FILE *in, FILE *out, cm_sanitize_stats *stats) {
  CM_REQUIRE(in != nullptr && out != nullptr);
  SanitizeStats progress;
  cm_status st = guarded([&] {
    FileBuf inbuf(in), outbuf(out);
    std::istream is(&inbuf);
    std::ostream os(&outbuf);
    sanitize_stream(is, os, &progress);
    os.flush();
    if (!os || std::ferror(out)) throw Error(ErrorCode::kIo, "write failed");
    if (std::ferror(in)) throw Error(ErrorCode::kIo, "read failed");
    return CM_OK;
  });
  if (stats) {
    *stats = {progress.lines_in, progress.lines_out, progress.replacements,
              progress.malformed_escapes};
  }
  return st;
}

cm_status cm_irc_ingest_file(const cm_irc_options *options, cm_irc_stats *stats) {
  CM_REQUIRE(options != nullptr && options->in_path && options->out_path && options->channel);
  IrcIngestStats progress;
  cm_status st = guarded([&] {
    IrcIngestOptions opts;
    opts.channel = options->channel;
    if (options->stream_id) opts.stream_id = options->stream_id;
    auto offset = parse_utc_offset(options->tz ? options->tz : "UTC");
    if (!offset) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("unsupported timezone '") + options->tz +
                      "' (use UTC or a fixed offset like -04:00)");
    }
    opts.utc_offset = *offset;
    opts.strict = options->strict != 0;
    std::ifstream in = open_in(options->in_path);
    std::ofstream out = open_out(options->out_path);
    ingest_log(in, opts, [&](Message &&m) { out << to_json_line(m) << '\n'; }, progress);
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "write failed");
    return CM_OK;
  });
  if (stats) {
    *stats = {progress.lines,           progress.parsed,     progress.messages,
              progress.dropped_network, progress.unparsable, progress.blank};
  }
  return st;
}

cm_status cm_tweets_ingest_file(const cm_tweet_options *options, cm_tweet_stats *stats) {
  CM_REQUIRE(options != nullptr && options->in_path && options->out_path);
  TweetIngestStats progress;
  cm_status st = guarded([&] {
    TweetIngester ingester(matcher_from(options->keywords, options->substring),
                           options->strict != 0);
    std::ifstream in = open_in(options->in_path);
    std::ofstream out = open_out(options->out_path);
    try {
      ingester.ingest(in, [&](Message &&m) { out << to_json_line(m) << '\n'; });
    } catch (...) {
      progress = ingester.stats();
      throw;
    }
    progress = ingester.stats();
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "write failed");
    return CM_OK;
  });
  if (stats) {
    *stats = {progress.lines,      progress.parsed,  progress.malformed,
              progress.duplicates, progress.matched, progress.replacements};
  }
  return st;
}

cm_status cm_keywords_match(const char *text, const char *const *hashtags, size_t hashtag_count,
                            const char *const *keywords, size_t keyword_count, int substring,
                            int *result) {
  CM_REQUIRE(text != nullptr && result != nullptr);
  CM_REQUIRE(keywords != nullptr && keyword_count > 0);
  CM_REQUIRE(hashtags != nullptr || hashtag_count == 0);
  return guarded([&] {
    std::vector<std::string> tags(hashtags, hashtags + hashtag_count);
    std::vector<std::string> kws(keywords, keywords + keyword_count);
    *result = matches_keywords(text, tags, kws, substring != 0) ? 1 : 0;
    return CM_OK;
  });
}

cm_status cm_backoff_default_policy(cm_failure_mode mode, cm_backoff_policy *policy) {
  CM_REQUIRE(policy != nullptr && valid_mode(mode));
  BackoffPolicy p = BackoffPolicy::defaults(FailureMode(mode));
  *policy = {mode, p.base_delay, p.factor, p.cap, p.jitter_seed, p.max_jitter};
  return CM_OK;
}

cm_status cm_backoff_next(const cm_backoff_policy *policy, cm_backoff_state *state, int success,
                          cm_failure_mode mode, double *delay) {
  CM_REQUIRE(policy != nullptr && state != nullptr && delay != nullptr);
  CM_REQUIRE(success != 0 || valid_mode(mode));
  return guarded([&] {
    BackoffPolicy p = policy_from(*policy);
    p.validate();
    BackoffState s;
    s.consecutive_failures = state->consecutive_failures;
    if (state->has_last_mode) s.last_mode = FailureMode(state->last_mode);
    DelayDecision d =
        next_delay(p, s, success ? Outcome::Success() : Outcome::Failure(FailureMode(mode)));
    state->consecutive_failures = d.state.consecutive_failures;
    state->has_last_mode = d.state.last_mode.has_value();
    state->last_mode = d.state.last_mode ? cm_failure_mode(*d.state.last_mode) : CM_FAILURE_NETWORK;
    *delay = d.delay;
    return CM_OK;
  });
}

cm_status cm_collect_simulated(const cm_collect_options *options, cm_collect_stats *stats) {
  CM_REQUIRE(options != nullptr && options->records_path != nullptr);
  return guarded([&] {
    std::vector<std::string> records;
    {
      std::ifstream in = open_in(options->records_path);
      std::string line;
      while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) records.push_back(line);
      }
    }
    std::vector<FaultToken> script;
    if (options->fault_script_path != nullptr) {
      std::ifstream in = open_in(options->fault_script_path);
      script = parse_fault_script(in);
    }
    CollectOptions opts;
    opts.matcher = matcher_from(options->keywords, options->substring);
    if (options->max_consecutive_failures > 0) {
      opts.max_consecutive_failures = options->max_consecutive_failures;
    }
    for (auto &p : opts.policies) {
      p.jitter_seed = options->jitter_seed;
      if (options->disable_jitter) p.max_jitter = 0.0;
    }
    std::ofstream out;
    if (options->out_path != nullptr) out = open_out(options->out_path);
    ScriptedSource source(std::move(records), std::move(script));
    CollectStats st = collect(source, [&](Message &&m) {
      if (out.is_open()) out << to_json_line(m) << '\n';
    }, opts);
    if (stats) {
      *stats = {st.received, st.matched, st.reconnects, st.total_backoff_seconds,
                st.aborted ? 1 : 0};
    }
    if (st.aborted) {
      return fail(CM_ERR_ABORTED, "aborted after " +
                                      std::to_string(opts.max_consecutive_failures) +
                                      " consecutive failures");
    }
    return CM_OK;
  });
}

cm_status cm_gazetteer_load(const char *path, cm_gazetteer **out) {
  CM_REQUIRE(path != nullptr && out != nullptr);
  *out = nullptr;
  return guarded([&] {
    std::ifstream in = open_in(path);
    *out = new cm_gazetteer{Gazetteer::load(in)};
    return CM_OK;
  });
}

size_t cm_gazetteer_size(const cm_gazetteer *gazetteer) {
  return gazetteer ? gazetteer->value.size() : 0;
}

void cm_gazetteer_free(cm_gazetteer *gazetteer) { delete gazetteer; }

cm_status cm_annotate_file(const char *in_path, const char *out_path,
                           const cm_gazetteer *gazetteer, const char *stages,
                           cm_annotate_stats *stats) {
  CM_REQUIRE(in_path != nullptr && out_path != nullptr);
  return guarded([&] {
    Pipeline pipeline = pipeline_from(stages);
    Resources res{gazetteer ? &gazetteer->value : nullptr};
    std::ifstream in = open_in(in_path);
    std::ofstream out = open_out(out_path);
    AnnotateStats st = annotate_messages(in, out, pipeline, res);
    if (stats) *stats = {st.documents, st.annotations};
    return CM_OK;
  });
}

cm_status cm_annotate_text(const char *doc_id, const char *text, const cm_gazetteer *gazetteer,
                           const char *stages, char **json) {
  CM_REQUIRE(text != nullptr && json != nullptr);
  *json = nullptr;
  return guarded([&] {
    Pipeline pipeline = pipeline_from(stages);
    Resources res{gazetteer ? &gazetteer->value : nullptr};
    AnnotatedDocument doc = pipeline.run(Document(doc_id ? doc_id : "", text), res);
    *json = copy_string(doc.to_json());
    return CM_OK;
  });
}

cm_status cm_series_from_messages(const char *path, const char *stream_id, cm_series **out) {
  CM_REQUIRE(path != nullptr && out != nullptr);
  *out = nullptr;
  return guarded([&] {
    std::ifstream in = open_in(path);
    std::optional<std::string> only;
    if (stream_id != nullptr && *stream_id != '\0') only = stream_id;
    auto all = aggregate_messages(in, only);
    if (all.size() > 1) {
      std::string ids;
      for (const auto &[id, s] : all) ids += (ids.empty() ? "" : ", ") + id;
      throw Error(ErrorCode::kInvalidArgument,
                  "messages contain several streams (" + ids + "); select one");
    }
    DailySeries s = all.empty() ? DailySeries{} : std::move(all.begin()->second);
    *out = new cm_series{std::move(s)};
    return CM_OK;
  });
}

cm_status cm_series_load_csv(const char *path, const char *stream_id, cm_series **out) {
  CM_REQUIRE(path != nullptr && out != nullptr);
  *out = nullptr;
  return guarded([&] {
    std::ifstream in = open_in(path);
    *out = new cm_series{read_series_csv(in, stream_id ? stream_id : "")};
    return CM_OK;
  });
}

cm_status cm_series_write_csv(const cm_series *series, const char *path) {
  CM_REQUIRE(series != nullptr && path != nullptr);
  return guarded([&] {
    std::ofstream out = open_out(path);
    write_series_csv(series->value, out);
    return CM_OK;
  });
}

cm_status cm_series_detect_gaps(cm_series *series, double theta, size_t window) {
  CM_REQUIRE(series != nullptr);
  return guarded([&] {
    GapParams params{theta, window};
    params.validate();
    series->value = detect_gaps(std::move(series->value), params);
    return CM_OK;
  });
}

uint64_t cm_series_total(const cm_series *series) { return series ? series->value.total() : 0; }

size_t cm_series_days(const cm_series *series) { return series ? series->value.counts.size() : 0; }

size_t cm_series_outage_days(const cm_series *series) {
  if (series == nullptr) return 0;
  size_t n = 0;
  for (const auto &[d, f] : series->value.flags) n += f == DayFlag::kOutage;
  return n;
}

const char *cm_series_stream_id(const cm_series *series) {
  return series ? series->value.stream_id.c_str() : "";
}

void cm_series_free(cm_series *series) { delete series; }

cm_status cm_market_load_csv(const char *path, cm_market_metric metric, cm_market **out) {
  CM_REQUIRE(path != nullptr && out != nullptr);
  CM_REQUIRE(metric == CM_METRIC_PRICE_USD || metric == CM_METRIC_VOLUME_USD);
  *out = nullptr;
  return guarded([&] {
    std::ifstream in = open_in(path);
    *out = new cm_market{load_market_csv(in, MarketMetric(metric))};
    return CM_OK;
  });
}

size_t cm_market_days(const cm_market *market) { return market ? market->value.values.size() : 0; }

void cm_market_free(cm_market *market) { delete market; }

cm_status cm_pearson(const double *x, const double *y, size_t n, double *r) {
  CM_REQUIRE((x != nullptr && y != nullptr) || n == 0);
  CM_REQUIRE(r != nullptr);
  return guarded([&] {
    *r = pearson(std::span<const double>(x, n), std::span<const double>(y, n));
    return CM_OK;
  });
}

cm_status cm_report_build(const cm_series *const *series, size_t count, const cm_market *price,
                          const cm_market *volume, int exclude_outages, cm_report **out) {
  CM_REQUIRE(series != nullptr && count > 0 && price != nullptr && volume != nullptr);
  CM_REQUIRE(out != nullptr);
  *out = nullptr;
  return guarded([&] {
    std::vector<DailySeries> all;
    for (size_t i = 0; i < count; ++i) {
      if (series[i] == nullptr) throw Error(ErrorCode::kInvalidArgument, "null series");
      all.push_back(series[i]->value);
    }
    *out = new cm_report{correlation_report(
        all, price->value, volume->value,
        exclude_outages ? AlignPolicy::kExcludeOutages : AlignPolicy::kAllDays)};
    return CM_OK;
  });
}

cm_status cm_report_load_json(const char *path, cm_report **out) {
  CM_REQUIRE(path != nullptr && out != nullptr);
  *out = nullptr;
  return guarded([&] {
    std::ifstream in = open_in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    *out = new cm_report{report_from_json(buf.str())};
    return CM_OK;
  });
}

cm_status cm_report_write_json(const cm_report *report, const char *path) {
  CM_REQUIRE(report != nullptr && path != nullptr);
  return guarded([&] {
    std::ofstream out = open_out(path);
    out << report_to_json(report->value);
    if (!out) throw Error(ErrorCode::kIo, "write failed");
    return CM_OK;
  });
}

cm_status cm_report_render(const cm_report *report, cm_table_format format, char **text) {
  CM_REQUIRE(report != nullptr && text != nullptr);
  CM_REQUIRE(format == CM_FORMAT_TSV || format == CM_FORMAT_MARKDOWN);
  *text = nullptr;
  return guarded([&] {
    if (report->value.rows.empty()) throw Error(ErrorCode::kInvalidArgument, "empty report");
    *text = copy_string(render_table(
        report->value, format == CM_FORMAT_TSV ? TableFormat::kTsv : TableFormat::kMarkdown));
    return CM_OK;
  });
}

size_t cm_report_rows(const cm_report *report) { return report ? report->value.rows.size() : 0; }

int cm_report_has_undefined(const cm_report *report) {
  return report && report->value.has_undefined() ? 1 : 0;
}

cm_status cm_report_row(const cm_report *report, size_t index, cm_report_row_info *row) {
  CM_REQUIRE(report != nullptr && row != nullptr);
  CM_REQUIRE(index < report->value.rows.size());
  const ReportRow &r = report->value.rows[index];
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  row->stream_id = r.stream_id.c_str();
  row->total_messages = r.total_messages;
  row->r_volume = r.volume.r.value_or(nan);
  row->r_price = r.price.r.value_or(nan);
  row->volume_error = r.volume.error ? to_status(*r.volume.error) : CM_OK;
  row->price_error = r.price.error ? to_status(*r.price.error) : CM_OK;
  row->n_days_volume = r.volume.n_days;
  row->n_days_price = r.price.n_days;
  return CM_OK;
}

void cm_report_free(cm_report *report) { delete report; }

cm_status cm_plot_series_write(const cm_series *series, const cm_market *market, const char *path,
                               size_t *rows) {
  CM_REQUIRE(series != nullptr && market != nullptr && path != nullptr);
  return guarded([&] {
    if (series->value.counts.empty()) throw Error(ErrorCode::kEmptyOverlap, "empty series");
    std::ostringstream buf;
    size_t n = emit_plot_series(series->value, market->value, buf);
    std::ofstream out = open_out(path);
    out << buf.str();
    if (!out) throw Error(ErrorCode::kIo, "write failed");
    if (rows) *rows = n;
    return CM_OK;
  });
}

cm_status cm_run_all(const char *config_path, cm_run_result *result, char **notes) {
  CM_REQUIRE(config_path != nullptr);
  if (notes) *notes = nullptr;
  return guarded([&] {
    RunAllResult r = run_all(config_path);
    if (result) *result = {r.partial ? 1 : 0, r.report.rows.size(), r.outputs.size()};
    if (notes) {
      std::string joined;
      for (const auto &n : r.notes) joined += n + "\n";
      *notes = copy_string(joined);
    }
    return CM_OK;
  });
}

}  // extern "C"
