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


// Command-line front end. Links only the C interface of libcryptomine.
//
// Exit codes: 0 success, 1 partial (skipped lines, undefined correlations),
// 2 fatal, 64 usage error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cryptomine/cryptomine.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitFatal = 2;
constexpr int kExitUsage = 64;

int report_failure(const char *what, cm_status st) {
  const char *detail = cm_last_error();
  std::cerr << "cryptomine " << what << ": " << (*detail != '\0' ? detail : cm_status_name(st))
            << '\n';
  return st == CM_ERR_INVALID_ARGUMENT ? kExitUsage : kExitFatal;
}

template <typename T, void (*Free)(T *)>
struct Deleter {
  void operator()(T *p) const { Free(p); }
};
using SeriesPtr = std::unique_ptr<cm_series, Deleter<cm_series, cm_series_free>>;
using MarketPtr = std::unique_ptr<cm_market, Deleter<cm_market, cm_market_free>>;
using ReportPtr = std::unique_ptr<cm_report, Deleter<cm_report, cm_report_free>>;
using GazetteerPtr = std::unique_ptr<cm_gazetteer, Deleter<cm_gazetteer, cm_gazetteer_free>>;

struct CString {
  char *p = nullptr;
  ~CString() { cm_string_free(p); }
};

std::string join(const std::vector<std::string> &items) {
  std::string out;
  for (const auto &s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

// ---- subcommands ---------------------------------------------------------

struct SanitizeArgs {
  bool stats = false;
};

int run_sanitize(const SanitizeArgs &a) {
  cm_sanitize_stats st{};
  cm_status rc = cm_sanitize_stream(stdin, stdout, &st);
  if (a.stats) {
    std::fprintf(stderr, "lines_in=%llu\nlines_out=%llu\nreplacements=%llu\nmalformed_escapes=%llu\n",
                 (unsigned long long)st.lines_in, (unsigned long long)st.lines_out,
                 (unsigned long long)st.replacements, (unsigned long long)st.malformed_escapes);
  }
  if (rc != CM_OK) {
    report_failure("sanitize", rc);
    return kExitFatal;
  }
  return kExitOk;
}

struct IrcArgs {
  std::string channel, in, out, tz = "UTC", stream_id;
  bool strict = false;
};

int run_parse_irc(const IrcArgs &a) {
  cm_irc_options opts{a.in.c_str(), a.out.c_str(), a.channel.c_str(),
                      a.stream_id.empty() ? nullptr : a.stream_id.c_str(), a.tz.c_str(),
                      a.strict ? 1 : 0};
  cm_irc_stats st{};
  cm_status rc = cm_irc_ingest_file(&opts, &st);
  std::fprintf(stderr, "lines=%llu parsed=%llu messages=%llu dropped_network=%llu unparsable=%llu blank=%llu\n",
               (unsigned long long)st.lines, (unsigned long long)st.parsed,
               (unsigned long long)st.messages, (unsigned long long)st.dropped_network,
               (unsigned long long)st.unparsable, (unsigned long long)st.blank);
  if (rc != CM_OK) return report_failure("parse-irc", rc);
  return st.unparsable > 0 ? kExitPartial : kExitOk;
}

struct TweetArgs {
  std::string in, out;
  std::vector<std::string> keywords{"bitcoin"};
  bool substring = false, strict = false;
};

int run_ingest_tweets(const TweetArgs &a) {
  std::string kw = join(a.keywords);
  cm_tweet_options opts{a.in.c_str(), a.out.c_str(), kw.c_str(), a.substring ? 1 : 0,
                        a.strict ? 1 : 0};
  cm_tweet_stats st{};
  cm_status rc = cm_tweets_ingest_file(&opts, &st);
  std::fprintf(stderr, "lines=%llu parsed=%llu malformed=%llu duplicates=%llu matched=%llu replacements=%llu\n",
               (unsigned long long)st.lines, (unsigned long long)st.parsed,
               (unsigned long long)st.malformed, (unsigned long long)st.duplicates,
               (unsigned long long)st.matched, (unsigned long long)st.replacements);
  if (rc != CM_OK) return report_failure("ingest-tweets", rc);
  return st.malformed > 0 ? kExitPartial : kExitOk;
}

struct CollectArgs {
  std::string records, faults, out;
  std::vector<std::string> keywords{"bitcoin"};
  bool substring = false, no_jitter = false;
  uint32_t max_failures = 10;
  uint64_t seed = 0;
};

int run_simulate_collect(const CollectArgs &a) {
  std::string kw = join(a.keywords);
  cm_collect_options opts{a.records.c_str(),
                          a.faults.empty() ? nullptr : a.faults.c_str(),
                          a.out.empty() ? nullptr : a.out.c_str(),
                          kw.c_str(),
                          a.substring ? 1 : 0,
                          a.max_failures,
                          a.seed,
                          a.no_jitter ? 1 : 0};
  cm_collect_stats st{};
  cm_status rc = cm_collect_simulated(&opts, &st);
  std::fprintf(stderr, "received=%llu matched=%llu reconnects=%llu total_backoff_seconds=%.6f aborted=%d\n",
               (unsigned long long)st.received, (unsigned long long)st.matched,
               (unsigned long long)st.reconnects, st.total_backoff_seconds, st.aborted);
  if (rc != CM_OK) return report_failure("simulate-collect", rc);
  return kExitOk;
}

struct AnnotateArgs {
  std::string in, out, gazetteer;
  std::vector<std::string> stages{"tokenize", "gazetteer", "entity"};
};

int run_annotate(const AnnotateArgs &a) {
  GazetteerPtr gaz;
  if (!a.gazetteer.empty()) {
    cm_gazetteer *g = nullptr;
    cm_status rc = cm_gazetteer_load(a.gazetteer.c_str(), &g);
    if (rc != CM_OK) return report_failure("annotate", rc);
    gaz.reset(g);
  }
  std::string stages = join(a.stages);
  cm_annotate_stats st{};
  cm_status rc = cm_annotate_file(a.in.c_str(), a.out.c_str(), gaz.get(), stages.c_str(), &st);
  if (rc != CM_OK) return report_failure("annotate", rc);
  std::fprintf(stderr, "documents=%llu annotations=%llu\n", (unsigned long long)st.documents,
               (unsigned long long)st.annotations);
  return kExitOk;
}

struct AggregateArgs {
  std::string in, out, stream;
};

int run_aggregate(const AggregateArgs &a) {
  cm_series *s = nullptr;
  cm_status rc =
      cm_series_from_messages(a.in.c_str(), a.stream.empty() ? nullptr : a.stream.c_str(), &s);
  if (rc != CM_OK) return report_failure("aggregate", rc);
  SeriesPtr series(s);
  rc = cm_series_write_csv(series.get(), a.out.c_str());
  if (rc != CM_OK) return report_failure("aggregate", rc);
  std::fprintf(stderr, "stream=%s days=%zu total=%llu\n", cm_series_stream_id(series.get()),
               cm_series_days(series.get()), (unsigned long long)cm_series_total(series.get()));
  return kExitOk;
}

struct GapArgs {
  std::string in, out;
  double theta = 0.1;
  size_t window = 7;
};

int run_gaps(const GapArgs &a) {
  cm_series *s = nullptr;
  cm_status rc = cm_series_load_csv(a.in.c_str(), "", &s);
  if (rc != CM_OK) return report_failure("gaps", rc);
  SeriesPtr series(s);
  rc = cm_series_detect_gaps(series.get(), a.theta, a.window);
  if (rc == CM_OK) rc = cm_series_write_csv(series.get(), a.out.c_str());
  if (rc != CM_OK) return report_failure("gaps", rc);
  std::fprintf(stderr, "days=%zu outage_days=%zu\n", cm_series_days(series.get()),
               cm_series_outage_days(series.get()));
  return kExitOk;
}

struct CorrelateArgs {
  std::vector<std::string> series;  // name=path
  std::string price, volume, out;
  bool exclude_outages = false;
};

int run_correlate(const CorrelateArgs &a) {
  std::vector<SeriesPtr> owned;
  std::vector<const cm_series *> raw;
  for (const auto &spec : a.series) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      std::cerr << "cryptomine correlate: --series expects <stream_id>=<series.csv>, got '"
                << spec << "'\n";
      return kExitUsage;
    }
    cm_series *s = nullptr;
    cm_status rc =
        cm_series_load_csv(spec.substr(eq + 1).c_str(), spec.substr(0, eq).c_str(), &s);
    if (rc != CM_OK) return report_failure("correlate", rc);
    owned.emplace_back(s);
    raw.push_back(s);
  }
  cm_market *p = nullptr, *v = nullptr;
  cm_status rc = cm_market_load_csv(a.price.c_str(), CM_METRIC_PRICE_USD, &p);
  MarketPtr price(p);
  if (rc == CM_OK) rc = cm_market_load_csv(a.volume.c_str(), CM_METRIC_VOLUME_USD, &v);
  MarketPtr volume(v);
  if (rc != CM_OK) return report_failure("correlate", rc);
  cm_report *r = nullptr;
  rc = cm_report_build(raw.data(), raw.size(), price.get(), volume.get(),
                       a.exclude_outages ? 1 : 0, &r);
  if (rc != CM_OK) return report_failure("correlate", rc);
  ReportPtr report(r);
  rc = cm_report_write_json(report.get(), a.out.c_str());
  if (rc != CM_OK) return report_failure("correlate", rc);
  return cm_report_has_undefined(report.get()) ? kExitPartial : kExitOk;
}

struct ReportArgs {
  std::string in, out, format = "tsv";
};

int run_report(const ReportArgs &a) {
  cm_report *r = nullptr;
  cm_status rc = cm_report_load_json(a.in.c_str(), &r);
  if (rc != CM_OK) return report_failure("report", rc);
  ReportPtr report(r);
  CString text;
  rc = cm_report_render(report.get(), a.format == "markdown" ? CM_FORMAT_MARKDOWN : CM_FORMAT_TSV,
                        &text.p);
  if (rc != CM_OK) return report_failure("report", rc);
  if (a.out.empty()) {
    std::fputs(text.p, stdout);
  } else {
    FILE *f = std::fopen(a.out.c_str(), "wb");
    if (f == nullptr) {
      std::cerr << "cryptomine report: cannot create '" << a.out << "'\n";
      return kExitFatal;
    }
    bool ok = std::fputs(text.p, f) >= 0;
    ok = std::fclose(f) == 0 && ok;
    if (!ok) {
      std::cerr << "cryptomine report: write failed\n";
      return kExitFatal;
    }
  }
  return cm_report_has_undefined(report.get()) ? kExitPartial : kExitOk;
}

struct PlotArgs {
  std::string series, market, out, metric = "volume";
};

int run_plot_series(const PlotArgs &a) {
  cm_series *s = nullptr;
  cm_status rc = cm_series_load_csv(a.series.c_str(), "", &s);
  if (rc != CM_OK) return report_failure("plot-series", rc);
  SeriesPtr series(s);
  cm_market *m = nullptr;
  rc = cm_market_load_csv(a.market.c_str(),
                          a.metric == "price" ? CM_METRIC_PRICE_USD : CM_METRIC_VOLUME_USD, &m);
  if (rc != CM_OK) return report_failure("plot-series", rc);
  MarketPtr market(m);
  size_t rows = 0;
  rc = cm_plot_series_write(series.get(), market.get(), a.out.c_str(), &rows);
  if (rc != CM_OK) return report_failure("plot-series", rc);
  std::fprintf(stderr, "rows=%zu\n", rows);
  return kExitOk;
}

struct RunAllArgs {
  std::string config;
};

int run_run_all(const RunAllArgs &a) {
  cm_run_result result{};
  CString notes;
  cm_status rc = cm_run_all(a.config.c_str(), &result, &notes.p);
  if (rc != CM_OK) return report_failure("run-all", rc);
  if (notes.p != nullptr && *notes.p != '\0') std::fputs(notes.p, stderr);
  std::fprintf(stderr, "rows=%zu outputs=%zu partial=%d\n", result.rows, result.outputs,
               result.partial);
  return result.partial ? kExitPartial : kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"cryptomine: social-media message volume vs. Bitcoin market metrics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cm_version()));

  SanitizeArgs sanitize;
  auto *sub_sanitize = app.add_subcommand(
      "sanitize", "Blank non-ASCII \\uXXXX escapes, stdin to stdout, preserving byte lengths");
  sub_sanitize->add_flag("--stats", sanitize.stats, "Print counters to stderr as key=value");

  IrcArgs irc;
  auto *sub_irc = app.add_subcommand("parse-irc", "Parse an IRC channel log into Message JSONL");
  sub_irc->add_option("--channel", irc.channel, "Channel name, e.g. #bitcoin")->required();
  sub_irc->add_option("--in", irc.in, "Log file")->required();
  sub_irc->add_option("--out", irc.out, "Message JSONL output")->required();
  sub_irc->add_flag("--strict", irc.strict, "Abort on the first unparsable line");
  sub_irc->add_option("--tz", irc.tz, "Log clock timezone: UTC or fixed offset like -04:00")
      ->capture_default_str();
  sub_irc->add_option("--stream-id", irc.stream_id, "Override stream id (default irc:<channel>)");

  TweetArgs tweets;
  auto *sub_tweets =
      app.add_subcommand("ingest-tweets", "Filter tweet JSONL by keyword into Message JSONL");
  sub_tweets->add_option("--in", tweets.in, "Tweet JSONL capture")->required();
  sub_tweets->add_option("--out", tweets.out, "Message JSONL output")->required();
  sub_tweets->add_option("--keywords", tweets.keywords, "Comma-separated keywords")
      ->delimiter(',')
      ->capture_default_str();
  sub_tweets->add_flag("--substring", tweets.substring, "Match keywords inside longer words");
  sub_tweets->add_flag("--strict", tweets.strict, "Abort on the first malformed record");

  CollectArgs collect;
  auto *sub_collect = app.add_subcommand(
      "simulate-collect", "Replay a tweet capture through the reconnecting collector");
  sub_collect->add_option("--records", collect.records, "Tweet JSONL to replay")->required();
  sub_collect->add_option("--faults", collect.faults, "Fault script (ok|drop|http|rate per line)");
  sub_collect->add_option("--out", collect.out, "Message JSONL output");
  sub_collect->add_option("--keywords", collect.keywords, "Comma-separated keywords")
      ->delimiter(',');
  sub_collect->add_flag("--substring", collect.substring, "Substring keyword matching");
  sub_collect->add_option("--max-failures", collect.max_failures,
                          "Abort after this many consecutive failures")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub_collect->add_option("--seed", collect.seed, "Jitter seed")->capture_default_str();
  sub_collect->add_flag("--no-jitter", collect.no_jitter, "Disable jitter");

  AnnotateArgs annotate;
  auto *sub_annotate =
      app.add_subcommand("annotate", "Annotate Message JSONL into AnnotatedDocument JSONL");
  sub_annotate->add_option("--in", annotate.in, "Message JSONL")->required();
  sub_annotate->add_option("--gazetteer", annotate.gazetteer, "surface<TAB>major<TAB>minor file");
  sub_annotate->add_option("--out", annotate.out, "Annotated JSONL output")->required();
  sub_annotate->add_option("--stages", annotate.stages, "Comma-separated stage list")
      ->delimiter(',')
      ->capture_default_str();

  AggregateArgs aggregate;
  auto *sub_aggregate = app.add_subcommand("aggregate", "Count messages per UTC day");
  sub_aggregate->add_option("--in", aggregate.in, "Message JSONL")->required();
  sub_aggregate->add_option("--out", aggregate.out, "Series CSV (date,count,flag)")->required();
  sub_aggregate->add_option("--stream", aggregate.stream, "Stream id to select");

  GapArgs gaps;
  auto *sub_gaps = app.add_subcommand("gaps", "Flag collection-outage days in a series");
  sub_gaps->add_option("--in", gaps.in, "Series CSV")->required();
  sub_gaps->add_option("--out", gaps.out, "Series CSV with flags")->required();
  sub_gaps->add_option("--theta", gaps.theta, "Outage threshold as a fraction of the median")
      ->capture_default_str();
  sub_gaps->add_option("--window", gaps.window, "Rolling median window in days")
      ->capture_default_str();

  CorrelateArgs correlate;
  auto *sub_correlate = app.add_subcommand(
      "correlate", "Pearson correlation of daily counts with price and volume");
  sub_correlate->add_option("--series", correlate.series, "<stream_id>=<series.csv>, repeatable")
      ->required();
  sub_correlate->add_option("--price", correlate.price, "Price CSV (date,value)")->required();
  sub_correlate->add_option("--volume", correlate.volume, "Volume CSV (date,value)")->required();
  sub_correlate->add_option("--out", correlate.out, "Report JSON output")->required();
  sub_correlate->add_flag("--exclude-outages", correlate.exclude_outages,
                          "Drop outage days before correlating");

  ReportArgs report;
  auto *sub_report = app.add_subcommand("report", "Render a report JSON as a table");
  sub_report->add_option("--in", report.in, "Report JSON")->required();
  sub_report->add_option("--format", report.format, "tsv or markdown")
      ->check(CLI::IsMember({"tsv", "markdown"}))
      ->capture_default_str();
  sub_report->add_option("--out", report.out, "Output file (default stdout)");

  PlotArgs plot;
  auto *sub_plot = app.add_subcommand("plot-series", "Join a daily series with a market series");
  sub_plot->add_option("--series", plot.series, "Series CSV")->required();
  sub_plot->add_option("--market", plot.market, "Market CSV (date,value)")->required();
  sub_plot->add_option("--metric", plot.metric, "price or volume")
      ->check(CLI::IsMember({"price", "volume"}))
      ->capture_default_str();
  sub_plot->add_option("--out", plot.out, "CSV output (date,count,flag,metric_value)")->required();

  RunAllArgs run_all;
  auto *sub_run = app.add_subcommand("run-all", "Run every stage from a JSON config");
  sub_run->add_option("--config", run_all.config, "Run configuration (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*sub_sanitize) return run_sanitize(sanitize);
  if (*sub_irc) return run_parse_irc(irc);
  if (*sub_tweets) return run_ingest_tweets(tweets);
  if (*sub_collect) return run_simulate_collect(collect);
  if (*sub_annotate) return run_annotate(annotate);
  if (*sub_aggregate) return run_aggregate(aggregate);
  if (*sub_gaps) return run_gaps(gaps);
  if (*sub_correlate) return run_correlate(correlate);
  if (*sub_report) return run_report(report);
  if (*sub_plot) return run_plot_series(plot);
  if (*sub_run) return run_run_all(run_all);
  return kExitUsage;
}
