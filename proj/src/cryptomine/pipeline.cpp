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


#include "cryptomine/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "cryptomine/errors.hpp"
#include "cryptomine/irc.hpp"
#include "cryptomine/message.hpp"
#include "json.hpp"

namespace cryptomine {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ifstream open_in(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + p.string() + "'");
  return in;
}

std::ofstream open_out(const fs::path &p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create '" + p.string() + "'");
  return out;
}

void annotate_one(const Message &m, std::uint64_t index, const Pipeline &pipeline,
                  const Resources &resources, std::ostream &out, AnnotateStats &stats) {
  AnnotatedDocument doc =
      pipeline.run(Document(m.stream_id + "/" + std::to_string(index), m.text), resources);
  ++stats.documents;
  stats.annotations += doc.annotations().size();
  out << doc.to_json() << '\n';
}

template <typename T>
T get_or(const json &j, const char *key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<T>();
}

}  // namespace

std::string file_stem_for_stream(const std::string &stream_id) {
  std::string out;
  for (char c : stream_id) {
    bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    if (keep) {
      out.push_back(c);
    } else if (out.empty() || out.back() != '_') {
      out.push_back('_');
    }
  }
  return out.empty() ? "stream" : out;
}

AnnotateStats annotate_messages(std::istream &messages, std::ostream &out,
                                const Pipeline &pipeline, const Resources &resources) {
  AnnotateStats stats;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(messages, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Message m;
    try {
      m = message_from_json_line(line);
    } catch (const Error &e) {
      throw Error(ErrorCode::kMalformedRecord,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
    annotate_one(m, line_no, pipeline, resources, out, stats);
  }
  if (messages.bad()) throw Error(ErrorCode::kIo, "read failed");
  if (!out) throw Error(ErrorCode::kIo, "write failed");
  return stats;
}

std::map<std::string, DailySeries> aggregate_messages(std::istream &messages,
                                                      const std::optional<std::string> &only) {
  std::map<std::string, DailyCounter> counters;
  read_messages(messages, [&](Message &&m) {
    if (only && m.stream_id != *only) return;
    counters[m.stream_id].add(m.ts);
  });
  std::map<std::string, DailySeries> out;
  for (const auto &[id, c] : counters) out.emplace(id, c.finish(id));
  if (only && out.empty()) out.emplace(*only, DailySeries{*only, {}, {}});
  return out;
}

TweetStreamStats run_tweet_stream(std::istream &in, const TweetStreamOptions &options,
                                  DailyCounter &counter) {
  TweetStreamStats stats;
  TweetIngester ingester(options.matcher);
  std::string line;
  auto sink = [&](Message &&m) {
    counter.add(m.ts);
    if (options.messages_out != nullptr) *options.messages_out << to_json_line(m) << '\n';
    if (!options.pipeline.empty()) {
      AnnotatedDocument doc = options.pipeline.run(
          Document(m.stream_id + "/" + std::to_string(ingester.stats().lines), m.text),
          options.resources);
      ++stats.annotate.documents;
      stats.annotate.annotations += doc.annotations().size();
      if (options.annotated_out != nullptr) *options.annotated_out << doc.to_json() << '\n';
    }
  };
  while (std::getline(in, line)) {
    stats.bytes += line.size() + 1;
    ingester.feed(line, sink);
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed");
  stats.ingest = ingester.stats();
  return stats;
}

RunAllResult run_all(const fs::path &config_path) {
  json cfg;
  {
    std::ifstream in = open_in(config_path);
    cfg = json::parse(in, nullptr, false);
    if (cfg.is_discarded() || !cfg.is_object()) {
      throw Error(ErrorCode::kInvalidArgument, "config is not a JSON object");
    }
  }
  const fs::path base = config_path.parent_path();
  auto resolve = [&](const std::string &p) {
    fs::path path(p);
    return path.is_absolute() ? path : base / path;
  };

  RunAllResult result;
  try {
    const fs::path out_dir = resolve(get_or<std::string>(cfg, "out_dir", "out"));
    const bool strict = get_or<bool>(cfg, "strict", false);
    GapParams gaps;
    gaps.theta = get_or<double>(cfg, "theta", 0.1);
    gaps.window = get_or<std::size_t>(cfg, "window", 7);
    gaps.validate();
    const AlignPolicy policy = get_or<bool>(cfg, "exclude_outages", false)
                                   ? AlignPolicy::kExcludeOutages
                                   : AlignPolicy::kAllDays;
    const std::string format = get_or<std::string>(cfg, "format", "tsv");
    if (format != "tsv" && format != "markdown") {
      throw Error(ErrorCode::kInvalidArgument, "format must be tsv or markdown");
    }
    KeywordMatcher matcher(get_or<std::vector<std::string>>(cfg, "keywords", {"bitcoin"}),
                           get_or<bool>(cfg, "substring", false));
    Pipeline pipeline = Pipeline::from_names(get_or<std::vector<std::string>>(
        cfg, "pipeline", {"tokenize", "gazetteer", "entity"}));
    std::optional<Gazetteer> gazetteer;
    if (auto g = get_or<std::string>(cfg, "gazetteer", ""); !g.empty()) {
      std::ifstream in = open_in(resolve(g));
      gazetteer = Gazetteer::load(in);
    }
    Resources resources{gazetteer ? &*gazetteer : nullptr};

    MarketSeries price, volume;
    {
      std::ifstream in = open_in(resolve(cfg.at("price").get<std::string>()));
      price = load_market_csv(in, MarketMetric::kPriceUsd);
    }
    {
      std::ifstream in = open_in(resolve(cfg.at("volume").get<std::string>()));
      volume = load_market_csv(in, MarketMetric::kVolumeUsd);
    }

    for (const char *sub : {"messages", "series", "annotated", "plots"}) {
      fs::create_directories(out_dir / sub);
    }
    auto track = [&](fs::path p) {
      result.outputs.push_back(p);
      return p;
    };

    std::vector<DailySeries> all;
    auto finish_stream = [&](const std::string &stream_id, const DailyCounter &counter) {
      DailySeries s = detect_gaps(counter.finish(stream_id), gaps);
      std::ofstream out = open_out(track(out_dir / "series" / (file_stem_for_stream(stream_id) + ".csv")));
      write_series_csv(s, out);
      all.push_back(std::move(s));
    };

    if (auto tweets = cfg.find("tweets"); tweets != cfg.end()) {
      DailyCounter counter;
      const std::string stem = file_stem_for_stream(std::string(kTwitterStream));
      std::ofstream msgs = open_out(track(out_dir / "messages" / (stem + ".jsonl")));
      std::ofstream annotated = open_out(track(out_dir / "annotated" / (stem + ".jsonl")));
      for (const auto &entry : *tweets) {
        std::ifstream in = open_in(resolve(entry.at("path").get<std::string>()));
        TweetStreamOptions opts{matcher, pipeline, resources, &msgs, &annotated};
        TweetStreamStats st = run_tweet_stream(in, opts, counter);
        if (st.ingest.malformed > 0) {
          if (strict) {
            throw Error(ErrorCode::kMalformedRecord,
                        entry.at("path").get<std::string>() + ": malformed tweet records");
          }
          result.partial = true;
          result.notes.push_back(entry.at("path").get<std::string>() + ": " +
                                 std::to_string(st.ingest.malformed) + " malformed records skipped");
        }
      }
      finish_stream(std::string(kTwitterStream), counter);
    }

    if (auto irc = cfg.find("irc"); irc != cfg.end()) {
      for (const auto &entry : *irc) {
        IrcIngestOptions opts;
        opts.channel = entry.at("channel").get<std::string>();
        opts.stream_id = get_or<std::string>(entry, "stream_id", "");
        auto offset = parse_utc_offset(get_or<std::string>(entry, "tz", "UTC"));
        if (!offset) throw Error(ErrorCode::kInvalidArgument, "bad tz for " + opts.channel);
        opts.utc_offset = *offset;
        opts.strict = strict;
        const std::string stream_id =
            opts.stream_id.empty() ? "irc:" + opts.channel : opts.stream_id;
        const std::string stem = file_stem_for_stream(stream_id);
        std::ifstream in = open_in(resolve(entry.at("path").get<std::string>()));
        std::ofstream msgs = open_out(track(out_dir / "messages" / (stem + ".jsonl")));
        std::ofstream annotated = open_out(track(out_dir / "annotated" / (stem + ".jsonl")));
        DailyCounter counter;
        IrcIngestStats st;
        AnnotateStats ann;
        ingest_log(in, opts, [&](Message &&m) {
          counter.add(m.ts);
          msgs << to_json_line(m) << '\n';
          annotate_one(m, st.lines, pipeline, resources, annotated, ann);
        }, st);
        if (st.unparsable > 0) {
          result.partial = true;
          result.notes.push_back(stream_id + ": " + std::to_string(st.unparsable) +
                                 " unparsable lines skipped");
        }
        finish_stream(stream_id, counter);
      }
    }
    if (all.empty()) throw Error(ErrorCode::kInvalidArgument, "config has no input streams");

    result.report = correlation_report(all, price, volume, policy);
    {
      std::ofstream out = open_out(track(out_dir / "report.json"));
      out << report_to_json(result.report);
    }
    {
      bool md = format == "markdown";
      std::ofstream out = open_out(track(out_dir / (md ? "report.md" : "report.tsv")));
      out << render_table(result.report, md ? TableFormat::kMarkdown : TableFormat::kTsv);
    }
    if (result.report.has_undefined()) result.partial = true;

    for (const auto &s : all) {
      for (const auto *m : {&volume, &price}) {
        const char *suffix = m == &volume ? "_volume.csv" : "_price.csv";
        fs::path p = out_dir / "plots" / (file_stem_for_stream(s.stream_id) + suffix);
        std::ostringstream buf;
        try {
          emit_plot_series(s, *m, buf);
        } catch (const Error &e) {
          result.partial = true;
          result.notes.push_back(p.filename().string() + " skipped: " + e.what());
          continue;
        }
        std::ofstream out = open_out(track(p));
        out << buf.str();
      }
    }
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("config: ") + e.what());
  }
  return result;
}

}  // namespace cryptomine
