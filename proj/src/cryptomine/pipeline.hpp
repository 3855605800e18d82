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


// Stage composition: streaming tweet processing, message annotation and the
// configured end-to-end run.

#ifndef CRYPTOMINE_PIPELINE_HPP_
#define CRYPTOMINE_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cryptomine/annotate.hpp"
#include "cryptomine/report.hpp"
#include "cryptomine/series.hpp"
#include "cryptomine/twitter.hpp"

namespace cryptomine {

struct AnnotateStats {
  std::uint64_t documents = 0;
  std::uint64_t annotations = 0;
};

// Message JSONL in, AnnotatedDocument JSONL out. Document ids are
// "<stream_id>/<line number>".
AnnotateStats annotate_messages(std::istream &messages, std::ostream &out,
                                const Pipeline &pipeline, const Resources &resources);

// Per-stream daily counters over a Message JSONL stream. When `only` is set
// other streams are skipped.
std::map<std::string, DailySeries> aggregate_messages(
    std::istream &messages, const std::optional<std::string> &only = std::nullopt);

struct TweetStreamOptions {
  KeywordMatcher matcher;
  Pipeline pipeline;
  Resources resources;
  std::ostream *messages_out = nullptr;   // optional Message JSONL
  std::ostream *annotated_out = nullptr;  // optional AnnotatedDocument JSONL
};

struct TweetStreamStats {
  std::uint64_t bytes = 0;
  TweetIngestStats ingest;
  AnnotateStats annotate;
};

// sanitize -> parse -> keyword filter -> annotate -> bucket, one line at a
// time. Memory is bounded by the longest line, the number of distinct days
// and the set of seen tweet ids.
TweetStreamStats run_tweet_stream(std::istream &in, const TweetStreamOptions &options,
                                  DailyCounter &counter);

struct RunAllResult {
  CorrelationReport report;
  bool partial = false;  // undefined rows, skipped lines or plots
  std::vector<std::string> notes;
  std::vector<std::filesystem::path> outputs;
};

// Executes the JSON run configuration described in the README. Relative
// paths resolve against the config file's directory. Throws Error on
// fatal problems (unreadable inputs, bad config).
RunAllResult run_all(const std::filesystem::path &config_path);

// "irc:#bitcoin-otc" -> "irc_bitcoin-otc"
std::string file_stem_for_stream(const std::string &stream_id);

}  // namespace cryptomine

#endif  // CRYPTOMINE_PIPELINE_HPP_
