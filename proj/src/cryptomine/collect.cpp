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


#include "cryptomine/collect.hpp"

#include "cryptomine/errors.hpp"

namespace cryptomine {

std::vector<FaultToken> parse_fault_script(std::istream &in) {
  std::vector<FaultToken> script;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string token = line.substr(first, last - first + 1);
    if (token == "ok") {
      script.push_back(FaultToken::kOk);
    } else if (token == "drop") {
      script.push_back(FaultToken::kDrop);
    } else if (token == "http") {
      script.push_back(FaultToken::kHttp);
    } else if (token == "rate") {
      script.push_back(FaultToken::kRate);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "fault script line " +
                                                   std::to_string(line_no) +
                                                   ": unknown token '" + token + "'");
    }
  }
  return script;
}

ScriptedSource::ScriptedSource(std::vector<std::string> records,
                               std::vector<FaultToken> script)
    : records_(std::move(records)), script_(std::move(script)) {}

SourceEvent ScriptedSource::next() {
  SourceEvent ev;
  FaultToken token = FaultToken::kOk;
  if (script_pos_ < script_.size()) token = script_[script_pos_++];
  switch (token) {
    case FaultToken::kOk:
      if (record_pos_ < records_.size()) {
        ev.kind = SourceEvent::Kind::kRecord;
        ev.record = records_[record_pos_++];
      }
      return ev;
    case FaultToken::kDrop:
      ev.fault = FailureMode::kNetworkError;
      break;
    case FaultToken::kHttp:
      ev.fault = FailureMode::kHttpError;
      break;
    case FaultToken::kRate:
      ev.fault = FailureMode::kRateLimited;
      break;
  }
  ev.kind = SourceEvent::Kind::kFault;
  return ev;
}

CollectStats collect(RecordSource &source, const MessageSink &sink,
                     const CollectOptions &options) {
  for (const auto &p : options.policies) p.validate();
  if (options.max_consecutive_failures == 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_consecutive_failures must be >= 1");
  }
  CollectStats stats;
  TweetIngester ingester(options.matcher);
  BackoffState state;
  for (;;) {
    SourceEvent ev = source.next();
    if (ev.kind == SourceEvent::Kind::kEnd) break;
    if (ev.kind == SourceEvent::Kind::kFault) {
      DelayDecision d = next_delay(options.policy_for(ev.fault), state,
                                   Outcome::Failure(ev.fault));
      state = d.state;
      ++stats.reconnects;
      stats.total_backoff_seconds += d.delay;
      stats.delays.push_back(d.delay);
      if (options.wait) options.wait(d.delay);
      if (state.consecutive_failures >= options.max_consecutive_failures) {
        stats.aborted = true;
        break;
      }
      continue;
    }
    state = next_delay(options.policy_for(FailureMode::kNetworkError), state,
                       Outcome::Success())
                .state;
    ++stats.received;
    ingester.feed(ev.record, sink);
  }
  stats.matched = ingester.stats().matched;
  stats.malformed = ingester.stats().malformed;
  stats.duplicates = ingester.stats().duplicates;
  return stats;
}

}  // namespace cryptomine
