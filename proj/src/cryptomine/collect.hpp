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


#ifndef CRYPTOMINE_COLLECT_HPP_
#define CRYPTOMINE_COLLECT_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <istream>
#include <string>
#include <vector>

#include "cryptomine/backoff.hpp"
#include "cryptomine/message.hpp"
#include "cryptomine/twitter.hpp"

namespace cryptomine {

// Fault script tokens, one per line: ok | drop | http | rate.
enum class FaultToken { kOk, kDrop, kHttp, kRate };

// Blank lines and lines starting with '#' are ignored. Throws
// Error(kInvalidArgument) on an unknown token.
std::vector<FaultToken> parse_fault_script(std::istream &in);

struct SourceEvent {
  enum class Kind { kRecord, kFault, kEnd };
  Kind kind = Kind::kEnd;
  std::string record;
  FailureMode fault = FailureMode::kNetworkError;
};

class RecordSource {
 public:
  virtual ~RecordSource() = default;
  virtual SourceEvent next() = 0;
};

// Replays captured records, interleaving faults from a script. Each "ok"
// delivers the next record; once the script runs out the remaining records
// are delivered without faults.
class ScriptedSource : public RecordSource {
 public:
  ScriptedSource(std::vector<std::string> records, std::vector<FaultToken> script);

  SourceEvent next() override;

 private:
  std::vector<std::string> records_;
  std::vector<FaultToken> script_;
  size_t record_pos_ = 0;
  size_t script_pos_ = 0;
};

struct CollectOptions {
  KeywordMatcher matcher;
  std::array<BackoffPolicy, 3> policies = {
      BackoffPolicy::defaults(FailureMode::kNetworkError),
      BackoffPolicy::defaults(FailureMode::kHttpError),
      BackoffPolicy::defaults(FailureMode::kRateLimited)};
  std::uint32_t max_consecutive_failures = 10;
  // Called with each backoff delay in seconds. Left empty the simulation
  // never sleeps; delays are only accounted.
  std::function<void(double)> wait;

  const BackoffPolicy &policy_for(FailureMode mode) const {
    return policies[static_cast<size_t>(mode)];
  }
};

struct CollectStats {
  std::uint64_t received = 0;
  std::uint64_t matched = 0;
  std::uint64_t malformed = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t reconnects = 0;
  double total_backoff_seconds = 0.0;
  bool aborted = false;
  std::vector<double> delays;
};

// Consumer loop: forwards keyword-matching tweets as Messages. Every fault
// schedules a backoff from the policy of its mode; the shared consecutive
// failure counter resets on the next delivered record. Reaching
// max_consecutive_failures sets `aborted` and stops.
CollectStats collect(RecordSource &source, const MessageSink &sink,
                     const CollectOptions &options);

}  // namespace cryptomine

#endif  // CRYPTOMINE_COLLECT_HPP_
