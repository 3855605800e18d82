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


// Reconnection backoff as a pure state machine:
//
//   delay = min(cap, base * factor^failures) * (1 + jitter)
//
// where jitter is drawn in [0, max_jitter) from a generator seeded by the
// policy seed and the failure index, so schedules replay exactly.

#ifndef CRYPTOMINE_BACKOFF_HPP_
#define CRYPTOMINE_BACKOFF_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

namespace cryptomine {

enum class FailureMode { kNetworkError, kHttpError, kRateLimited };

const char *failure_mode_name(FailureMode mode);
std::optional<FailureMode> failure_mode_from_name(std::string_view name);

struct BackoffPolicy {
  FailureMode mode = FailureMode::kHttpError;
  double base_delay = 5.0;  // seconds
  double factor = 2.0;
  double cap = 320.0;  // seconds
  std::uint64_t jitter_seed = 0;
  double max_jitter = 0.25;  // 0 disables jitter

  // NetworkError 0.25s/x2/16s, HttpError 5s/x2/320s, RateLimited 60s/x2/960s.
  static BackoffPolicy defaults(FailureMode mode);

  // Throws Error(kInvalidArgument) unless base > 0, factor >= 1, cap >= base
  // and 0 <= max_jitter < 1.
  void validate() const;
};

struct BackoffState {
  std::uint32_t consecutive_failures = 0;
  std::optional<FailureMode> last_mode;

  bool operator==(const BackoffState &) const = default;
};

struct Outcome {
  bool success = true;
  FailureMode mode = FailureMode::kNetworkError;

  static Outcome Success() { return {true, FailureMode::kNetworkError}; }
  static Outcome Failure(FailureMode m) { return {false, m}; }
};

struct DelayDecision {
  double delay = 0.0;  // seconds
  BackoffState state;
};

DelayDecision next_delay(const BackoffPolicy &policy, const BackoffState &state,
                         Outcome outcome);

// Jitter fraction in [0, max_jitter) for the given failure index.
double jitter_fraction(std::uint64_t seed, std::uint32_t failure_index,
                       double max_jitter);

}  // namespace cryptomine

#endif  // CRYPTOMINE_BACKOFF_HPP_
