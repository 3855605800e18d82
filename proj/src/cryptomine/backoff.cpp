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


#include "cryptomine/backoff.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cryptomine/errors.hpp"

namespace cryptomine {

const char *failure_mode_name(FailureMode mode) {
  switch (mode) {
    case FailureMode::kNetworkError: return "NetworkError";
    case FailureMode::kHttpError: return "HttpError";
    case FailureMode::kRateLimited: return "RateLimited";
  }
  return "?";
}

std::optional<FailureMode> failure_mode_from_name(std::string_view name) {
  if (name == "NetworkError" || name == "network" || name == "drop") {
    return FailureMode::kNetworkError;
  }
  if (name == "HttpError" || name == "http") return FailureMode::kHttpError;
  if (name == "RateLimited" || name == "rate") return FailureMode::kRateLimited;
  return std::nullopt;
}

BackoffPolicy BackoffPolicy::defaults(FailureMode mode) {
  BackoffPolicy p;
  p.mode = mode;
  switch (mode) {
    case FailureMode::kNetworkError:
      p.base_delay = 0.25;
      p.cap = 16.0;
      break;
    case FailureMode::kHttpError:
      p.base_delay = 5.0;
      p.cap = 320.0;
      break;
    case FailureMode::kRateLimited:
      p.base_delay = 60.0;
      p.cap = 960.0;
      break;
  }
  p.factor = 2.0;
  return p;
}

void BackoffPolicy::validate() const {
  if (!(base_delay > 0.0)) throw Error(ErrorCode::kInvalidArgument, "base_delay must be > 0");
  if (!(factor >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "factor must be >= 1");
  if (!(cap >= base_delay)) throw Error(ErrorCode::kInvalidArgument, "cap must be >= base_delay");
  if (!(max_jitter >= 0.0 && max_jitter < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "max_jitter must be in [0, 1)");
  }
}

double jitter_fraction(std::uint64_t seed, std::uint32_t failure_index,
                       double max_jitter) {
  if (max_jitter <= 0.0) return 0.0;
  // seed_seq and mt19937_64 are fully specified by the standard, so the
  // sequence is identical across platforms. uniform_real_distribution is
  // not, hence the manual 53-bit conversion.
  std::seed_seq seq{std::uint32_t(seed & 0xffffffffu), std::uint32_t(seed >> 32),
                    failure_index};
  std::mt19937_64 gen(seq);
  double unit = double(gen() >> 11) * 0x1.0p-53;
  return unit * max_jitter;
}

DelayDecision next_delay(const BackoffPolicy &policy, const BackoffState &state,
                         Outcome outcome) {
  if (outcome.success) return {0.0, BackoffState{}};
  const std::uint32_t index = state.consecutive_failures;
  // factor^index overflows to inf for large indices; min() still yields cap.
  double raw = policy.base_delay * std::pow(policy.factor, double(index));
  double delay = std::min(policy.cap, raw) *
                 (1.0 + jitter_fraction(policy.jitter_seed, index, policy.max_jitter));
  BackoffState next;
  next.consecutive_failures = index + 1;
  next.last_mode = outcome.mode;
  return {delay, next};
}

}  // namespace cryptomine
