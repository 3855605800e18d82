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


#ifndef CRYPTOMINE_SERIES_HPP_
#define CRYPTOMINE_SERIES_HPP_

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cryptomine/message.hpp"
#include "cryptomine/timeutil.hpp"

namespace cryptomine {

enum class DayFlag { kOk, kOutage };

const char *flag_name(DayFlag f);

struct DailySeries {
  std::string stream_id;
  std::map<Date, std::uint64_t> counts;  // interior days materialized
  std::map<Date, DayFlag> flags;         // same keys as counts

  std::uint64_t total() const;
  std::map<Date, double> values() const;
};

// Streaming day counter; memory grows with the number of distinct days only.
class DailyCounter {
 public:
  void add(Timestamp ts) { ++counts_[date_of(ts)]; }
  std::uint64_t total() const;
  // Fills interior missing days with 0 and marks every day Ok.
  DailySeries finish(std::string stream_id) const;

 private:
  std::map<Date, std::uint64_t> counts_;
};

DailySeries bucket_daily(std::span<const Message> messages, std::string stream_id);

struct GapParams {
  double theta = 0.1;
  std::size_t window = 7;

  // Throws Error(kInvalidArgument) unless 0 < theta < 1 and window >= 1.
  void validate() const;
};

// A day is an Outage when its count is 0 or below theta times the median of
// the previous `window` days that are not themselves Outage. The first days
// use whatever history exists.
DailySeries detect_gaps(DailySeries series, const GapParams &params = {});

// "date,count,flag" with header.
void write_series_csv(const DailySeries &series, std::ostream &out);
// Throws Error(kMalformedRow) / Error(kDuplicateDate).
DailySeries read_series_csv(std::istream &in, std::string stream_id);

enum class MarketMetric { kPriceUsd, kVolumeUsd };

struct MarketSeries {
  MarketMetric metric = MarketMetric::kPriceUsd;
  std::map<Date, double> values;
};

// Header "date,value", then "YYYY-MM-DD,<decimal>". Rows may come in any
// order. Throws Error(kMalformedRow), Error(kDuplicateDate) or
// Error(kNegativeValue).
MarketSeries load_market_csv(std::istream &in, MarketMetric metric);

enum class AlignPolicy { kAllDays, kExcludeOutages };

const char *policy_name(AlignPolicy p);

struct Aligned {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<Date> dates;
};

inline constexpr std::size_t kMinAlignedDays = 3;

// Inner join on dates. With kExcludeOutages, dates flagged Outage in
// `flags` are dropped. Throws Error(kEmptyOverlap) when fewer than
// `min_days` pairs remain.
Aligned align(const std::map<Date, double> &a, const std::map<Date, double> &b,
              AlignPolicy policy = AlignPolicy::kAllDays,
              const std::map<Date, DayFlag> *flags = nullptr,
              std::size_t min_days = kMinAlignedDays);

}  // namespace cryptomine

#endif  // CRYPTOMINE_SERIES_HPP_
