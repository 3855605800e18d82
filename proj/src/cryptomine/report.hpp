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


#ifndef CRYPTOMINE_REPORT_HPP_
#define CRYPTOMINE_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cryptomine/errors.hpp"
#include "cryptomine/series.hpp"

namespace cryptomine {

// One correlation cell: a value, or the error that made it undefined.
struct Correlation {
  std::optional<double> r;
  std::optional<ErrorCode> error;
  std::size_t n_days = 0;

  bool defined() const { return r.has_value(); }
};

struct ReportRow {
  std::string stream_id;
  std::uint64_t total_messages = 0;
  Correlation volume;
  Correlation price;
  std::string policy;
};

struct CorrelationReport {
  std::vector<ReportRow> rows;

  bool has_undefined() const;
};

Correlation correlate(const DailySeries &daily, const MarketSeries &market,
                      AlignPolicy policy);

// One row per stream in input order. Per-row failures are recorded in the
// row rather than thrown.
CorrelationReport correlation_report(std::span<const DailySeries> daily,
                                     const MarketSeries &price,
                                     const MarketSeries &volume, AlignPolicy policy);

enum class TableFormat { kTsv, kMarkdown };

// "twitter" -> "Twitter", "irc:#bitcoin" -> "#bitcoin", others unchanged.
std::string display_name(const std::string &stream_id);

// Fixed four decimals, e.g. "-0.0191".
std::string format_correlation(const Correlation &c);

std::string render_table(const CorrelationReport &report, TableFormat format);

std::string report_to_json(const CorrelationReport &report);
// Throws Error(kMalformedRecord).
CorrelationReport report_from_json(std::string_view json);

// "date,count,flag,metric_value" over the dates both series share. Throws
// Error(kEmptyOverlap) when fewer than three days are shared.
std::size_t emit_plot_series(const DailySeries &daily, const MarketSeries &market,
                             std::ostream &out);

}  // namespace cryptomine

#endif  // CRYPTOMINE_REPORT_HPP_
