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


#include "cryptomine/report.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "cryptomine/stats.hpp"
#include "json.hpp"

namespace cryptomine {

using nlohmann::ordered_json;

namespace {

constexpr std::array<const char *, 6> kHeader = {
    "Data Source", "Total Messages", "Bitcoin Volume Correlation",
    "Bitcoin Price Correlation", "n_days", "policy"};

std::optional<ErrorCode> error_from_name(std::string_view name) {
  for (int c = 0; c <= int(ErrorCode::kAborted); ++c) {
    if (name == error_name(ErrorCode(c))) return ErrorCode(c);
  }
  return std::nullopt;
}

std::string n_days_cell(const ReportRow &row) {
  if (row.volume.n_days == row.price.n_days) return std::to_string(row.volume.n_days);
  return std::to_string(row.volume.n_days) + "/" + std::to_string(row.price.n_days);
}

ordered_json correlation_json(const Correlation &c) {
  ordered_json j;
  j["r"] = c.r ? ordered_json(*c.r) : ordered_json(nullptr);
  j["error"] = c.error ? ordered_json(error_name(*c.error)) : ordered_json(nullptr);
  j["n_days"] = c.n_days;
  return j;
}

Correlation correlation_from(const ordered_json &j) {
  Correlation c;
  if (!j.at("r").is_null()) c.r = j.at("r").get<double>();
  if (!j.at("error").is_null()) {
    c.error = error_from_name(j.at("error").get<std::string>());
    if (!c.error) throw Error(ErrorCode::kMalformedRecord, "unknown error name");
  }
  c.n_days = j.at("n_days").get<std::size_t>();
  return c;
}

}  // namespace

bool CorrelationReport::has_undefined() const {
  for (const auto &r : rows) {
    if (!r.volume.defined() || !r.price.defined()) return true;
  }
  return false;
}

Correlation correlate(const DailySeries &daily, const MarketSeries &market,
                      AlignPolicy policy) {
  Correlation c;
  try {
    Aligned a = align(daily.values(), market.values, policy, &daily.flags, 0);
    c.n_days = a.dates.size();
    if (a.dates.size() < kMinAlignedDays) {
      throw Error(ErrorCode::kEmptyOverlap, std::to_string(a.dates.size()) + " overlapping days");
    }
    c.r = pearson(a.x, a.y);
  } catch (const Error &e) {
    c.error = e.code();
  }
  return c;
}

CorrelationReport correlation_report(std::span<const DailySeries> daily,
                                     const MarketSeries &price,
                                     const MarketSeries &volume, AlignPolicy policy) {
  if (daily.empty()) throw Error(ErrorCode::kInvalidArgument, "no daily series");
  CorrelationReport report;
  for (const auto &s : daily) {
    ReportRow row;
    row.stream_id = s.stream_id;
    row.total_messages = s.total();
    row.volume = correlate(s, volume, policy);
    row.price = correlate(s, price, policy);
    row.policy = policy_name(policy);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string display_name(const std::string &stream_id) {
  if (stream_id == "twitter") return "Twitter";
  if (stream_id.starts_with("irc:")) return stream_id.substr(4);
  return stream_id;
}

std::string format_correlation(const Correlation &c) {
  if (!c.r) {
    return std::string("n/a(") + (c.error ? error_name(*c.error) : "Unknown") + ")";
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", *c.r);
  return buf;
}

std::string render_table(const CorrelationReport &report, TableFormat format) {
  std::vector<std::vector<std::string>> cells;
  for (const auto &row : report.rows) {
    cells.push_back({display_name(row.stream_id), std::to_string(row.total_messages),
                     format_correlation(row.volume), format_correlation(row.price),
                     n_days_cell(row), row.policy});
  }
  std::ostringstream out;
  if (format == TableFormat::kTsv) {
    auto line = [&](const auto &cols) {
      for (size_t i = 0; i < cols.size(); ++i) out << (i ? "\t" : "") << cols[i];
      out << '\n';
    };
    line(kHeader);
    for (const auto &c : cells) line(c);
  } else {
    auto line = [&](const auto &cols) {
      out << '|';
      for (const auto &c : cols) out << ' ' << c << " |";
      out << '\n';
    };
    line(kHeader);
    out << "|---|---:|---:|---:|---:|---|\n";
    for (const auto &c : cells) line(c);
  }
  return out.str();
}

std::string report_to_json(const CorrelationReport &report) {
  ordered_json rows = ordered_json::array();
  for (const auto &row : report.rows) {
    ordered_json j;
    j["stream_id"] = row.stream_id;
    j["total_messages"] = row.total_messages;
    j["volume"] = correlation_json(row.volume);
    j["price"] = correlation_json(row.price);
    j["policy"] = row.policy;
    rows.push_back(std::move(j));
  }
  ordered_json top;
  top["rows"] = std::move(rows);
  return top.dump(2) + "\n";
}

CorrelationReport report_from_json(std::string_view json) {
  auto j = ordered_json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kMalformedRecord, "report is not a JSON object");
  }
  CorrelationReport report;
  try {
    for (const auto &r : j.at("rows")) {
      ReportRow row;
      row.stream_id = r.at("stream_id").get<std::string>();
      row.total_messages = r.at("total_messages").get<std::uint64_t>();
      row.volume = correlation_from(r.at("volume"));
      row.price = correlation_from(r.at("price"));
      row.policy = r.at("policy").get<std::string>();
      report.rows.push_back(std::move(row));
    }
  } catch (const ordered_json::exception &e) {
    throw Error(ErrorCode::kMalformedRecord, e.what());
  }
  return report;
}

std::size_t emit_plot_series(const DailySeries &daily, const MarketSeries &market,
                             std::ostream &out) {
  Aligned a = align(daily.values(), market.values);
  out << "date,count,flag,metric_value\n";
  char value[64];
  for (size_t i = 0; i < a.dates.size(); ++i) {
    auto f = daily.flags.find(a.dates[i]);
    auto res = std::to_chars(value, value + sizeof(value), a.y[i]);
    *res.ptr = '\0';
    out << format_date(a.dates[i]) << ',' << daily.counts.at(a.dates[i]) << ','
        << flag_name(f == daily.flags.end() ? DayFlag::kOk : f->second) << ',' << value
        << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "write failed");
  return a.dates.size();
}

}  // namespace cryptomine
