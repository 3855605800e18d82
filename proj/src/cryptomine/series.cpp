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


#include "cryptomine/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>

#include "cryptomine/errors.hpp"

namespace cryptomine {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  for (;;) {
    size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void bad_row(size_t line_no, const std::string &why) {
  throw Error(ErrorCode::kMalformedRow, "line " + std::to_string(line_no) + ": " + why);
}

double median_of(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  if (n % 2 == 1) return double(v[n / 2]);
  return (double(v[n / 2 - 1]) + double(v[n / 2])) / 2.0;
}

}  // namespace

const char *flag_name(DayFlag f) { return f == DayFlag::kOk ? "ok" : "outage"; }

const char *policy_name(AlignPolicy p) {
  return p == AlignPolicy::kAllDays ? "AllDays" : "ExcludeOutages";
}

std::uint64_t DailySeries::total() const {
  std::uint64_t sum = 0;
  for (const auto &[d, c] : counts) sum += c;
  return sum;
}

std::map<Date, double> DailySeries::values() const {
  std::map<Date, double> out;
  for (const auto &[d, c] : counts) out.emplace_hint(out.end(), d, double(c));
  return out;
}

std::uint64_t DailyCounter::total() const {
  std::uint64_t sum = 0;
  for (const auto &[d, c] : counts_) sum += c;
  return sum;
}

DailySeries DailyCounter::finish(std::string stream_id) const {
  DailySeries s;
  s.stream_id = std::move(stream_id);
  if (counts_.empty()) return s;
  const Date first = counts_.begin()->first;
  const Date last = counts_.rbegin()->first;
  for (Date d = first; d <= last; d += std::chrono::days{1}) {
    auto it = counts_.find(d);
    s.counts.emplace_hint(s.counts.end(), d, it == counts_.end() ? 0 : it->second);
    s.flags.emplace_hint(s.flags.end(), d, DayFlag::kOk);
  }
  return s;
}

DailySeries bucket_daily(std::span<const Message> messages, std::string stream_id) {
  DailyCounter counter;
  for (const auto &m : messages) counter.add(m.ts);
  return counter.finish(std::move(stream_id));
}

void GapParams::validate() const {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "theta must be in (0, 1)");
  }
  if (window < 1) throw Error(ErrorCode::kInvalidArgument, "window must be >= 1");
}

DailySeries detect_gaps(DailySeries series, const GapParams &params) {
  params.validate();
  struct Past {
    std::uint64_t count;
    bool outage;
  };
  std::deque<Past> history;  // last `window` days, oldest first
  series.flags.clear();
  for (const auto &[date, count] : series.counts) {
    bool outage = count == 0;
    if (!outage) {
      std::vector<std::uint64_t> usable;
      for (const auto &p : history) {
        if (!p.outage) usable.push_back(p.count);
      }
      if (!usable.empty()) outage = double(count) < params.theta * median_of(usable);
    }
    series.flags.emplace_hint(series.flags.end(), date,
                              outage ? DayFlag::kOutage : DayFlag::kOk);
    history.push_back({count, outage});
    if (history.size() > params.window) history.pop_front();
  }
  return series;
}

void write_series_csv(const DailySeries &series, std::ostream &out) {
  out << "date,count,flag\n";
  for (const auto &[date, count] : series.counts) {
    auto f = series.flags.find(date);
    out << format_date(date) << ',' << count << ','
        << flag_name(f == series.flags.end() ? DayFlag::kOk : f->second) << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "write failed");
}

DailySeries read_series_csv(std::istream &in, std::string stream_id) {
  DailySeries s;
  s.stream_id = std::move(stream_id);
  std::string line;
  size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cols = split_commas(line);
    if (!header) {
      if (cols.size() < 2 || cols[0] != "date" || cols[1] != "count") {
        bad_row(line_no, "expected header 'date,count,flag'");
      }
      header = true;
      continue;
    }
    if (cols.size() != 3) bad_row(line_no, "expected 3 columns");
    auto date = parse_date(cols[0]);
    if (!date) bad_row(line_no, "bad date '" + std::string(cols[0]) + "'");
    std::uint64_t count = 0;
    auto [p, ec] = std::from_chars(cols[1].data(), cols[1].data() + cols[1].size(), count);
    if (ec != std::errc() || p != cols[1].data() + cols[1].size()) {
      bad_row(line_no, "bad count '" + std::string(cols[1]) + "'");
    }
    DayFlag flag;
    if (cols[2] == "ok") {
      flag = DayFlag::kOk;
    } else if (cols[2] == "outage") {
      flag = DayFlag::kOutage;
    } else {
      bad_row(line_no, "bad flag '" + std::string(cols[2]) + "'");
    }
    if (!s.counts.emplace(*date, count).second) {
      throw Error(ErrorCode::kDuplicateDate, format_date(*date));
    }
    s.flags.emplace(*date, flag);
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed");
  return s;
}

MarketSeries load_market_csv(std::istream &in, MarketMetric metric) {
  MarketSeries s;
  s.metric = metric;
  std::string line;
  size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cols = split_commas(line);
    if (!header) {
      if (cols.size() != 2 || cols[0] != "date" || cols[1] != "value") {
        bad_row(line_no, "expected header 'date,value'");
      }
      header = true;
      continue;
    }
    if (cols.size() != 2) bad_row(line_no, "expected 2 columns");
    auto date = parse_date(cols[0]);
    if (!date) bad_row(line_no, "bad date '" + std::string(cols[0]) + "'");
    double value = 0.0;
    auto [p, ec] = std::from_chars(cols[1].data(), cols[1].data() + cols[1].size(), value);
    if (ec != std::errc() || p != cols[1].data() + cols[1].size() || !std::isfinite(value)) {
      bad_row(line_no, "bad value '" + std::string(cols[1]) + "'");
    }
    if (value < 0.0) {
      throw Error(ErrorCode::kNegativeValue, format_date(*date) + " has " + std::string(cols[1]));
    }
    if (!s.values.emplace(*date, value).second) {
      throw Error(ErrorCode::kDuplicateDate, format_date(*date));
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed");
  if (!header) bad_row(line_no, "missing header 'date,value'");
  return s;
}

Aligned align(const std::map<Date, double> &a, const std::map<Date, double> &b,
              AlignPolicy policy, const std::map<Date, DayFlag> *flags,
              std::size_t min_days) {
  Aligned out;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      bool keep = true;
      if (policy == AlignPolicy::kExcludeOutages && flags != nullptr) {
        auto f = flags->find(ia->first);
        keep = f == flags->end() || f->second != DayFlag::kOutage;
      }
      if (keep) {
        out.x.push_back(ia->second);
        out.y.push_back(ib->second);
        out.dates.push_back(ia->first);
      }
      ++ia;
      ++ib;
    }
  }
  if (out.dates.size() < min_days) {
    throw Error(ErrorCode::kEmptyOverlap, std::to_string(out.dates.size()) +
                                              " overlapping days, need " +
                                              std::to_string(min_days));
  }
  return out;
}

}  // namespace cryptomine
