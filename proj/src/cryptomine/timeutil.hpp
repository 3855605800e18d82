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

#ifndef CRYPTOMINE_TIMEUTIL_HPP_
#define CRYPTOMINE_TIMEUTIL_HPP_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace cryptomine {

using Timestamp = std::chrono::sys_seconds;
using Date = std::chrono::sys_days;

Date date_of(Timestamp ts);

// "2015-06-01T00:03:12Z"
std::string format_iso(Timestamp ts);
// Accepts a trailing "Z" or a numeric offset ("+HH:MM", "+HHMM").
std::optional<Timestamp> parse_iso(std::string_view text);

// "2015-06-01"
std::string format_date(Date d);
std::optional<Date> parse_date(std::string_view text);

// Returns 1..12 for "Jan".."Dec" (case-insensitive), 0 otherwise.
unsigned month_from_abbrev(std::string_view abbrev);
bool is_weekday_abbrev(std::string_view abbrev);

// Parses a source timezone: "UTC", "Z", "+05:30", "-0400", "UTC+2".
// Only fixed offsets are supported.
std::optional<std::chrono::seconds> parse_utc_offset(std::string_view text);

// Twitter wire format: "Mon Jun 01 00:03:12 +0000 2015".
std::optional<Timestamp> parse_twitter_time(std::string_view text);

std::optional<Timestamp> make_timestamp(int year, unsigned month, unsigned day,
                                        int hour, int minute, int second);

}  // namespace cryptomine

#endif  // CRYPTOMINE_TIMEUTIL_HPP_
