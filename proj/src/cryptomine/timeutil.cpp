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

#include "cryptomine/timeutil.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace cryptomine {

namespace {

constexpr std::array<std::string_view, 12> kMonths = {
    "jan", "feb", "mar", "apr", "may", "jun",
    "jul", "aug", "sep", "oct", "nov", "dec"};
constexpr std::array<std::string_view, 7> kWeekdays = {
    "sun", "mon", "tue", "wed", "thu", "fri", "sat"};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

// Parses exactly `width` decimal digits.
bool read_fixed(std::string_view text, size_t pos, size_t width, int *out) {
  if (pos + width > text.size()) return false;
  int value = 0;
  for (size_t i = pos; i < pos + width; ++i) {
    char c = text[i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  *out = value;
  return true;
}

// "+HH:MM", "+HHMM", "+HH", "-..." -> seconds east of UTC.
std::optional<std::chrono::seconds> parse_signed_offset(std::string_view t) {
  if (t.empty() || (t[0] != '+' && t[0] != '-')) return std::nullopt;
  int sign = t[0] == '-' ? -1 : 1;
  t.remove_prefix(1);
  int hours = 0, minutes = 0;
  if (t.size() == 1 || t.size() == 2) {
    if (!read_fixed(t, 0, t.size(), &hours)) return std::nullopt;
  } else if (t.size() == 4) {
    if (!read_fixed(t, 0, 2, &hours) || !read_fixed(t, 2, 2, &minutes)) {
      return std::nullopt;
    }
  } else if (t.size() == 5 && t[2] == ':') {
    if (!read_fixed(t, 0, 2, &hours) || !read_fixed(t, 3, 2, &minutes)) {
      return std::nullopt;
    }
  } else {
    return std::nullopt;
  }
  if (hours > 14 || minutes > 59) return std::nullopt;
  return std::chrono::seconds(sign * (hours * 3600 + minutes * 60));
}

}  // namespace

Date date_of(Timestamp ts) { return std::chrono::floor<std::chrono::days>(ts); }

std::optional<Timestamp> make_timestamp(int year, unsigned month, unsigned day,
                                        int hour, int minute, int second) {
  using namespace std::chrono;
  year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                     std::chrono::day{day}};
  if (!ymd.ok()) return std::nullopt;
  if (hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0 ||
      second > 60) {
    return std::nullopt;
  }
  return sys_days{ymd} + hours{hour} + minutes{minute} + seconds{second};
}

std::string format_date(Date d) {
  std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

std::string format_iso(Timestamp ts) {
  Date d = date_of(ts);
  auto secs = (ts - d).count();
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%sT%02d:%02d:%02dZ", format_date(d).c_str(),
                int(secs / 3600), int(secs / 60 % 60), int(secs % 60));
  return buf;
}

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y, m, d;
  if (!read_fixed(text, 0, 4, &y) || !read_fixed(text, 5, 2, &m) ||
      !read_fixed(text, 8, 2, &d)) {
    return std::nullopt;
  }
  std::chrono::year_month_day ymd{std::chrono::year{y},
                                  std::chrono::month{unsigned(m)},
                                  std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{ymd};
}

std::optional<Timestamp> parse_iso(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SS then Z or offset.
  if (text.size() < 20) return std::nullopt;
  auto date = parse_date(text.substr(0, 10));
  if (!date || (text[10] != 'T' && text[10] != ' ')) return std::nullopt;
  int h, mi, s;
  if (!read_fixed(text, 11, 2, &h) || text[13] != ':' ||
      !read_fixed(text, 14, 2, &mi) || text[16] != ':' ||
      !read_fixed(text, 17, 2, &s)) {
    return std::nullopt;
  }
  if (h > 23 || mi > 59 || s > 60) return std::nullopt;
  std::string_view zone = text.substr(19);
  std::chrono::seconds offset{0};
  if (zone != "Z") {
    auto parsed = parse_signed_offset(zone);
    if (!parsed) return std::nullopt;
    offset = *parsed;
  }
  return Timestamp{*date} + std::chrono::hours{h} + std::chrono::minutes{mi} +
         std::chrono::seconds{s} - offset;
}

unsigned month_from_abbrev(std::string_view abbrev) {
  for (size_t i = 0; i < kMonths.size(); ++i) {
    if (iequals(abbrev, kMonths[i])) return unsigned(i + 1);
  }
  return 0;
}

bool is_weekday_abbrev(std::string_view abbrev) {
  for (auto w : kWeekdays) {
    if (iequals(abbrev, w)) return true;
  }
  return false;
}

std::optional<std::chrono::seconds> parse_utc_offset(std::string_view text) {
  if (text.empty() || iequals(text, "utc") || iequals(text, "z") ||
      iequals(text, "gmt")) {
    return std::chrono::seconds{0};
  }
  if (text.size() > 3 && (iequals(text.substr(0, 3), "utc") ||
                          iequals(text.substr(0, 3), "gmt"))) {
    text.remove_prefix(3);
  }
  return parse_signed_offset(text);
}

std::optional<Timestamp> parse_twitter_time(std::string_view text) {
  // Dow Mon DD HH:MM:SS +0000 YYYY
  if (text.size() != 30) return std::nullopt;
  if (!is_weekday_abbrev(text.substr(0, 3)) || text[3] != ' ' ||
      text[7] != ' ' || text[10] != ' ' || text[19] != ' ' || text[25] != ' ') {
    return std::nullopt;
  }
  unsigned month = month_from_abbrev(text.substr(4, 3));
  int day, h, mi, s, year;
  if (month == 0 || !read_fixed(text, 8, 2, &day) ||
      !read_fixed(text, 11, 2, &h) || text[13] != ':' ||
      !read_fixed(text, 14, 2, &mi) || text[16] != ':' ||
      !read_fixed(text, 17, 2, &s) || !read_fixed(text, 26, 4, &year)) {
    return std::nullopt;
  }
  auto offset = parse_signed_offset(text.substr(20, 5));
  if (!offset) return std::nullopt;
  auto ts = make_timestamp(year, month, unsigned(day), h, mi, s);
  if (!ts) return std::nullopt;
  return *ts - *offset;
}

}  // namespace cryptomine
