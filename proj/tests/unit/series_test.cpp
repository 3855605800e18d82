#include "cryptomine/series.hpp"

#include <random>
#include <sstream>

#include "cryptomine/errors.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace cryptomine;

namespace {

Date day(int y, unsigned m, unsigned d) {
  return std::chrono::sys_days{std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}};
}

Message msg(Timestamp ts) { return Message{"s", ts, "a", "t"}; }

DailySeries series_of(const std::vector<std::uint64_t> &counts) {
  DailySeries s;
  s.stream_id = "s";
  Date d = day(2015, 1, 1);
  for (auto c : counts) {
    s.counts[d] = c;
    s.flags[d] = DayFlag::kOk;
    d += std::chrono::days{1};
  }
  return s;
}

std::vector<bool> outage_vector(const DailySeries &s) {
  std::vector<bool> out;
  for (const auto &[d, f] : s.flags) out.push_back(f == DayFlag::kOutage);
  return out;
}

ErrorCode market_error(const std::string &csv) {
  std::istringstream in(csv);
  try {
    load_market_csv(in, MarketMetric::kPriceUsd);
  } catch (const Error &e) {
    return e.code();
  }
  return ErrorCode::kIo;  // sentinel: no error raised
}

}  // namespace

TEST_CASE("bucket by UTC day with interior zero fill") {
  std::vector<Message> ms = {msg(*make_timestamp(2015, 6, 1, 23, 59, 59)),
                             msg(*make_timestamp(2015, 6, 1, 0, 0, 0)),
                             msg(*make_timestamp(2015, 6, 3, 0, 0, 0))};
  auto s = bucket_daily(ms, "twitter");
  CHECK(s.stream_id == "twitter");
  REQUIRE(s.counts.size() == 3);
  CHECK(s.counts.at(day(2015, 6, 1)) == 2);
  CHECK(s.counts.at(day(2015, 6, 2)) == 0);
  CHECK(s.counts.at(day(2015, 6, 3)) == 1);
  CHECK(s.total() == 3);
  CHECK(bucket_daily({}, "x").counts.empty());
}

TEST_CASE("property: bucketing matches a histogram of generated timestamps") {
  std::mt19937_64 rng(17);
  std::vector<Message> ms;
  std::map<Date, std::uint64_t> expected;
  Timestamp base = *make_timestamp(2015, 3, 1, 0, 0, 0);
  for (int i = 0; i < 10000; ++i) {
    Timestamp ts = base + std::chrono::seconds(rng() % (86400ull * 60));
    ms.push_back(msg(ts));
    // Day index computed by integer division, independent of calendar code.
    auto secs = ts.time_since_epoch().count();
    ++expected[Date{std::chrono::days{secs / 86400}}];
  }
  auto s = bucket_daily(ms, "s");
  CHECK(s.total() == 10000);
  for (const auto &[d, c] : expected) CHECK(s.counts.at(d) == c);
  for (const auto &[d, c] : s.counts) {
    if (!expected.count(d)) CHECK(c == 0);
  }
}

TEST_CASE("gap detection examples") {
  auto flagged = detect_gaps(series_of({100, 100, 100, 100, 100, 100, 100, 0, 100, 5, 100}));
  CHECK(outage_vector(flagged) ==
        std::vector<bool>{false, false, false, false, false, false, false, true, false, true,
                          false});
  auto decline = detect_gaps(series_of({100, 95, 90, 85, 80, 75, 70, 65, 60, 55, 50}));
  for (bool b : outage_vector(decline)) CHECK_FALSE(b);
}

TEST_CASE("gap parameters are validated") {
  CHECK_THROWS_AS(detect_gaps(series_of({1}), GapParams{0.0, 7}), Error);
  CHECK_THROWS_AS(detect_gaps(series_of({1}), GapParams{1.0, 7}), Error);
  CHECK_THROWS_AS(detect_gaps(series_of({1}), GapParams{0.1, 0}), Error);
}

TEST_CASE("property: gap detection matches oracle") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<std::uint64_t> counts;
    size_t n = 1 + rng() % 40;
    for (size_t i = 0; i < n; ++i) {
      auto r = rng() % 10;
      counts.push_back(r == 0 ? 0 : r == 1 ? rng() % 10 : 50 + rng() % 100);
    }
    double theta = 0.05 + 0.9 * double(rng() % 100) / 100.0;
    size_t window = 1 + rng() % 10;
    auto got = outage_vector(detect_gaps(series_of(counts), GapParams{theta, window}));
    CHECK(got == oracle::gap_flags(counts, theta, window));
  }
}

TEST_CASE("series csv round trip") {
  auto s = detect_gaps(series_of({10, 0, 12}));
  std::ostringstream out;
  write_series_csv(s, out);
  CHECK(out.str() == "date,count,flag\n2015-01-01,10,ok\n2015-01-02,0,outage\n2015-01-03,12,ok\n");
  std::istringstream in(out.str());
  auto back = read_series_csv(in, "s");
  CHECK(back.counts == s.counts);
  CHECK(back.flags == s.flags);
}

TEST_CASE("market csv loading and errors") {
  std::istringstream in("date,value\n2015-06-01,225.5\n\n2015-06-02,0\n");
  auto m = load_market_csv(in, MarketMetric::kVolumeUsd);
  CHECK(m.metric == MarketMetric::kVolumeUsd);
  CHECK(m.values.size() == 2);
  CHECK(m.values.at(day(2015, 6, 1)) == 225.5);
  CHECK(market_error("date,value\n2015-06-01\n") == ErrorCode::kMalformedRow);
  CHECK(market_error("date,value\n2015-13-01,1\n") == ErrorCode::kMalformedRow);
  CHECK(market_error("date,value\n2015-06-01,abc\n") == ErrorCode::kMalformedRow);
  CHECK(market_error("date,value\n2015-06-01,1\n2015-06-01,2\n") == ErrorCode::kDuplicateDate);
  CHECK(market_error("date,value\n2015-06-01,-1\n") == ErrorCode::kNegativeValue);
  CHECK(market_error("") == ErrorCode::kMalformedRow);
  CHECK(market_error("2015-06-01,1\n") == ErrorCode::kMalformedRow);
}

TEST_CASE("align inner join and outage exclusion") {
  std::map<Date, double> a = {{day(2015, 6, 1), 1}, {day(2015, 6, 2), 2},
                              {day(2015, 6, 3), 3}, {day(2015, 6, 4), 4}};
  std::map<Date, double> b = {{day(2015, 6, 2), 20}, {day(2015, 6, 3), 30},
                              {day(2015, 6, 4), 40}, {day(2015, 6, 5), 50}};
  auto r = align(a, b);
  CHECK(r.x == std::vector<double>{2, 3, 4});
  CHECK(r.y == std::vector<double>{20, 30, 40});
  std::map<Date, DayFlag> flags = {{day(2015, 6, 3), DayFlag::kOutage}};
  CHECK_THROWS_AS(align(a, b, AlignPolicy::kExcludeOutages, &flags), Error);
  auto r2 = align(a, b, AlignPolicy::kExcludeOutages, &flags, 0);
  CHECK(r2.x == std::vector<double>{2, 4});
  CHECK(align(a, b, AlignPolicy::kAllDays, &flags).x.size() == 3);
  try {
    align(a, {}, AlignPolicy::kAllDays);
    FAIL("expected EmptyOverlap");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kEmptyOverlap);
  }
}

TEST_CASE("property: align equals brute-force intersection") {
  std::mt19937_64 rng(29);
  for (int iter = 0; iter < 200; ++iter) {
    std::map<Date, double> a, b;
    for (int i = 0; i < 30; ++i) {
      if (rng() % 2) a[day(2015, 1, 1) + std::chrono::days{i}] = double(rng() % 1000);
      if (rng() % 2) b[day(2015, 1, 1) + std::chrono::days{i}] = double(rng() % 1000);
    }
    auto keys = oracle::intersect_keys(a, b);
    auto r = align(a, b, AlignPolicy::kAllDays, nullptr, 0);
    REQUIRE(r.dates == keys);
    for (size_t i = 0; i < keys.size(); ++i) {
      CHECK(r.x[i] == a.at(keys[i]));
      CHECK(r.y[i] == b.at(keys[i]));
    }
  }
}
