#include "cryptomine/timeutil.hpp"

#include "doctest.h"

using namespace cryptomine;

TEST_CASE("ISO timestamps round-trip") {
  auto ts = parse_iso("2015-06-01T00:03:12Z");
  REQUIRE(ts);
  CHECK(format_iso(*ts) == "2015-06-01T00:03:12Z");
  auto shifted = parse_iso("2015-06-01T02:03:12+02:00");
  REQUIRE(shifted);
  CHECK(*shifted == *ts);
  CHECK_FALSE(parse_iso("2015-13-01T00:00:00Z"));
  CHECK_FALSE(parse_iso("garbage"));
}

TEST_CASE("dates") {
  auto d = parse_date("2015-12-31");
  REQUIRE(d);
  CHECK(format_date(*d) == "2015-12-31");
  CHECK_FALSE(parse_date("2015-02-30"));
  CHECK_FALSE(parse_date("2015-2-3"));
}

TEST_CASE("twitter created_at") {
  auto ts = parse_twitter_time("Mon Jun 01 00:03:12 +0000 2015");
  REQUIRE(ts);
  CHECK(format_iso(*ts) == "2015-06-01T00:03:12Z");
  auto east = parse_twitter_time("Mon Jun 01 02:03:12 +0200 2015");
  REQUIRE(east);
  CHECK(*east == *ts);
  CHECK_FALSE(parse_twitter_time("Mon Jun 01 00:03:12 2015"));
}

TEST_CASE("fixed utc offsets") {
  CHECK(parse_utc_offset("UTC") == std::chrono::seconds{0});
  CHECK(parse_utc_offset("-04:00") == std::chrono::seconds{-4 * 3600});
  CHECK(parse_utc_offset("+0530") == std::chrono::seconds{5 * 3600 + 30 * 60});
  CHECK(parse_utc_offset("UTC+2") == std::chrono::seconds{7200});
  CHECK_FALSE(parse_utc_offset("America/Toronto"));
}
