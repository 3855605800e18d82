#include "cryptomine/irc.hpp"

#include <fstream>
#include <sstream>

#include "cryptomine/errors.hpp"
#include "doctest.h"

using namespace cryptomine;

namespace {

IrcContext context() {
  IrcContext ctx;
  ctx.channel = "#bitcoin";
  return ctx;
}

std::vector<Message> ingest(const std::string &text, IrcIngestStats &st, bool strict = false) {
  std::istringstream in(text);
  IrcIngestOptions opts;
  opts.channel = "#bitcoin";
  opts.strict = strict;
  std::vector<Message> out;
  ingest_log(in, opts, [&](Message &&m) { out.push_back(std::move(m)); }, st);
  return out;
}

}  // namespace

TEST_CASE("chat line") {
  auto ctx = context();
  auto ev = parse_log_line("[Mon Jun 1 2015] [00:03:12] <alice>\tprice is moving", ctx);
  REQUIRE(ev);
  CHECK(ev->kind == EventKind::kChat);
  CHECK(ev->nick == "alice");
  CHECK(ev->text == "price is moving");
  CHECK(ev->channel == "#bitcoin");
  CHECK(format_iso(ev->ts) == "2015-06-01T00:03:12Z");
  CHECK(classify(*ev) == Disposition::kKeep);
}

TEST_CASE("network line") {
  auto ctx = context();
  auto ev = parse_log_line(
      "[Mon Jun 1 2015] [00:04:00] *** Join: bob (bob@host) joined #bitcoin", ctx);
  REQUIRE(ev);
  CHECK(ev->kind == EventKind::kNetwork);
  CHECK(ev->subtype == NetworkSubtype::kJoin);
  CHECK(ev->nick == "bob");
}

TEST_CASE("garbage is unparsable") {
  auto ctx = context();
  ctx.line_number = 12;
  try {
    parse_log_line("garbage line", ctx);
    FAIL("expected UnparsableLine");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kUnparsableLine);
    CHECK(std::string(e.what()).find("line 12") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_log_line("[Mon Jun 1 2015] [25:00:00] <a>\tx", ctx), Error);
  CHECK_THROWS_AS(parse_log_line("[Mon Jun 31 2015] [10:00:00] <a>\tx", ctx), Error);
  CHECK_THROWS_AS(parse_log_line("[Mon Jun 1 2015] [10:00:00] <>\tx", ctx), Error);
}

TEST_CASE("blank lines are a skip signal") {
  auto ctx = context();
  CHECK_FALSE(parse_log_line("", ctx));
  CHECK_FALSE(parse_log_line("   \t", ctx));
}

TEST_CASE("every listed network subtype is dropped") {
  const char *names[] = {"Join", "Topic", "Quit", "Mode", "Created", "Part", "Nick", "Notice"};
  for (const char *name : names) {
    auto ctx = context();
    auto ev = parse_log_line(std::string("[Mon Jun 1 2015] [00:04:00] *** ") + name + ": x", ctx);
    REQUIRE(ev);
    CHECK(ev->kind == EventKind::kNetwork);
    CHECK(classify(*ev) == Disposition::kDrop);
  }
}

TEST_CASE("unknown network labels surface as chat") {
  auto ctx = context();
  auto ev = parse_log_line("[Mon Jun 1 2015] [00:04:00] *** Kick: eve was kicked", ctx);
  REQUIRE(ev);
  CHECK(ev->kind == EventKind::kChat);
  CHECK(ev->nick == "***");
  CHECK(classify(*ev) == Disposition::kKeep);
}

TEST_CASE("source timezone is normalized to UTC") {
  auto ctx = context();
  ctx.utc_offset = std::chrono::hours{-4};
  auto ev = parse_log_line("[Mon Jun 1 2015] [22:00:00] <a>\tlate", ctx);
  REQUIRE(ev);
  CHECK(format_iso(ev->ts) == "2015-06-02T02:00:00Z");
}

TEST_CASE("fixture log: 5 chat + 8 network lines") {
  std::ifstream in(CRYPTOMINE_TEST_DATA "/fixtures/irc_all_subtypes.log");
  REQUIRE(in);
  IrcIngestOptions opts;
  opts.channel = "#bitcoin";
  IrcIngestStats st;
  std::vector<Message> out;
  ingest_log(in, opts, [&](Message &&m) { out.push_back(std::move(m)); }, st);
  CHECK(out.size() == 5);
  CHECK(st.dropped_network == 8);
  CHECK(st.parsed == st.messages + st.dropped_network);
  CHECK(st.lines == st.messages + st.dropped_network + st.unparsable + st.blank);
  CHECK(st.blank == 1);
  for (size_t i = 1; i < out.size(); ++i) CHECK(out[i - 1].ts <= out[i].ts);
  CHECK(out.front().stream_id == "irc:#bitcoin");
  CHECK(out.front().author == "alice");
}

TEST_CASE("empty file yields nothing") {
  IrcIngestStats st;
  CHECK(ingest("", st).empty());
  CHECK(st.lines == 0);
}

TEST_CASE("lenient mode skips unparsable lines") {
  IrcIngestStats st;
  auto out = ingest(
      "[Mon Jun 1 2015] [00:03:12] <alice>\tone\n"
      "damaged line\n"
      "[Mon Jun 1 2015] [00:03:13] <bob>\ttwo\n",
      st);
  CHECK(out.size() == 2);
  CHECK(st.unparsable == 1);
}

TEST_CASE("strict mode aborts on the first unparsable line") {
  IrcIngestStats st;
  CHECK_THROWS_AS(ingest("[Mon Jun 1 2015] [00:03:12] <a>\tok\nbroken\n", st, true), Error);
  CHECK(st.unparsable == 1);
  CHECK(st.messages == 1);
}

TEST_CASE("chat text is escape-sanitized") {
  IrcIngestStats st;
  auto out = ingest("[Mon Jun 1 2015] [00:03:12] <a>\tsee \\u2026 there\n", st);
  REQUIRE(out.size() == 1);
  CHECK(out[0].text == "see        there");
}

TEST_CASE("channel must start with #") {
  std::istringstream in("");
  IrcIngestOptions opts;
  opts.channel = "bitcoin";
  IrcIngestStats st;
  CHECK_THROWS_AS(ingest_log(in, opts, [](Message &&) {}, st), Error);
}
