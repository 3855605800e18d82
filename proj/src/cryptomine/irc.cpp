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


#include "cryptomine/irc.hpp"

#include <array>
#include <cctype>

#include "cryptomine/errors.hpp"
#include "cryptomine/sanitize.hpp"

namespace cryptomine {

namespace {

constexpr std::array<std::pair<NetworkSubtype, std::string_view>, 8> kSubtypes{{
    {NetworkSubtype::kJoin, "Join"},
    {NetworkSubtype::kTopic, "Topic"},
    {NetworkSubtype::kQuit, "Quit"},
    {NetworkSubtype::kMode, "Mode"},
    {NetworkSubtype::kCreated, "Created"},
    {NetworkSubtype::kPart, "Part"},
    {NetworkSubtype::kNick, "Nick"},
    {NetworkSubtype::kNotice, "Notice"},
}};

// Small cursor over one log line.
class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool eat(std::string_view prefix) {
    if (s_.substr(pos_).starts_with(prefix)) {
      pos_ += prefix.size();
      return true;
    }
    return false;
  }
  void skip_spaces() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }
  // Run of characters up to (not including) any of `stops`.
  std::string_view until(std::string_view stops) {
    size_t start = pos_;
    while (pos_ < s_.size() && stops.find(s_[pos_]) == std::string_view::npos) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  std::optional<int> number(size_t min_digits, size_t max_digits) {
    size_t start = pos_;
    int value = 0;
    while (pos_ < s_.size() && pos_ - start < max_digits &&
           std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      value = value * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    if (pos_ - start < min_digits) return std::nullopt;
    return value;
  }
  std::string_view rest() const { return s_.substr(pos_); }

 private:
  std::string_view s_;
  size_t pos_ = 0;
};

[[noreturn]] void reject(const IrcContext &ctx, const std::string &reason) {
  throw Error(ErrorCode::kUnparsableLine,
              "line " + std::to_string(ctx.line_number) + ": " + reason);
}

std::string_view first_word(std::string_view text) {
  size_t end = text.find_first_of(" \t");
  return text.substr(0, end);
}

}  // namespace

const char *subtype_name(NetworkSubtype s) {
  for (const auto &[value, name] : kSubtypes) {
    if (value == s) return name.data();
  }
  return "?";
}

std::optional<NetworkSubtype> subtype_from_name(std::string_view name) {
  for (const auto &[value, label] : kSubtypes) {
    if (label.size() != name.size()) continue;
    bool same = true;
    for (size_t i = 0; i < name.size() && same; ++i) {
      same = std::tolower(static_cast<unsigned char>(name[i])) ==
             std::tolower(static_cast<unsigned char>(label[i]));
    }
    if (same) return value;
  }
  return std::nullopt;
}

std::optional<IrcEvent> parse_log_line(std::string_view line, IrcContext &ctx) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.find_first_not_of(" \t") == std::string_view::npos) return std::nullopt;

  Cursor cur(line);
  // [Dow Mon D YYYY]
  if (!cur.eat('[')) reject(ctx, "expected '[' before date");
  if (!is_weekday_abbrev(cur.until(" ]"))) reject(ctx, "bad weekday");
  cur.skip_spaces();
  unsigned month = month_from_abbrev(cur.until(" ]"));
  if (month == 0) reject(ctx, "bad month");
  cur.skip_spaces();
  auto day = cur.number(1, 2);
  cur.skip_spaces();
  auto year = cur.number(4, 4);
  if (!day || !year || !cur.eat(']')) reject(ctx, "bad date field");
  cur.skip_spaces();
  // [HH:MM:SS]
  if (!cur.eat('[')) reject(ctx, "expected '[' before time");
  auto hh = cur.number(1, 2);
  bool ok = hh && cur.eat(':');
  auto mm = ok ? cur.number(2, 2) : std::nullopt;
  ok = mm && cur.eat(':');
  auto ss = ok ? cur.number(2, 2) : std::nullopt;
  if (!ss || !cur.eat(']')) reject(ctx, "bad time field");
  auto local = make_timestamp(*year, month, unsigned(*day), *hh, *mm, *ss);
  if (!local) reject(ctx, "date or time out of range");
  cur.skip_spaces();

  IrcEvent ev;
  ev.channel = ctx.channel;
  ev.ts = *local - ctx.utc_offset;
  ctx.current_date = date_of(*local);

  if (cur.eat('<')) {
    std::string_view nick = cur.until(">");
    if (nick.empty() || !cur.eat('>')) reject(ctx, "bad nick");
    if (!cur.eat('\t') && !cur.eat(' ') && !cur.rest().empty()) {
      reject(ctx, "expected tab after nick");
    }
    ev.kind = EventKind::kChat;
    ev.nick = std::string(nick);
    ev.text = std::string(cur.rest());
    return ev;
  }
  if (cur.eat("***")) {
    cur.skip_spaces();
    std::string_view label = cur.until(":");
    if (label.empty() || !cur.eat(':')) reject(ctx, "bad network event label");
    cur.skip_spaces();
    std::string_view body = cur.rest();
    if (auto subtype = subtype_from_name(label)) {
      ev.kind = EventKind::kNetwork;
      ev.subtype = subtype;
      switch (*subtype) {
        case NetworkSubtype::kJoin:
        case NetworkSubtype::kPart:
        case NetworkSubtype::kQuit:
        case NetworkSubtype::kNick:
          ev.nick = std::string(first_word(body));
          break;
        default:
          break;
      }
      ev.text = std::string(body);
    } else {
      ev.kind = EventKind::kChat;
      ev.nick = "***";
      ev.text = std::string(label) + ": " + std::string(body);
    }
    return ev;
  }
  reject(ctx, "expected '<nick>' or '***'");
}

Disposition classify(const IrcEvent &event) {
  if (event.kind == EventKind::kNetwork && event.subtype.has_value()) {
    return Disposition::kDrop;
  }
  return Disposition::kKeep;
}

void ingest_log(std::istream &in, const IrcIngestOptions &options,
                const MessageSink &sink, IrcIngestStats &stats) {
  if (options.channel.empty() || options.channel.front() != '#') {
    throw Error(ErrorCode::kInvalidArgument,
                "channel must start with '#': '" + options.channel + "'");
  }
  IrcContext ctx;
  ctx.channel = options.channel;
  ctx.utc_offset = options.utc_offset;
  const std::string stream_id =
      options.stream_id.empty() ? "irc:" + options.channel : options.stream_id;

  std::string line;
  while (std::getline(in, line)) {
    ++stats.lines;
    ctx.line_number = stats.lines;
    std::optional<IrcEvent> ev;
    try {
      ev = parse_log_line(line, ctx);
    } catch (const Error &) {
      ++stats.unparsable;
      if (options.strict) throw;
      continue;
    }
    if (!ev) {
      ++stats.blank;
      continue;
    }
    ++stats.parsed;
    if (classify(*ev) == Disposition::kDrop) {
      ++stats.dropped_network;
      continue;
    }
    Message m;
    m.stream_id = stream_id;
    m.ts = ev->ts;
    m.author = std::move(ev->nick);
    m.text = std::move(ev->text);
    sanitize_line_inplace(m.text);
    ++stats.messages;
    sink(std::move(m));
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed");
}

}  // namespace cryptomine
