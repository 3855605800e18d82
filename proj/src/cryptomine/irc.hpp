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


// IRC channel log ingestion. One event per line:
//
//   chat:    [Mon Jun 1 2015] [00:03:12] <nick>\ttext
//   network: [Mon Jun 1 2015] [00:04:00] *** Join: free text
//
// Network housekeeping events of the eight known subtypes are dropped;
// everything else becomes a Message.

#ifndef CRYPTOMINE_IRC_HPP_
#define CRYPTOMINE_IRC_HPP_

#include <chrono>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>

#include "cryptomine/message.hpp"
#include "cryptomine/timeutil.hpp"

namespace cryptomine {

enum class NetworkSubtype { kJoin, kTopic, kQuit, kMode, kCreated, kPart, kNick, kNotice };

const char *subtype_name(NetworkSubtype s);
std::optional<NetworkSubtype> subtype_from_name(std::string_view name);

enum class EventKind { kChat, kNetwork };

struct IrcEvent {
  Timestamp ts;
  std::string channel;
  EventKind kind = EventKind::kChat;
  std::optional<NetworkSubtype> subtype;  // set iff kind == kNetwork
  std::string nick;
  std::string text;
};

struct IrcContext {
  std::string channel;
  std::chrono::seconds utc_offset{0};  // offset of the log's local clock
  std::optional<Date> current_date;    // last date seen in the file
  std::size_t line_number = 0;
};

// Returns nullopt for blank lines. Throws Error(kUnparsableLine) with the
// context line number. "*** Label:" lines whose label is not one of the
// eight subtypes are surfaced as chat from nick "***".
std::optional<IrcEvent> parse_log_line(std::string_view line, IrcContext &context);

enum class Disposition { kKeep, kDrop };

Disposition classify(const IrcEvent &event);

struct IrcIngestOptions {
  std::string channel;    // must start with '#'
  std::string stream_id;  // defaults to "irc:" + channel when empty
  std::chrono::seconds utc_offset{0};
  bool strict = false;
};

struct IrcIngestStats {
  std::uint64_t lines = 0;
  std::uint64_t parsed = 0;
  std::uint64_t messages = 0;
  std::uint64_t dropped_network = 0;
  std::uint64_t unparsable = 0;
  std::uint64_t blank = 0;
};

// Streams Keep events to `sink` in file order. In strict mode the first
// unparsable line aborts with Error(kUnparsableLine); otherwise it is
// counted and skipped. `stats` is updated as lines are consumed, so it is
// meaningful after an exception too.
void ingest_log(std::istream &in, const IrcIngestOptions &options,
                const MessageSink &sink, IrcIngestStats &stats);

}  // namespace cryptomine

#endif  // CRYPTOMINE_IRC_HPP_
