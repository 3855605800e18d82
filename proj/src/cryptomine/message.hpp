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

#ifndef CRYPTOMINE_MESSAGE_HPP_
#define CRYPTOMINE_MESSAGE_HPP_

#include <functional>
#include <istream>
#include <string>
#include <string_view>

#include "cryptomine/timeutil.hpp"

namespace cryptomine {

// Normalized record shared by every stage. Stream ids look like "twitter" or
// "irc:#bitcoin".
struct Message {
  std::string stream_id;
  Timestamp ts;
  std::string author;
  std::string text;

  bool operator==(const Message &) const = default;
};

using MessageSink = std::function<void(Message &&)>;

// One JSON object per line: {"stream_id","ts","author","text"}.
std::string to_json_line(const Message &m);

// Throws Error(kMalformedRecord).
Message message_from_json_line(std::string_view line);

// Reads every non-blank line of a Message JSONL stream. Returns the number of
// messages delivered. Throws Error(kMalformedRecord) with the line number.
std::size_t read_messages(std::istream &in, const MessageSink &sink);

}  // namespace cryptomine

#endif  // CRYPTOMINE_MESSAGE_HPP_
