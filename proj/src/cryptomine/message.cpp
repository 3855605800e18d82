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

#include "cryptomine/message.hpp"

#include "cryptomine/errors.hpp"
#include "json.hpp"

namespace cryptomine {

using nlohmann::ordered_json;

std::string to_json_line(const Message &m) {
  ordered_json j;
  j["stream_id"] = m.stream_id;
  j["ts"] = format_iso(m.ts);
  j["author"] = m.author;
  j["text"] = m.text;
  return j.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

Message message_from_json_line(std::string_view line) {
  auto j = ordered_json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kMalformedRecord, "message is not a JSON object");
  }
  auto field = [&](const char *name) -> const std::string & {
    auto it = j.find(name);
    if (it == j.end() || !it->is_string()) {
      throw Error(ErrorCode::kMalformedRecord,
                  std::string("missing string field '") + name + "'");
    }
    return it->get_ref<const std::string &>();
  };
  Message m;
  m.stream_id = field("stream_id");
  auto ts = parse_iso(field("ts"));
  if (!ts) throw Error(ErrorCode::kMalformedRecord, "bad ts '" + field("ts") + "'");
  m.ts = *ts;
  m.author = field("author");
  m.text = field("text");
  return m;
}

std::size_t read_messages(std::istream &in, const MessageSink &sink) {
  std::string line;
  std::size_t line_no = 0, count = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Message m;
    try {
      m = message_from_json_line(line);
    } catch (const Error &e) {
      throw Error(ErrorCode::kMalformedRecord,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
    sink(std::move(m));
    ++count;
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed");
  return count;
}

}  // namespace cryptomine
