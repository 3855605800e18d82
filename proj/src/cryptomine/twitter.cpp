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


#include "cryptomine/twitter.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "cryptomine/errors.hpp"
#include "cryptomine/sanitize.hpp"
#include "json.hpp"

namespace cryptomine {

namespace {

using nlohmann::json;

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = char(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_word_byte(unsigned char c) {
  return std::isalnum(c) || c == '_' || c >= 0x80;
}

[[noreturn]] void malformed(const std::string &why) {
  throw Error(ErrorCode::kMalformedRecord, why);
}

}  // namespace

TweetRecord parse_tweet(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) malformed("invalid JSON");
  if (!j.is_object()) malformed("record is not an object");

  TweetRecord t;
  if (auto it = j.find("id"); it != j.end() && it->is_number_unsigned()) {
    t.id = it->get<std::uint64_t>();
  } else if (auto s = j.find("id_str"); s != j.end() && s->is_string()) {
    const auto &str = s->get_ref<const std::string &>();
    auto [p, ec] = std::from_chars(str.data(), str.data() + str.size(), t.id);
    if (ec != std::errc() || p != str.data() + str.size()) malformed("bad id_str");
  } else {
    malformed("missing id");
  }

  auto created = j.find("created_at");
  if (created == j.end() || !created->is_string()) malformed("missing created_at");
  auto ts = parse_twitter_time(created->get_ref<const std::string &>());
  if (!ts) malformed("bad created_at '" + created->get<std::string>() + "'");
  t.created_at = *ts;

  auto user = j.find("user");
  if (user == j.end() || !user->is_object()) malformed("missing user");
  auto name = user->find("screen_name");
  if (name == user->end() || !name->is_string()) malformed("missing user.screen_name");
  t.user = name->get<std::string>();

  auto text = j.find("text");
  if (text == j.end() || !text->is_string()) malformed("missing text");
  t.text = text->get<std::string>();

  if (auto ent = j.find("entities"); ent != j.end() && ent->is_object()) {
    if (auto tags = ent->find("hashtags"); tags != ent->end() && tags->is_array()) {
      for (const auto &tag : *tags) {
        auto tt = tag.find("text");
        if (tt != tag.end() && tt->is_string()) {
          t.hashtags.push_back(lower_ascii(tt->get_ref<const std::string &>()));
        }
      }
    }
  }
  return t;
}

KeywordMatcher::KeywordMatcher(std::vector<std::string> keywords, bool substring)
    : substring_(substring) {
  for (auto &k : keywords) {
    if (!k.empty() && k.front() == '#') k.erase(0, 1);
    if (!k.empty()) keywords_.push_back(lower_ascii(k));
  }
  if (keywords_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "keyword list is empty");
  }
}

bool KeywordMatcher::matches(std::string_view text,
                             std::span<const std::string> hashtags) const {
  for (const auto &tag : hashtags) {
    std::string lowered = lower_ascii(tag);
    if (!lowered.empty() && lowered.front() == '#') lowered.erase(0, 1);
    if (std::find(keywords_.begin(), keywords_.end(), lowered) != keywords_.end()) {
      return true;
    }
  }
  const std::string haystack = lower_ascii(text);
  for (const auto &kw : keywords_) {
    for (size_t pos = haystack.find(kw); pos != std::string::npos;
         pos = haystack.find(kw, pos + 1)) {
      if (substring_) return true;
      size_t end = pos + kw.size();
      bool left = pos == 0 || !is_word_byte(static_cast<unsigned char>(haystack[pos - 1]));
      bool right = end == haystack.size() ||
                   !is_word_byte(static_cast<unsigned char>(haystack[end]));
      if (left && right) return true;
    }
  }
  return false;
}

bool matches_keywords(std::string_view text, std::span<const std::string> hashtags,
                      std::span<const std::string> keywords, bool substring) {
  return KeywordMatcher({keywords.begin(), keywords.end()}, substring)
      .matches(text, hashtags);
}

Message to_message(const TweetRecord &tweet) {
  Message m;
  m.stream_id = std::string(kTwitterStream);
  m.ts = tweet.created_at;
  m.author = tweet.user;
  m.text = tweet.text;
  sanitize_line_inplace(m.text);
  return m;
}

bool TweetIngester::feed(std::string &raw_line, const MessageSink &sink) {
  ++stats_.lines;
  if (raw_line.find_first_not_of(" \t\r") == std::string::npos) return false;
  stats_.replacements += sanitize_line_inplace(raw_line).replacements;
  TweetRecord tweet;
  try {
    tweet = parse_tweet(raw_line);
  } catch (const Error &e) {
    ++stats_.malformed;
    if (strict_) {
      throw Error(ErrorCode::kMalformedRecord,
                  "line " + std::to_string(stats_.lines) + ": " + e.what());
    }
    return false;
  }
  ++stats_.parsed;
  if (!seen_.insert(tweet.id).second) {
    ++stats_.duplicates;
    return false;
  }
  if (!matcher_.matches(tweet)) return false;
  ++stats_.matched;
  sink(to_message(tweet));
  return true;
}

void TweetIngester::ingest(std::istream &in, const MessageSink &sink) {
  std::string line;
  while (std::getline(in, line)) feed(line, sink);
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed");
}

}  // namespace cryptomine
