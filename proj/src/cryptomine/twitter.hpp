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


#ifndef CRYPTOMINE_TWITTER_HPP_
#define CRYPTOMINE_TWITTER_HPP_

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "cryptomine/message.hpp"
#include "cryptomine/timeutil.hpp"

namespace cryptomine {

inline constexpr std::string_view kTwitterStream = "twitter";

struct TweetRecord {
  std::uint64_t id = 0;
  Timestamp created_at;
  std::string user;
  std::string text;
  std::vector<std::string> hashtags;  // lowercased, no '#'
};

// Expects sanitized JSON. Reads id (or id_str), created_at, user.screen_name,
// text and entities.hashtags[].text. Throws Error(kMalformedRecord).
TweetRecord parse_tweet(std::string_view line);

// Case-insensitive keyword test. A keyword matches when it equals one of the
// hashtags or occurs in the text bounded by non-word characters (word
// characters are ASCII alphanumerics, '_' and any non-ASCII byte). With
// `substring` the boundary check is skipped for the text.
class KeywordMatcher {
 public:
  explicit KeywordMatcher(std::vector<std::string> keywords = {"bitcoin"},
                          bool substring = false);

  bool matches(std::string_view text, std::span<const std::string> hashtags) const;
  bool matches(const TweetRecord &tweet) const {
    return matches(tweet.text, tweet.hashtags);
  }

  const std::vector<std::string> &keywords() const { return keywords_; }

 private:
  std::vector<std::string> keywords_;
  bool substring_;
};

bool matches_keywords(std::string_view text, std::span<const std::string> hashtags,
                      std::span<const std::string> keywords, bool substring = false);

Message to_message(const TweetRecord &tweet);

struct TweetIngestStats {
  std::uint64_t lines = 0;
  std::uint64_t parsed = 0;
  std::uint64_t malformed = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t matched = 0;
  std::uint64_t replacements = 0;
};

// Sanitizes each line, parses it, drops duplicate ids and forwards matching
// tweets. Malformed lines are counted and skipped unless `strict`.
class TweetIngester {
 public:
  explicit TweetIngester(KeywordMatcher matcher, bool strict = false)
      : matcher_(std::move(matcher)), strict_(strict) {}

  // Returns true if a Message was forwarded.
  bool feed(std::string &raw_line, const MessageSink &sink);
  void ingest(std::istream &in, const MessageSink &sink);

  const TweetIngestStats &stats() const { return stats_; }

 private:
  KeywordMatcher matcher_;
  bool strict_;
  TweetIngestStats stats_;
  std::unordered_set<std::uint64_t> seen_;
};

}  // namespace cryptomine

#endif  // CRYPTOMINE_TWITTER_HPP_
