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


// Stand-off annotation of message text. Documents are immutable; stages
// append typed spans whose offsets count Unicode scalar values.

#ifndef CRYPTOMINE_ANNOTATE_HPP_
#define CRYPTOMINE_ANNOTATE_HPP_

#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cryptomine {

// Invalid UTF-8 bytes decode to U+FFFD.
std::u32string decode_utf8(std::string_view bytes);
std::string encode_utf8(std::u32string_view chars);

bool is_unicode_space(char32_t c);

namespace ann {
inline constexpr std::string_view kToken = "Token";
inline constexpr std::string_view kHashtag = "Hashtag";
inline constexpr std::string_view kMention = "Mention";
inline constexpr std::string_view kUrl = "URL";
inline constexpr std::string_view kLookup = "Lookup";
inline constexpr std::string_view kEntity = "Entity";
}  // namespace ann

class Document {
 public:
  Document(std::string doc_id, std::string_view text);

  const std::string &doc_id() const { return doc_id_; }
  // Valid UTF-8 (invalid input bytes were replaced with U+FFFD).
  const std::string &text() const { return text_; }
  const std::u32string &chars() const { return chars_; }
  size_t length() const { return chars_.size(); }

  // UTF-8 text of [start, end) in scalar offsets.
  std::string slice(size_t start, size_t end) const;

 private:
  std::string doc_id_;
  std::u32string chars_;
  std::string text_;
};

using FeatureMap = std::map<std::string, std::string>;

struct Annotation {
  std::uint32_t id = 0;
  std::string type;
  size_t start = 0;
  size_t end = 0;
  FeatureMap features;

  bool operator==(const Annotation &) const = default;
};

// Half-open overlap test. A zero-width window at p overlaps [s, e) iff
// s <= p < e; a zero-width span at q lies in [ws, we) iff ws <= q < we; two
// zero-width ranges overlap iff they coincide.
bool spans_overlap(size_t start, size_t end, size_t window_start, size_t window_end);

class AnnotatedDocument {
 public:
  explicit AnnotatedDocument(Document doc) : doc_(std::move(doc)) {}

  const Document &document() const { return doc_; }
  // In id (insertion) order.
  const std::vector<Annotation> &annotations() const { return anns_; }

  // Assigns the next dense id. Throws Error(kInvalidArgument) for spans
  // outside the text.
  const Annotation &add(std::string type, size_t start, size_t end,
                        FeatureMap features = {});

  std::vector<Annotation> of_type(std::string_view type) const;

  // Annotations of the given types (all types when empty) overlapping
  // [start, end), ordered by (start, end, id).
  std::vector<Annotation> annotations_in(std::span<const std::string> types,
                                         size_t start, size_t end) const;

  std::string to_json() const;
  // Throws Error(kMalformedRecord).
  static AnnotatedDocument from_json(std::string_view json);

 private:
  void insert(Annotation a);

  Document doc_;
  std::vector<Annotation> anns_;
  std::vector<std::uint32_t> by_start_;  // indices into anns_, sorted
  size_t max_length_ = 0;
  std::uint32_t next_id_ = 0;
};

// Token, Hashtag, Mention and URL spans partitioning the non-whitespace
// characters, left to right. Ids are provisional (0..n-1).
std::vector<Annotation> tokenize(const Document &doc);

class Gazetteer {
 public:
  struct Entry {
    std::string major;
    std::string minor;
  };

  // Later entries for the same surface form replace earlier ones. Throws
  // Error(kInvalidArgument) on an empty surface.
  void add(std::string_view surface, std::string major, std::string minor);

  // "surface<TAB>major<TAB>minor" per line; blank and '#' lines skipped.
  // Throws Error(kMalformedRow).
  static Gazetteer load(std::istream &in);

  size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Lookup of a single lowercased token surface.
  const Entry *find_single(std::string_view lowered) const;

 private:
  friend std::vector<Annotation> gazetteer_lookup(const Document &,
                                                  std::span<const Annotation>,
                                                  const Gazetteer &);
  struct Node {
    std::map<std::string, size_t, std::less<>> next;
    std::optional<Entry> entry;
  };
  std::vector<Node> nodes_{Node{}};
  size_t size_ = 0;
};

// Case-insensitive fold used for gazetteer keys (ASCII and Latin-1).
std::string fold_case(std::string_view utf8);

// Longest match over consecutive token surfaces, leftmost first. `tokens`
// are tokenizer spans in document order.
std::vector<Annotation> gazetteer_lookup(const Document &doc,
                                         std::span<const Annotation> tokens,
                                         const Gazetteer &gazetteer);

struct Resources {
  const Gazetteer *gazetteer = nullptr;
};

class Annotator {
 public:
  virtual ~Annotator() = default;
  virtual std::string_view name() const = 0;
  virtual std::vector<std::string> inputs() const = 0;
  virtual std::vector<std::string> outputs() const = 0;
  virtual void run(AnnotatedDocument &doc, const Resources &resources) const = 0;
};

// Known stages: "tokenize", "gazetteer", "entity". Throws
// Error(kUnknownStage).
std::unique_ptr<Annotator> make_annotator(std::string_view name);

class Pipeline {
 public:
  Pipeline() = default;

  // Throws Error(kUnknownStage) or Error(kStageDependencyViolation) when a
  // stage needs an annotation type no earlier stage produces.
  static Pipeline from_names(std::span<const std::string> names);
  static Pipeline standard();

  std::vector<std::string> stage_names() const;
  bool empty() const { return stages_.empty(); }

  AnnotatedDocument run(Document doc, const Resources &resources) const;

 private:
  std::vector<std::shared_ptr<const Annotator>> stages_;
};

inline AnnotatedDocument run_pipeline(Document doc, const Pipeline &pipeline,
                                      const Resources &resources) {
  return pipeline.run(std::move(doc), resources);
}

}  // namespace cryptomine

#endif  // CRYPTOMINE_ANNOTATE_HPP_
