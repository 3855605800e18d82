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


#include "cryptomine/annotate.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "cryptomine/errors.hpp"
#include "json.hpp"

namespace cryptomine {

using nlohmann::ordered_json;

std::u32string decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  size_t i = 0;
  const size_t n = bytes.size();
  while (i < n) {
    unsigned char b0 = static_cast<unsigned char>(bytes[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    size_t len = 0;
    char32_t cp = 0, min = 0;
    if ((b0 & 0xe0) == 0xc0) {
      len = 2, cp = b0 & 0x1f, min = 0x80;
    } else if ((b0 & 0xf0) == 0xe0) {
      len = 3, cp = b0 & 0x0f, min = 0x800;
    } else if ((b0 & 0xf8) == 0xf0) {
      len = 4, cp = b0 & 0x07, min = 0x10000;
    }
    bool valid = len != 0 && i + len <= n;
    for (size_t k = 1; valid && k < len; ++k) {
      unsigned char b = static_cast<unsigned char>(bytes[i + k]);
      if ((b & 0xc0) != 0x80) {
        valid = false;
      } else {
        cp = (cp << 6) | (b & 0x3f);
      }
    }
    if (valid && (cp < min || cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff))) {
      valid = false;
    }
    if (valid) {
      out.push_back(cp);
      i += len;
    } else {
      out.push_back(0xfffd);
      ++i;
    }
  }
  return out;
}

std::string encode_utf8(std::u32string_view chars) {
  std::string out;
  out.reserve(chars.size());
  for (char32_t c : chars) {
    if (c < 0x80) {
      out.push_back(char(c));
    } else if (c < 0x800) {
      out.push_back(char(0xc0 | (c >> 6)));
      out.push_back(char(0x80 | (c & 0x3f)));
    } else if (c < 0x10000) {
      out.push_back(char(0xe0 | (c >> 12)));
      out.push_back(char(0x80 | ((c >> 6) & 0x3f)));
      out.push_back(char(0x80 | (c & 0x3f)));
    } else {
      out.push_back(char(0xf0 | (c >> 18)));
      out.push_back(char(0x80 | ((c >> 12) & 0x3f)));
      out.push_back(char(0x80 | ((c >> 6) & 0x3f)));
      out.push_back(char(0x80 | (c & 0x3f)));
    }
  }
  return out;
}

bool is_unicode_space(char32_t c) {
  return (c >= 0x09 && c <= 0x0d) || c == 0x20 || c == 0x85 || c == 0xa0 ||
         c == 0x1680 || (c >= 0x2000 && c <= 0x200a) || c == 0x2028 ||
         c == 0x2029 || c == 0x202f || c == 0x205f || c == 0x3000;
}

namespace {

bool is_word_char(char32_t c) {
  if (c < 0x80) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
           (c >= 'A' && c <= 'Z') || c == '_';
  }
  return !is_unicode_space(c);
}

bool is_ascii_alpha(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

// Length of "scheme://" at `i`, or 0.
size_t url_prefix_length(const std::u32string &s, size_t i) {
  if (i >= s.size() || !is_ascii_alpha(s[i])) return 0;
  size_t j = i + 1;
  while (j < s.size() && (is_ascii_alpha(s[j]) || (s[j] >= '0' && s[j] <= '9') ||
                          s[j] == '+' || s[j] == '.' || s[j] == '-')) {
    ++j;
  }
  if (j + 3 <= s.size() && s[j] == ':' && s[j + 1] == '/' && s[j + 2] == '/') {
    return j + 3 - i;
  }
  return 0;
}

char32_t fold_char(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if ((c >= 0xc0 && c <= 0xde) && c != 0xd7) return c + 32;
  return c;
}

std::vector<std::string> folded_surfaces(const Document &doc,
                                         std::span<const Annotation> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto &t : tokens) out.push_back(fold_case(doc.slice(t.start, t.end)));
  return out;
}

}  // namespace

Document::Document(std::string doc_id, std::string_view text)
    : doc_id_(std::move(doc_id)), chars_(decode_utf8(text)), text_(encode_utf8(chars_)) {}

std::string Document::slice(size_t start, size_t end) const {
  if (start > end || end > chars_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "slice out of range");
  }
  return encode_utf8(std::u32string_view(chars_).substr(start, end - start));
}

bool spans_overlap(size_t start, size_t end, size_t ws, size_t we) {
  if (ws == we) {
    if (start == end) return start == ws;
    return start <= ws && ws < end;
  }
  if (start == end) return ws <= start && start < we;
  return start < we && ws < end;
}

// ---------------------------------------------------------------------------
// AnnotatedDocument

void AnnotatedDocument::insert(Annotation a) {
  if (a.start > a.end || a.end > doc_.length()) {
    throw Error(ErrorCode::kInvalidArgument,
                "span [" + std::to_string(a.start) + "," + std::to_string(a.end) +
                    ") outside document of length " + std::to_string(doc_.length()));
  }
  max_length_ = std::max(max_length_, a.end - a.start);
  next_id_ = std::max(next_id_, a.id + 1);
  anns_.push_back(std::move(a));
  auto idx = std::uint32_t(anns_.size() - 1);
  auto key = [this](std::uint32_t i) {
    const auto &x = anns_[i];
    return std::make_tuple(x.start, x.end, x.id);
  };
  auto pos = std::upper_bound(by_start_.begin(), by_start_.end(), idx,
                              [&](std::uint32_t l, std::uint32_t r) { return key(l) < key(r); });
  by_start_.insert(pos, idx);
}

const Annotation &AnnotatedDocument::add(std::string type, size_t start, size_t end,
                                         FeatureMap features) {
  insert(Annotation{next_id_, std::move(type), start, end, std::move(features)});
  return anns_.back();
}

std::vector<Annotation> AnnotatedDocument::of_type(std::string_view type) const {
  std::vector<Annotation> out;
  for (auto i : by_start_) {
    if (anns_[i].type == type) out.push_back(anns_[i]);
  }
  return out;
}

std::vector<Annotation> AnnotatedDocument::annotations_in(
    std::span<const std::string> types, size_t start, size_t end) const {
  std::vector<Annotation> out;
  if (start > end) return out;
  // Any overlapping span starts no earlier than start - max_length_ and no
  // later than max(start, end).
  size_t lo = start > max_length_ ? start - max_length_ : 0;
  auto it = std::lower_bound(by_start_.begin(), by_start_.end(), lo,
                             [this](std::uint32_t i, size_t v) { return anns_[i].start < v; });
  for (; it != by_start_.end(); ++it) {
    const Annotation &a = anns_[*it];
    if (a.start > std::max(start, end)) break;
    if (!spans_overlap(a.start, a.end, start, end)) continue;
    if (!types.empty() && std::find(types.begin(), types.end(), a.type) == types.end()) {
      continue;
    }
    out.push_back(a);
  }
  return out;
}

std::string AnnotatedDocument::to_json() const {
  ordered_json j;
  j["doc_id"] = doc_.doc_id();
  j["text"] = doc_.text();
  ordered_json list = ordered_json::array();
  for (const auto &a : anns_) {
    ordered_json item;
    item["id"] = a.id;
    item["type"] = a.type;
    item["start"] = a.start;
    item["end"] = a.end;
    ordered_json features = ordered_json::object();
    for (const auto &[k, v] : a.features) features[k] = v;
    item["features"] = std::move(features);
    list.push_back(std::move(item));
  }
  j["annotations"] = std::move(list);
  return j.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

AnnotatedDocument AnnotatedDocument::from_json(std::string_view json) {
  auto bad = [](const std::string &why) {
    return Error(ErrorCode::kMalformedRecord, "annotated document: " + why);
  };
  auto j = ordered_json::parse(json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw bad("not a JSON object");
  try {
    AnnotatedDocument doc(
        Document(j.at("doc_id").get<std::string>(), j.at("text").get<std::string>()));
    std::set<std::uint32_t> ids;
    for (const auto &item : j.at("annotations")) {
      Annotation a;
      a.id = item.at("id").get<std::uint32_t>();
      a.type = item.at("type").get<std::string>();
      a.start = item.at("start").get<size_t>();
      a.end = item.at("end").get<size_t>();
      for (const auto &[k, v] : item.at("features").items()) {
        a.features[k] = v.get<std::string>();
      }
      if (!ids.insert(a.id).second) throw bad("duplicate id " + std::to_string(a.id));
      doc.insert(std::move(a));
    }
    return doc;
  } catch (const ordered_json::exception &e) {
    throw bad(e.what());
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kMalformedRecord) throw;
    throw bad(e.what());
  }
}

// ---------------------------------------------------------------------------
// Tokenizer

std::vector<Annotation> tokenize(const Document &doc) {
  const std::u32string &s = doc.chars();
  std::vector<Annotation> out;
  auto emit = [&](std::string_view type, size_t b, size_t e, FeatureMap f = {}) {
    out.push_back(Annotation{std::uint32_t(out.size()), std::string(type), b, e, std::move(f)});
  };
  auto word_end = [&](size_t j) {
    while (j < s.size() && is_word_char(s[j])) ++j;
    return j;
  };
  size_t i = 0;
  while (i < s.size()) {
    char32_t c = s[i];
    if (is_unicode_space(c)) {
      ++i;
      continue;
    }
    if (size_t scheme = url_prefix_length(s, i); scheme != 0) {
      size_t j = i + scheme;
      while (j < s.size() && !is_unicode_space(s[j])) ++j;
      emit(ann::kUrl, i, j);
      i = j;
      continue;
    }
    if ((c == '#' || c == '@') && i + 1 < s.size() && is_word_char(s[i + 1])) {
      size_t j = word_end(i + 1);
      emit(c == '#' ? ann::kHashtag : ann::kMention, i, j);
      i = j;
      continue;
    }
    if (is_word_char(c)) {
      size_t j = word_end(i);
      emit(ann::kToken, i, j, {{"kind", "word"}});
      i = j;
      continue;
    }
    emit(ann::kToken, i, i + 1, {{"kind", "punctuation"}});
    ++i;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gazetteer

std::string fold_case(std::string_view utf8) {
  std::u32string chars = decode_utf8(utf8);
  for (char32_t &c : chars) c = fold_char(c);
  return encode_utf8(chars);
}

void Gazetteer::add(std::string_view surface, std::string major, std::string minor) {
  Document probe("", surface);
  std::vector<Annotation> toks = tokenize(probe);
  if (toks.empty()) throw Error(ErrorCode::kInvalidArgument, "empty gazetteer surface");
  size_t node = 0;
  for (const auto &key : folded_surfaces(probe, toks)) {
    auto it = nodes_[node].next.find(key);
    if (it == nodes_[node].next.end()) {
      nodes_.emplace_back();
      it = nodes_[node].next.emplace(key, nodes_.size() - 1).first;
    }
    node = it->second;
  }
  if (!nodes_[node].entry) ++size_;
  nodes_[node].entry = Entry{std::move(major), std::move(minor)};
}

Gazetteer Gazetteer::load(std::istream &in) {
  Gazetteer g;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') continue;
    size_t t1 = line.find('\t');
    size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
      throw Error(ErrorCode::kMalformedRow,
                  "gazetteer line " + std::to_string(line_no) +
                      ": expected surface<TAB>major<TAB>minor");
    }
    try {
      g.add(std::string_view(line).substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1),
            line.substr(t2 + 1));
    } catch (const Error &) {
      throw Error(ErrorCode::kMalformedRow,
                  "gazetteer line " + std::to_string(line_no) + ": empty surface");
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed");
  return g;
}

const Gazetteer::Entry *Gazetteer::find_single(std::string_view lowered) const {
  auto it = nodes_[0].next.find(lowered);
  if (it == nodes_[0].next.end() || !nodes_[it->second].entry) return nullptr;
  return &*nodes_[it->second].entry;
}

std::vector<Annotation> gazetteer_lookup(const Document &doc,
                                         std::span<const Annotation> tokens,
                                         const Gazetteer &gazetteer) {
  std::vector<Annotation> out;
  if (gazetteer.empty() || tokens.empty()) return out;
  const std::vector<std::string> keys = folded_surfaces(doc, tokens);
  size_t i = 0;
  while (i < tokens.size()) {
    size_t node = 0, best_end = 0;
    const Gazetteer::Entry *best = nullptr;
    for (size_t j = i; j < tokens.size(); ++j) {
      auto it = gazetteer.nodes_[node].next.find(keys[j]);
      if (it == gazetteer.nodes_[node].next.end()) break;
      node = it->second;
      if (gazetteer.nodes_[node].entry) {
        best = &*gazetteer.nodes_[node].entry;
        best_end = j + 1;
      }
    }
    if (best == nullptr) {
      ++i;
      continue;
    }
    out.push_back(Annotation{std::uint32_t(out.size()), std::string(ann::kLookup),
                             tokens[i].start, tokens[best_end - 1].end,
                             {{"majorType", best->major}, {"minorType", best->minor}}});
    i = best_end;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stages

namespace {

class TokenizeStage : public Annotator {
 public:
  std::string_view name() const override { return "tokenize"; }
  std::vector<std::string> inputs() const override { return {}; }
  std::vector<std::string> outputs() const override {
    return {std::string(ann::kToken), std::string(ann::kHashtag),
            std::string(ann::kMention), std::string(ann::kUrl)};
  }
  void run(AnnotatedDocument &doc, const Resources &) const override {
    for (auto &a : tokenize(doc.document())) {
      doc.add(std::move(a.type), a.start, a.end, std::move(a.features));
    }
  }
};

bool is_token_type(std::string_view t) {
  return t == ann::kToken || t == ann::kHashtag || t == ann::kMention || t == ann::kUrl;
}

class GazetteerStage : public Annotator {
 public:
  std::string_view name() const override { return "gazetteer"; }
  std::vector<std::string> inputs() const override { return {std::string(ann::kToken)}; }
  std::vector<std::string> outputs() const override { return {std::string(ann::kLookup)}; }
  void run(AnnotatedDocument &doc, const Resources &res) const override {
    if (res.gazetteer == nullptr) return;
    std::vector<Annotation> tokens;
    for (const auto &a : doc.annotations_in({}, 0, doc.document().length())) {
      if (is_token_type(a.type)) tokens.push_back(a);
    }
    for (auto &a : gazetteer_lookup(doc.document(), tokens, *res.gazetteer)) {
      doc.add(std::move(a.type), a.start, a.end, std::move(a.features));
    }
  }
};

// Promotes gazetteer hits to entities, and hashtags whose body is a
// single-token gazetteer entry.
class EntityStage : public Annotator {
 public:
  std::string_view name() const override { return "entity"; }
  std::vector<std::string> inputs() const override { return {std::string(ann::kLookup)}; }
  std::vector<std::string> outputs() const override { return {std::string(ann::kEntity)}; }
  void run(AnnotatedDocument &doc, const Resources &res) const override {
    std::vector<Annotation> found;
    for (const auto &a : doc.of_type(ann::kLookup)) {
      found.push_back(Annotation{0, std::string(ann::kEntity), a.start, a.end,
                                 {{"kind", a.features.at("majorType")},
                                  {"minorType", a.features.at("minorType")},
                                  {"rule", "lookup"}}});
    }
    if (res.gazetteer != nullptr) {
      for (const auto &h : doc.of_type(ann::kHashtag)) {
        std::string body = fold_case(doc.document().slice(h.start + 1, h.end));
        if (const auto *e = res.gazetteer->find_single(body)) {
          found.push_back(Annotation{0, std::string(ann::kEntity), h.start, h.end,
                                     {{"kind", e->major},
                                      {"minorType", e->minor},
                                      {"rule", "hashtag"}}});
        }
      }
    }
    std::stable_sort(found.begin(), found.end(), [](const auto &l, const auto &r) {
      return std::tie(l.start, l.end) < std::tie(r.start, r.end);
    });
    for (auto &a : found) doc.add(std::move(a.type), a.start, a.end, std::move(a.features));
  }
};

}  // namespace

std::unique_ptr<Annotator> make_annotator(std::string_view name) {
  if (name == "tokenize") return std::make_unique<TokenizeStage>();
  if (name == "gazetteer") return std::make_unique<GazetteerStage>();
  if (name == "entity") return std::make_unique<EntityStage>();
  throw Error(ErrorCode::kUnknownStage, "no stage named '" + std::string(name) + "'");
}

Pipeline Pipeline::from_names(std::span<const std::string> names) {
  Pipeline p;
  std::set<std::string> available;
  for (const auto &n : names) {
    std::shared_ptr<const Annotator> stage = make_annotator(n);
    for (const auto &need : stage->inputs()) {
      if (!available.count(need)) {
        throw Error(ErrorCode::kStageDependencyViolation,
                    "stage '" + n + "' needs " + need + " annotations from an earlier stage");
      }
    }
    for (const auto &made : stage->outputs()) available.insert(made);
    p.stages_.push_back(std::move(stage));
  }
  return p;
}

Pipeline Pipeline::standard() {
  const std::vector<std::string> names = {"tokenize", "gazetteer", "entity"};
  return from_names(names);
}

std::vector<std::string> Pipeline::stage_names() const {
  std::vector<std::string> out;
  for (const auto &s : stages_) out.emplace_back(s->name());
  return out;
}

AnnotatedDocument Pipeline::run(Document doc, const Resources &resources) const {
  AnnotatedDocument out(std::move(doc));
  for (const auto &s : stages_) s->run(out, resources);
  return out;
}

}  // namespace cryptomine
