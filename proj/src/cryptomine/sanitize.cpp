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

#include "cryptomine/sanitize.hpp"

#include "cryptomine/errors.hpp"

namespace cryptomine {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

SanitizeStats &SanitizeStats::operator+=(const SanitizeStats &other) {
  lines_in += other.lines_in;
  lines_out += other.lines_out;
  replacements += other.replacements;
  malformed_escapes += other.malformed_escapes;
  return *this;
}

LineCounts sanitize_line_inplace(std::string &line) {
  LineCounts counts;
  const size_t n = line.size();
  size_t i = 0;
  while (i < n) {
    if (line[i] != '\\') {
      ++i;
      continue;
    }
    if (i + 1 >= n) break;
    if (line[i + 1] != 'u') {
      // Any other escape pair, including an escaped backslash, is consumed
      // whole so the following byte is never read as an escape start.
      i += 2;
      continue;
    }
    unsigned code = 0;
    size_t digits = 0;
    while (digits < 4 && i + 2 + digits < n) {
      int v = hex_value(line[i + 2 + digits]);
      if (v < 0) break;
      code = code * 16 + unsigned(v);
      ++digits;
    }
    if (digits < 4) {
      ++counts.malformed;
      i += 2;
      continue;
    }
    if (code >= 0x80) {
      line.replace(i, 6, 6, ' ');
      ++counts.replacements;
    }
    i += 6;
  }
  return counts;
}

std::string sanitize_line(std::string_view line, LineCounts *counts) {
  std::string out(line);
  LineCounts c = sanitize_line_inplace(out);
  if (counts != nullptr) *counts = c;
  return out;
}

SanitizeStats sanitize_stream(std::istream &in, std::ostream &out,
                              SanitizeStats *progress) {
  SanitizeStats stats;
  std::string line;
  while (std::getline(in, line)) {
    LineCounts c = sanitize_line_inplace(line);
    out.write(line.data(), std::streamsize(line.size()));
    if (!in.eof()) out.put('\n');
    if (!out) {
      if (progress != nullptr) *progress = stats;
      throw Error(ErrorCode::kIo, "write failed after " +
                                      std::to_string(stats.lines_out) +
                                      " lines");
    }
    ++stats.lines_in;
    ++stats.lines_out;
    stats.replacements += c.replacements;
    stats.malformed_escapes += c.malformed;
  }
  if (in.bad()) {
    if (progress != nullptr) *progress = stats;
    throw Error(ErrorCode::kIo, "read failed after " +
                                    std::to_string(stats.lines_in) + " lines");
  }
  if (progress != nullptr) *progress = stats;
  return stats;
}

}  // namespace cryptomine
