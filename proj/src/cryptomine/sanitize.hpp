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

// Pipe filter that blanks out non-ASCII \uXXXX escapes in raw JSON-lines
// payloads. Every replaced escape becomes six spaces so line byte lengths
// are unchanged.

#ifndef CRYPTOMINE_SANITIZE_HPP_
#define CRYPTOMINE_SANITIZE_HPP_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace cryptomine {

struct SanitizeStats {
  std::uint64_t lines_in = 0;
  std::uint64_t lines_out = 0;
  std::uint64_t replacements = 0;
  std::uint64_t malformed_escapes = 0;

  SanitizeStats &operator+=(const SanitizeStats &other);
};

struct LineCounts {
  std::size_t replacements = 0;
  std::size_t malformed = 0;
};

// Rewrites `line` in place. Escapes below U+0080 and escaped backslashes
// are left alone; "\u" followed by fewer than four hex digits is counted as
// malformed and passed through.
LineCounts sanitize_line_inplace(std::string &line);

std::string sanitize_line(std::string_view line, LineCounts *counts = nullptr);

// Line-preserving copy from `in` to `out`. A missing final newline is kept
// missing. Throws Error(kIo) if the sink fails; stats cover completed lines.
SanitizeStats sanitize_stream(std::istream &in, std::ostream &out,
                              SanitizeStats *progress = nullptr);

}  // namespace cryptomine

#endif  // CRYPTOMINE_SANITIZE_HPP_
