// Copyright 2026 The Morphoton Authors
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
//
// UTF-8 helpers shared by every module. A "symbol" is one orthographic or
// IPA segment: a base code point plus any combining marks and spacing
// modifier letters (ː ʼ ʰ) that follow it. A tie bar (U+0361) also pulls in
// the next base code point, so "t͡ʃ" is a single symbol.

#ifndef MORPHOTON_TEXT_H_
#define MORPHOTON_TEXT_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace morphoton {

/// Base class for every error thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Symbol = std::string;
using SymbolSeq = std::vector<Symbol>;

/// Splits a UTF-8 string into code points. Throws Error on malformed input.
std::vector<char32_t> decode_utf8(std::string_view text);
std::string encode_utf8(char32_t cp);

/// Splits text into symbols. Whitespace separates symbols and is dropped.
SymbolSeq segment(std::string_view text);

std::string join(std::span<const Symbol> symbols, std::string_view sep = "");
std::vector<std::string> split(std::string_view text, char delim);
/// Splits on runs of ASCII whitespace, dropping empty fields.
std::vector<std::string> split_ws(std::string_view text);
std::string_view trim(std::string_view text);

/// 64-bit FNV-1a, hex encoded. Used for file fingerprints in manifests.
std::string fnv1a_hex(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace morphoton

#endif  // MORPHOTON_TEXT_H_
