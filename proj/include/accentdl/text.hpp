// Copyright 2026 The accentdl Authors.
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

// UTF-8 text handling: validation, NFC normalization, tokenization and
// per-code-point case operations.

#ifndef ACCENTDL_TEXT_HPP_
#define ACCENTDL_TEXT_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace accentdl {

enum class TokenKind { kWord, kPunctuation, kNumber, kOther };

const char* to_string(TokenKind kind);

// A token of a source document. `surface` is the NFC form of the bytes in
// [begin, end) of the source the token was cut from.
struct Token {
  std::string surface;
  std::size_t begin = 0;
  std::size_t end = 0;
  TokenKind kind = TokenKind::kWord;

  friend bool operator==(const Token&, const Token&) = default;
};

bool is_valid_utf8(std::string_view text);

// Throws EncodingError on malformed input.
void require_utf8(std::string_view text);

std::u32string to_u32(std::string_view text);
std::string to_utf8(std::u32string_view text);
std::string to_utf8(char32_t c);

std::string nfc(std::string_view text);

// Simple (one-to-one) case mappings, applied code point by code point so the
// length in code points never changes.
std::string to_lower(std::string_view text);
bool is_upper(char32_t c);
bool is_letter(char32_t c);
bool is_apostrophe(char32_t c);

std::size_t length_in_code_points(std::string_view text);
bool is_ascii(std::string_view text);

// Splits on white space. Leading and trailing punctuation become one token per
// code point. An apostrophe closes the token it ends and stays attached to the
// left piece, so "l'autre" yields "l'" and "autre". Hyphenated compounds stay
// whole. Throws EncodingError on invalid UTF-8.
std::vector<Token> tokenize(std::string_view text);

// Concatenates token surfaces with the source gaps between them. Reproduces
// `source` byte for byte whenever `source` is already NFC.
std::string detokenize(std::string_view source, std::span<const Token> tokens);

}  // namespace accentdl

#endif  // ACCENTDL_TEXT_HPP_
