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

#include "accentdl/text.hpp"

#include <algorithm>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "accentdl/errors.hpp"

namespace accentdl {
namespace {

struct CodePoint {
  char32_t value;
  std::size_t begin;
  std::size_t end;
};

std::vector<CodePoint> decode(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) {
      throw EncodingError("invalid UTF-8 at byte offset " +
                          std::to_string(start));
    }
    out.push_back({static_cast<char32_t>(c), static_cast<std::size_t>(start),
                   static_cast<std::size_t>(i)});
  }
  return out;
}

bool is_punctuation(char32_t c) {
  const auto mask = U_GET_GC_MASK(static_cast<UChar32>(c));
  return (mask & (U_GC_P_MASK | U_GC_S_MASK)) != 0;
}

TokenKind classify_piece(std::span<const CodePoint> piece) {
  bool digit = false;
  bool numeric = true;
  for (const auto& cp : piece) {
    if (is_letter(cp.value)) return TokenKind::kWord;
    if (u_isdigit(static_cast<UChar32>(cp.value))) {
      digit = true;
    } else if (cp.value != U'.' && cp.value != U',') {
      numeric = false;
    }
  }
  return (digit && numeric) ? TokenKind::kNumber : TokenKind::kOther;
}

}  // namespace

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWord: return "word";
    case TokenKind::kPunctuation: return "punct";
    case TokenKind::kNumber: return "number";
    case TokenKind::kOther: return "other";
  }
  return "other";
}

bool is_valid_utf8(std::string_view text) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

void require_utf8(std::string_view text) {
  if (!is_valid_utf8(text)) throw EncodingError("input is not valid UTF-8");
}

std::u32string to_u32(std::string_view text) {
  std::u32string out;
  for (const auto& cp : decode(text)) out.push_back(cp.value);
  return out;
}

std::string to_utf8(char32_t c) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
  if (error) throw EncodingError("code point out of range");
  return std::string(reinterpret_cast<const char*>(buf), n);
}

std::string to_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) out += to_utf8(c);
  return out;
}

bool is_ascii(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

std::string nfc(std::string_view text) {
  if (is_ascii(text)) return std::string(text);
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  const icu::UnicodeString in = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  if (normalizer->isNormalized(in, status) && U_SUCCESS(status)) {
    return std::string(text);
  }
  status = U_ZERO_ERROR;
  const icu::UnicodeString normalized = normalizer->normalize(in, status);
  if (U_FAILURE(status)) throw EncodingError("NFC normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

std::string to_lower(std::string_view text) {
  if (is_ascii(text)) {
    std::string out(text);
    for (char& c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
  }
  std::u32string cps = to_u32(text);
  for (auto& c : cps) c = static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
  return to_utf8(cps);
}

bool is_upper(char32_t c) { return u_isUUppercase(static_cast<UChar32>(c)); }

bool is_letter(char32_t c) { return u_isalpha(static_cast<UChar32>(c)); }

bool is_apostrophe(char32_t c) { return c == U'\'' || c == U'’'; }

std::size_t length_in_code_points(std::string_view text) {
  return decode(text).size();
}

std::vector<Token> tokenize(std::string_view text) {
  const std::vector<CodePoint> cps = decode(text);
  std::vector<Token> tokens;

  auto emit = [&](std::size_t from, std::size_t to, TokenKind kind) {
    const std::size_t begin = cps[from].begin;
    const std::size_t end = cps[to - 1].end;
    tokens.push_back({nfc(text.substr(begin, end - begin)), begin, end, kind});
  };

  std::size_t i = 0;
  while (i < cps.size()) {
    if (u_isUWhiteSpace(static_cast<UChar32>(cps[i].value))) {
      ++i;
      continue;
    }
    std::size_t chunk_end = i;
    while (chunk_end < cps.size() &&
           !u_isUWhiteSpace(static_cast<UChar32>(cps[chunk_end].value))) {
      ++chunk_end;
    }

    std::size_t s = i;
    while (s < chunk_end && is_punctuation(cps[s].value)) {
      emit(s, s + 1, TokenKind::kPunctuation);
      ++s;
    }
    std::size_t t = chunk_end;
    while (t > s && is_punctuation(cps[t - 1].value)) {
      // A trailing apostrophe belongs to the word on its left (elision).
      if (is_apostrophe(cps[t - 1].value) && t - 1 > s &&
          !is_punctuation(cps[t - 2].value)) {
        break;
      }
      --t;
    }

    std::size_t piece = s;
    for (std::size_t j = s; j < t; ++j) {
      if (is_apostrophe(cps[j].value) && j + 1 < t) {
        emit(piece, j + 1,
             classify_piece(std::span(cps).subspan(piece, j + 1 - piece)));
        piece = j + 1;
      }
    }
    if (piece < t) {
      emit(piece, t, classify_piece(std::span(cps).subspan(piece, t - piece)));
    }
    for (std::size_t j = t; j < chunk_end; ++j) {
      emit(j, j + 1, TokenKind::kPunctuation);
    }
    i = chunk_end;
  }
  return tokens;
}

std::string detokenize(std::string_view source, std::span<const Token> tokens) {
  std::string out;
  out.reserve(source.size());
  std::size_t cursor = 0;
  for (const auto& token : tokens) {
    if (token.begin < cursor || token.end > source.size()) {
      throw ContractViolation("token spans are not ordered within the source");
    }
    out.append(source.substr(cursor, token.begin - cursor));
    out += token.surface;
    cursor = token.end;
  }
  out.append(source.substr(cursor));
  return out;
}

}  // namespace accentdl
