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

#include "accentdl/diacritics.hpp"

#include <fstream>
#include <sstream>

#include <unicode/uchar.h>

#include "accentdl/errors.hpp"
#include "accentdl/text.hpp"

namespace accentdl {
namespace {

// Same content as data/diacritics/{es,fr}.tsv.
constexpr std::string_view kSpanish = R"tsv(# Diacritic map for Spanish: accented<TAB>plain, one code point per line.
# Uppercase forms are listed explicitly.
á	a
é	e
í	i
ó	o
ú	u
ü	u
ñ	n
Á	A
É	E
Í	I
Ó	O
Ú	U
Ü	U
Ñ	N
)tsv";

constexpr std::string_view kFrench = R"tsv(# Diacritic map for French: accented<TAB>plain, one code point per line.
# Uppercase forms are listed explicitly.
à	a
â	a
ä	a
ç	c
é	e
è	e
ê	e
ë	e
î	i
ï	i
ô	o
ö	o
ù	u
û	u
ü	u
ÿ	y
œ	oe
À	A
Â	A
Ä	A
Ç	C
É	E
È	E
Ê	E
Ë	E
Î	I
Ï	I
Ô	O
Ö	O
Ù	U
Û	U
Ü	U
Ÿ	Y
Œ	OE
)tsv";

char32_t lower(char32_t c) {
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
}

char32_t upper(char32_t c) {
  return static_cast<char32_t>(u_toupper(static_cast<UChar32>(c)));
}

}  // namespace

DiacriticMap DiacriticMap::builtin(std::string_view language) {
  std::istringstream in;
  if (language == "es") {
    in.str(std::string(kSpanish));
  } else if (language == "fr") {
    in.str(std::string(kFrench));
  } else {
    throw ConfigError("no built-in diacritic map for language '" +
                      std::string(language) + "'");
  }
  return parse(in, "<builtin:" + std::string(language) + ">");
}

DiacriticMap DiacriticMap::parse(std::istream& in, const std::string& source) {
  DiacriticMap map;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(source, number, "expected accented<TAB>plain");
    }
    if (!is_valid_utf8(line)) throw ParseError(source, number, "invalid UTF-8");
    const std::u32string accented = to_u32(nfc(line.substr(0, tab)));
    const std::u32string plain = to_u32(nfc(line.substr(tab + 1)));
    if (accented.size() != 1) {
      throw ParseError(source, number, "accented side must be one character");
    }
    if (plain.empty()) throw ParseError(source, number, "empty replacement");
    map.add(accented.front(), plain);
  }
  for (const auto& [from, to] : map.table_) {
    for (char32_t c : to) {
      if (map.contains(c) || map.contains(lower(c))) {
        throw ParseError(source, number,
                         "replacement for '" + to_utf8(from) +
                             "' contains a mapped character");
      }
    }
  }
  return map;
}

DiacriticMap DiacriticMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read diacritic map '" + path + "'");
  return parse(in, path);
}

void DiacriticMap::add(char32_t accented, std::u32string plain) {
  table_[accented] = std::move(plain);
  if (accented < 0x80) maps_ascii_ = true;
}

bool DiacriticMap::has_diacritics(std::string_view word) const {
  if (!maps_ascii_ && is_ascii(word)) return false;
  for (char32_t c : to_u32(word)) {
    if (contains(c) || contains(lower(c))) return true;
  }
  return false;
}

std::u32string DiacriticMap::plain(char32_t c) const {
  if (auto it = table_.find(c); it != table_.end()) return it->second;
  if (auto it = table_.find(lower(c)); it != table_.end()) {
    std::u32string out = it->second;
    for (auto& p : out) p = upper(p);
    return out;
  }
  return std::u32string(1, c);
}

std::string DiacriticMap::deaccent(std::string_view word) const {
  if (!maps_ascii_ && is_ascii(word)) return std::string(word);
  std::u32string out;
  for (char32_t c : to_u32(nfc(word))) out += plain(c);
  return to_utf8(out);
}

std::string DiacriticMap::strip(std::string_view word) const {
  if (!maps_ascii_ && is_ascii(word)) return to_lower(word);
  std::u32string out;
  for (char32_t c : to_u32(nfc(word))) {
    for (char32_t p : plain(c)) out.push_back(lower(p));
  }
  return to_utf8(out);
}

std::vector<std::pair<std::string, std::string>> DiacriticMap::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(table_.size());
  for (const auto& [from, to] : table_) out.emplace_back(to_utf8(from), to_utf8(to));
  return out;
}

std::string strip_diacritics(std::string_view word, const DiacriticMap& map) {
  return map.strip(word);
}

std::string apply_pattern(std::string_view original, std::string_view pattern,
                          const DiacriticMap& map) {
  if (map.strip(original) != map.strip(pattern)) {
    throw ContractViolation("pattern '" + std::string(pattern) +
                            "' does not belong to word '" +
                            std::string(original) + "'");
  }
  // Case flag per code point of the stripped form, inherited from the
  // original character that produced it.
  std::vector<bool> upper_at;
  for (char32_t c : to_u32(nfc(original))) {
    const bool up = is_upper(c);
    upper_at.insert(upper_at.end(), map.plain(c).size(), up);
  }
  std::u32string out;
  std::size_t position = 0;
  for (char32_t c : to_u32(nfc(pattern))) {
    const bool up = position < upper_at.size() && upper_at[position];
    out.push_back(up ? upper(c) : c);
    position += map.plain(c).size();
  }
  return to_utf8(out);
}

}  // namespace accentdl
