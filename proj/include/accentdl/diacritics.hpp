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

#ifndef ACCENTDL_DIACRITICS_HPP_
#define ACCENTDL_DIACRITICS_HPP_

#include <cstddef>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace accentdl {

// Per-language table from accented code points to their plain spelling,
// e.g. 'é' -> "e", 'œ' -> "oe". Loaded from `accented<TAB>plain` lines.
class DiacriticMap {
 public:
  DiacriticMap() = default;

  // Built-in tables for "es" and "fr"; throws ConfigError otherwise.
  static DiacriticMap builtin(std::string_view language);
  static DiacriticMap parse(std::istream& in, const std::string& source);
  static DiacriticMap load(const std::string& path);

  void add(char32_t accented, std::u32string plain);

  bool contains(char32_t c) const { return table_.count(c) != 0; }
  bool has_diacritics(std::string_view word) const;
  bool empty() const { return table_.empty(); }
  std::size_t size() const { return table_.size(); }

  // Replacement for `c`, or `c` itself outside the map's domain.
  std::u32string plain(char32_t c) const;

  // Removes diacritics but keeps case: "Côté" -> "Cote".
  std::string deaccent(std::string_view word) const;

  // Lowercase, diacritic-free key: "Côté" -> "cote". Idempotent.
  std::string strip(std::string_view word) const;

  // Entries in code point order, as `accented`, `plain` UTF-8 pairs.
  std::vector<std::pair<std::string, std::string>> entries() const;

  friend bool operator==(const DiacriticMap&, const DiacriticMap&) = default;

 private:
  std::map<char32_t, std::u32string> table_;
  bool maps_ascii_ = false;  // some ASCII character has an entry
};

// Maps `word` to its de-accented key under `map`.
std::string strip_diacritics(std::string_view word, const DiacriticMap& map);

// Writes `pattern` (a lowercase accented spelling) using the letter case of
// `original`: ("COTE", "côté") -> "CÔTÉ", ("Cote", "côté") -> "Côté".
// Throws ContractViolation unless both strip to the same key.
std::string apply_pattern(std::string_view original, std::string_view pattern,
                          const DiacriticMap& map);

}  // namespace accentdl

#endif  // ACCENTDL_DIACRITICS_HPP_
