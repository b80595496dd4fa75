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

// Collocational evidence around an ambiguous word: adjacent words, word
// pairs, window words, and their word-class, part-of-speech, lemma and suffix
// generalizations.

#ifndef ACCENTDL_FEATURES_HPP_
#define ACCENTDL_FEATURES_HPP_

#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "accentdl/corpus.hpp"
#include "accentdl/diacritics.hpp"

namespace accentdl {

enum class FeatureKind : std::uint8_t {
  kWordAt,       // word at offset -1 or +1
  kPair,         // words at (-2,-1), (-1,+1) or (+1,+2)
  kWindow,       // word anywhere within +-k
  kClassAt,      // word class at offset -1 or +1
  kClassWindow,  // word class anywhere within +-k
  kTagAt,        // (union) part-of-speech tag at offset -1 or +1
  kTagPair,      // pair positions with at least one side replaced by its tag
  kLemmaWindow,  // lemma anywhere within +-k
  kSuffixAt,     // word-final characters at an offset
};

const char* to_string(FeatureKind kind);
std::optional<FeatureKind> feature_kind_from_string(std::string_view name);

// One atom of evidence. A plain value: two features are equal iff every field
// is equal. Unused fields stay zero/empty.
struct Feature {
  FeatureKind kind = FeatureKind::kWordAt;
  std::int8_t offset = 0;
  std::int8_t offset2 = 0;
  // kTagPair only: bit 0 set when `value` is a tag, bit 1 when `value2` is.
  std::uint8_t tag_mask = 0;
  // kSuffixAt only: suffix length in characters.
  std::uint8_t length = 0;
  std::string value;
  std::string value2;

  static Feature word_at(int offset, std::string word);
  static Feature pair(int first, int second, std::string a, std::string b);
  static Feature window(std::string word);
  static Feature class_at(int offset, std::string name);
  static Feature class_window(std::string name);
  static Feature tag_at(int offset, std::string tag);
  static Feature tag_pair(int first, int second, std::uint8_t mask,
                          std::string a, std::string b);
  static Feature lemma_window(std::string lemma);
  static Feature suffix_at(int offset, int length, std::string suffix);

  auto operator<=>(const Feature&) const = default;
  bool operator==(const Feature&) const = default;
};

struct FeatureHash {
  std::size_t operator()(const Feature& f) const noexcept;
};

// Offsets of the three pair positions.
inline constexpr std::pair<int, int> kPairOffsets[] = {{-2, -1}, {-1, 1}, {1, 2}};

struct FeatureConfig {
  int k = 20;
  bool words = true;
  bool pairs = true;
  bool window = true;
  bool classes = true;
  bool tags = true;
  bool lemmas = true;
  bool suffixes = false;
  std::vector<int> suffix_lengths{2, 3, 4};
  std::vector<int> suffix_offsets{-1, 1};

  // Throws ConfigError unless k >= 1 and at least one kind is enabled.
  void validate() const;

  // Context words needed on each side: the window, and at least the two
  // positions used by pair features.
  int context_width() const { return k > 2 ? k : 2; }

  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

// Named word classes such as WEEKDAY = {domingo, lunes, ...}. Classes may
// overlap. File format: `CLASSNAME<TAB>member1 member2 ...`.
class WordClassSet {
 public:
  void add(const std::string& name, const std::string& word);
  std::span<const std::string> lookup(std::string_view word) const;
  bool contains(std::string_view name, std::string_view word) const;
  const std::map<std::string, std::set<std::string>>& classes() const {
    return classes_;
  }
  bool empty() const { return classes_.empty(); }

  // Member words are reduced to keys with `map`.
  static WordClassSet parse(std::istream& in, const std::string& source,
                            const DiacriticMap& map);
  static WordClassSet load(const std::string& path, const DiacriticMap& map);

  friend bool operator==(const WordClassSet& a, const WordClassSet& b) {
    return a.classes_ == b.classes_;
  }

 private:
  std::map<std::string, std::set<std::string>> classes_;
  std::unordered_map<std::string, std::vector<std::string>> by_word_;
};

// Dictionary parts of speech per word. A word with several tags gets the
// union tag, its tags sorted and joined with '-' (ADJECTIVE-NOUN).
// File format: `word<TAB>TAG1,TAG2`.
class TagLexicon {
 public:
  void add(const std::string& word, const std::string& tag);
  std::optional<std::string> union_tag(std::string_view word) const;
  const std::map<std::string, std::set<std::string>>& tags() const { return tags_; }
  bool empty() const { return tags_.empty(); }

  static TagLexicon parse(std::istream& in, const std::string& source,
                          const DiacriticMap& map);
  static TagLexicon load(const std::string& path, const DiacriticMap& map);

  friend bool operator==(const TagLexicon& a, const TagLexicon& b) {
    return a.tags_ == b.tags_;
  }

 private:
  std::map<std::string, std::set<std::string>> tags_;
  std::unordered_map<std::string, std::string> union_;
};

// word -> lemma. File format: `word<TAB>lemma`.
class LemmaLexicon {
 public:
  void add(const std::string& word, const std::string& lemma);
  // Lemma of a listed word, nullopt otherwise.
  std::optional<std::string> find(std::string_view word) const;
  // Identity outside the lexicon.
  std::string lemma(std::string_view word) const;
  const std::map<std::string, std::string, std::less<>>& lemmas() const {
    return lemmas_;
  }
  bool empty() const { return lemmas_.empty(); }

  static LemmaLexicon parse(std::istream& in, const std::string& source,
                            const DiacriticMap& map);
  static LemmaLexicon load(const std::string& path, const DiacriticMap& map);

  friend bool operator==(const LemmaLexicon&, const LemmaLexicon&) = default;

 private:
  std::map<std::string, std::string, std::less<>> lemmas_;
};

// Optional resources consulted during feature extraction.
struct Lexicons {
  const WordClassSet* classes = nullptr;
  const TagLexicon* tags = nullptr;
  const LemmaLexicon* lemmas = nullptr;
};

std::vector<std::string> class_lookup(std::string_view word,
                                      const WordClassSet& classes);
std::optional<std::string> union_tag(std::string_view word, const TagLexicon& tags);

// Sorted, duplicate-free evidence present in `context`. Only context words are
// consulted; the target itself never contributes.
std::vector<Feature> extract_features(const ContextView& context,
                                      const FeatureConfig& cfg,
                                      const Lexicons& lex = {});

// Every feature that extract_features is guaranteed to emit in any context
// where it emits `feature` (excluding `feature` itself).
std::vector<Feature> implied_features(const Feature& feature,
                                      const FeatureConfig& cfg,
                                      const Lexicons& lex = {});

// Human-readable evidence in the style "la *cote*", "*cote* du gouvernement",
// "WEEKDAY (within +-20 words)".
std::string describe(const Feature& feature, std::string_view target, int k);

}  // namespace accentdl

#endif  // ACCENTDL_FEATURES_HPP_
