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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "accentdl/errors.hpp"
#include "accentdl/text.hpp"

namespace accentdl {
namespace {

const DiacriticMap& fr() {
  static const DiacriticMap map = DiacriticMap::builtin("fr");
  return map;
}

const DiacriticMap& es() {
  static const DiacriticMap map = DiacriticMap::builtin("es");
  return map;
}

TEST(Strip, RemovesAccents) { EXPECT_EQ(fr().strip("côté"), "cote"); }

TEST(Strip, IdentityOnPlainInput) { EXPECT_EQ(fr().strip("abc"), "abc"); }

TEST(Strip, LowercasesSpanish) { EXPECT_EQ(strip_diacritics("Secretaría", es()), "secretaria"); }

TEST(Strip, SpanishLetters) {
  EXPECT_EQ(es().strip("ÁÉÍÓÚÜÑ"), "aeiouun");
  EXPECT_EQ(es().strip("pingüino"), "pinguino");
}

TEST(Strip, FrenchLigatureExpands) {
  EXPECT_EQ(fr().strip("Œuvre"), "oeuvre");
  EXPECT_EQ(fr().strip("çà et là"), "ca et la");
}

TEST(Strip, CharactersOutsideTheMapPassThrough) {
  EXPECT_EQ(es().strip("côté"), "côte");
  EXPECT_EQ(fr().strip("l'été-2"), "l'ete-2");
}

TEST(Strip, DecomposedInputIsNormalizedFirst) {
  EXPECT_EQ(fr().strip("co\xcc\x82te\xcc\x81"), "cote");
}

TEST(Deaccent, KeepsCase) {
  EXPECT_EQ(fr().deaccent("Côté"), "Cote");
  EXPECT_EQ(fr().deaccent("ŒUVRE"), "OEUVRE");
  EXPECT_EQ(es().deaccent("¡Él está aquí!"), "¡El esta aqui!");
}

TEST(HasDiacritics, DetectsMappedCharacters) {
  EXPECT_TRUE(fr().has_diacritics("côte"));
  EXPECT_TRUE(fr().has_diacritics("ÉTÉ"));
  EXPECT_FALSE(fr().has_diacritics("cote"));
}

TEST(ApplyPattern, AllCapsTransfer) { EXPECT_EQ(apply_pattern("COTE", "côté", fr()), "CÔTÉ"); }

TEST(ApplyPattern, IdentityPattern) { EXPECT_EQ(apply_pattern("cote", "cote", fr()), "cote"); }

TEST(ApplyPattern, InitialCapitalTransfer) {
  EXPECT_EQ(apply_pattern("Cote", "côté", fr()), "Côté");
}

TEST(ApplyPattern, MixedCasePerPosition) {
  EXPECT_EQ(apply_pattern("cOtE", "côté", fr()), "cÔtÉ");
}

TEST(ApplyPattern, Ligature) {
  EXPECT_EQ(apply_pattern("oeuvre", "œuvre", fr()), "œuvre");
  EXPECT_EQ(apply_pattern("OEUVRE", "œuvre", fr()), "ŒUVRE");
}

TEST(ApplyPattern, AccentedInputIsReaccented) {
  EXPECT_EQ(apply_pattern("côte", "côté", fr()), "côté");
}

TEST(ApplyPattern, KeyMismatchIsAContractViolation) {
  EXPECT_THROW(apply_pattern("cote", "coûte", fr()), ContractViolation);
  EXPECT_THROW(apply_pattern("cotes", "côté", fr()), ContractViolation);
}

TEST(DiacriticMapFile, BuiltinsMatchShippedData) {
  EXPECT_EQ(DiacriticMap::load(std::string(ACCENTDL_DATA_DIR) + "/diacritics/fr.tsv"), fr());
  EXPECT_EQ(DiacriticMap::load(std::string(ACCENTDL_DATA_DIR) + "/diacritics/es.tsv"), es());
}

TEST(DiacriticMapFile, UnknownLanguage) {
  EXPECT_THROW(DiacriticMap::builtin("de"), ConfigError);
}

TEST(DiacriticMapFile, CommentsAndEntries) {
  std::istringstream in("# comment\n\xc3\xa9\te\n\nå\ta\n");
  const auto map = DiacriticMap::parse(in, "t");
  EXPECT_EQ(map.size(), 2u);
  EXPECT_EQ(map.strip("Éå"), "ea");  // uppercase falls back to the lowercase entry
}

TEST(DiacriticMapFile, MissingTabReportsLine) {
  std::istringstream in("é\te\nà a\n");
  try {
    DiacriticMap::parse(in, "map.tsv");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.source(), "map.tsv");
  }
}

TEST(DiacriticMapFile, RejectsChainedReplacement) {
  std::istringstream in("é\tè\nè\te\n");
  EXPECT_THROW(DiacriticMap::parse(in, "t"), ParseError);
}

TEST(DiacriticMapFile, RejectsMultiCharacterSource) {
  std::istringstream in("ée\te\n");
  EXPECT_THROW(DiacriticMap::parse(in, "t"), ParseError);
}

TEST(DiacriticMapFile, MissingFile) {
  EXPECT_THROW(DiacriticMap::load("/nonexistent/map.tsv"), IoError);
}

std::string random_word(std::mt19937_64& rng, bool with_case) {
  static const std::vector<std::string> letters = {
      "a", "c", "e", "o", "t", "u", "é", "è", "ê", "à", "ô", "ù", "ç", "œ", "î", "ë", "'", "-"};
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::uniform_int_distribution<int> len(1, 10);
  std::bernoulli_distribution upper(0.3);
  std::string w;
  for (int i = len(rng); i > 0; --i) {
    std::string l = letters[pick(rng)];
    if (with_case && upper(rng)) {
      std::u32string u = to_u32(l);
      for (auto& c : u) {
        if (c == U'œ') c = U'Œ';
        else if (c < 0x80) c = static_cast<char32_t>(std::toupper(static_cast<int>(c)));
        else if (c >= 0xE0 && c <= 0xFE) c -= 0x20;
      }
      l = to_utf8(u);
    }
    w += l;
  }
  return w;
}

TEST(StripProperty, IdempotentAndLowercase) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5000; ++i) {
    const std::string w = random_word(rng, true);
    const std::string key = fr().strip(w);
    ASSERT_EQ(fr().strip(key), key) << w;
    ASSERT_EQ(to_lower(key), key) << w;
    ASSERT_FALSE(fr().has_diacritics(key)) << w;
  }
}

TEST(ApplyPatternProperty, PreservesKey) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 5000; ++i) {
    const std::string pattern = to_lower(random_word(rng, false));
    // A surface with the same key but arbitrary case and accents removed.
    std::string surface = fr().deaccent(pattern);
    std::u32string u = to_u32(surface);
    std::bernoulli_distribution flip(0.4);
    for (auto& c : u) {
      if (c < 0x80 && flip(rng)) c = static_cast<char32_t>(std::toupper(static_cast<int>(c)));
    }
    surface = to_utf8(u);
    const std::string out = apply_pattern(surface, pattern, fr());
    ASSERT_EQ(fr().strip(out), fr().strip(surface)) << surface << " " << pattern;
    ASSERT_EQ(to_lower(out), pattern) << surface << " " << pattern;
  }
}

}  // namespace
}  // namespace accentdl
