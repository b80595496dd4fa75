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

#include "accentdl/synth.hpp"

#include <random>
#include <set>
#include <utility>

#include "accentdl/errors.hpp"

namespace accentdl {
namespace {

constexpr const char* kConsonants[] = {"b", "c", "d", "f", "g", "l", "m", "n",
                                       "p", "r", "s", "t", "v"};
constexpr const char* kVowels[] = {"a", "e", "i", "o", "u"};

// Accented form of each plain vowel, by language.
const char* accented_vowel(const std::string& language, int vowel) {
  static constexpr const char* kEs[] = {"á", "é", "í", "ó", "ú"};
  static constexpr const char* kFr[] = {"à", "é", "î", "ô", "ù"};
  return (language == "fr" ? kFr : kEs)[vowel];
}

class WordMaker {
 public:
  WordMaker(std::mt19937_64& rng, std::string language)
      : rng_(rng), language_(std::move(language)) {}

  // A fresh unaccented word of `syllables` CV syllables; `last_vowel`
  // receives the index of its final vowel.
  std::string fresh(int syllables, int* last_vowel = nullptr) {
    std::uniform_int_distribution<int> c(0, std::size(kConsonants) - 1);
    std::uniform_int_distribution<int> v(0, std::size(kVowels) - 1);
    while (true) {
      std::string w;
      int vowel = 0;
      for (int s = 0; s < syllables; ++s) {
        vowel = v(rng_);
        w += kConsonants[c(rng_)];
        w += kVowels[vowel];
      }
      if (used_.insert(w).second) {
        if (last_vowel != nullptr) *last_vowel = vowel;
        return w;
      }
    }
  }

  // `word` with its final vowel replaced by the accented vowel.
  std::string accent_last(const std::string& word, int vowel) const {
    return word.substr(0, word.size() - 1) + accented_vowel(language_, vowel);
  }

 private:
  std::mt19937_64& rng_;
  std::string language_;
  std::set<std::string> used_;
};

}  // namespace

void SynthConfig::validate() const {
  if (keys == 0) throw ConfigError("synth: at least one key is needed");
  if (occurrences < keys) throw ConfigError("synth: fewer occurrences than keys");
  if (!(noise >= 0.0 && noise <= 0.5)) throw ConfigError("synth: noise must lie in [0, 0.5]");
  if (line_length < 3 || line_length % 2 == 0) {
    throw ConfigError("synth: line length must be odd and at least 3");
  }
  if (trigger_window < 1 || trigger_window > line_length / 2) {
    throw ConfigError("synth: trigger window must fit inside a line");
  }
  if (filler_vocabulary == 0) throw ConfigError("synth: filler vocabulary is empty");
  if (!(accented_filler_rate >= 0.0 && accented_filler_rate <= 1.0)) {
    throw ConfigError("synth: accented filler rate must lie in [0, 1]");
  }
  if (language != "es" && language != "fr") {
    throw ConfigError("synth: unsupported language '" + language + "'");
  }
}

SynthCorpus generate_planted_corpus(const SynthConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  WordMaker maker(rng, config.language);
  SynthCorpus out;

  for (std::size_t i = 0; i < config.keys; ++i) {
    PlantedKey key;
    int vowel = 0;
    key.key = maker.fresh(3, &vowel);
    key.patterns = {key.key, maker.accent_last(key.key, vowel)};
    key.triggers = {maker.fresh(2), maker.fresh(2)};
    out.keys.push_back(std::move(key));
  }
  std::bernoulli_distribution accented(config.accented_filler_rate);
  for (std::size_t i = 0; i < config.filler_vocabulary; ++i) {
    int vowel = 0;
    std::string w = maker.fresh(2, &vowel);
    if (accented(rng)) w = maker.accent_last(w, vowel);
    out.fillers.push_back(std::move(w));
  }

  std::uniform_int_distribution<std::size_t> pick_key(0, config.keys - 1);
  std::uniform_int_distribution<std::size_t> pick_filler(0, config.filler_vocabulary - 1);
  std::uniform_int_distribution<int> pick_offset(1, config.trigger_window);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution noisy(config.noise);
  const int centre = config.line_length / 2;
  std::vector<std::string> line(static_cast<std::size_t>(config.line_length));
  for (std::size_t n = 0; n < config.occurrences; ++n) {
    const PlantedKey& key = out.keys[pick_key(rng)];
    const int pattern = coin(rng) ? 1 : 0;
    const int trigger = noisy(rng) ? 1 - pattern : pattern;
    const int offset = pick_offset(rng) * (coin(rng) ? 1 : -1);
    for (auto& w : line) w = out.fillers[pick_filler(rng)];
    line[static_cast<std::size_t>(centre)] = key.patterns[static_cast<std::size_t>(pattern)];
    line[static_cast<std::size_t>(centre + offset)] =
        key.triggers[static_cast<std::size_t>(trigger)];
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out.text += ' ';
      out.text += line[i];
    }
    out.text += '\n';
  }
  return out;
}

}  // namespace accentdl
