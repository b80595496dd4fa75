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

// Planted-corpus generator. Every planted key has two accent patterns, and
// each occurrence sits on its own line with a trigger word nearby that names
// the pattern, except for a controlled fraction of noisy occurrences where the
// trigger of the other pattern is planted instead.

#ifndef ACCENTDL_SYNTH_HPP_
#define ACCENTDL_SYNTH_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace accentdl {

struct SynthConfig {
  std::size_t occurrences = 10000;  // planted-key occurrences, one per line
  std::size_t keys = 10;
  double noise = 0.0;               // probability of planting the wrong trigger
  int trigger_window = 10;          // trigger offset drawn from +-window, never 0
  int line_length = 41;             // words per line; the key sits in the middle
  std::size_t filler_vocabulary = 50;
  double accented_filler_rate = 0.1;
  std::uint64_t seed = 1;
  std::string language = "es";  // "es" or "fr"

  // Throws ConfigError on out-of-range values.
  void validate() const;
};

struct PlantedKey {
  std::string key;
  std::array<std::string, 2> patterns;  // plain, accented
  std::array<std::string, 2> triggers;  // triggers[i] announces patterns[i]
};

struct SynthCorpus {
  std::string text;
  std::vector<PlantedKey> keys;
  std::vector<std::string> fillers;
};

// Deterministic for a fixed configuration.
SynthCorpus generate_planted_corpus(const SynthConfig& config);

}  // namespace accentdl

#endif  // ACCENTDL_SYNTH_HPP_
