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

// Runtime accent restoration: table lookup, single-best-evidence
// classification and the DEFAULT fallback.

#ifndef ACCENTDL_RESTORER_HPP_
#define ACCENTDL_RESTORER_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "accentdl/corpus.hpp"
#include "accentdl/decision_list.hpp"
#include "accentdl/diacritics.hpp"
#include "accentdl/features.hpp"
#include "accentdl/text.hpp"

namespace accentdl {

struct ModelHeader {
  int version = 1;
  std::string language = "fr";
  double alpha = 0.1;
  double beta = 1.0;
  double gamma = 0.0;
  bool prune_cv = true;
  bool prune_unused = false;
  std::uint64_t min_count = 2;

  friend bool operator==(const ModelHeader&, const ModelHeader&) = default;
};

struct ClassList {
  AmbiguityClassSpec spec;
  DecisionList list;

  friend bool operator==(const ClassList&, const ClassList&) = default;
};

struct Model {
  ModelHeader header;
  DiacriticMap diacritics;
  PatternTable patterns;
  WordClassSet classes;
  TagLexicon tags;
  LemmaLexicon lemmas;
  std::map<std::string, DecisionList> word_lists;
  std::map<std::string, ClassList> class_lists;
  // Ambiguous keys served by an ambiguity-class list instead of their own.
  std::map<std::string, std::string> class_assignment;

  Lexicons lexicons() const { return {&classes, &tags, &lemmas}; }

  // Throws ContractViolation unless every ambiguous key resolves to exactly
  // one list whose labels line up with the key's patterns.
  void validate() const;

  friend bool operator==(const Model&, const Model&) = default;
};

// Model equality with log-likelihoods compared at `decimals` places.
bool equal_at_precision(const Model& a, const Model& b, int decimals = 4);

struct Classification {
  int label = 0;
  // Entry that decided, or nullopt when DEFAULT was used.
  std::optional<std::size_t> matched;
};

// Label of the highest-ranked entry present in `context`, else DEFAULT.
Classification classify_traced(const DecisionList& list, const ContextView& context,
                               const Lexicons& lex = {});
int classify(const DecisionList& list, const ContextView& context,
             const Lexicons& lex = {});

// Comparison classifier: every matching entry votes its log-likelihood for its
// classification and the largest total wins. Ties go to the tied label whose
// entry ranks highest; no match gives DEFAULT.
int classify_combined(const DecisionList& list, std::span<const Feature> features);
int classify_combined(const DecisionList& list, const ContextView& context,
                      const Lexicons& lex = {});

struct RestoreOptions {
  // Leave tokens that already carry diacritics untouched.
  bool trust_existing = false;
  // When set, one line per ambiguous token: key, evidence, LL, pattern.
  std::ostream* trace = nullptr;
};

struct RestoredToken {
  Token token;         // as tokenized from the input
  std::string output;  // restored surface (== token.surface when unchanged)
  bool changed = false;
};

// Immutable dispatch table over a model. The model must outlive it.
class Restorer {
 public:
  explicit Restorer(const Model& model);

  struct Route {
    const PatternEntry* entry = nullptr;
    const DecisionList* list = nullptr;  // null for unambiguous keys
    std::vector<int> label_to_pattern;   // identity for word lists
  };

  struct Decision {
    int pattern = 0;
    const DecisionList* list = nullptr;
    std::optional<std::size_t> matched;
  };

  enum class Mode { kBestEvidence, kCombined };

  const Model& model() const { return *model_; }

  // nullptr for keys missing from the pattern table.
  const Route* route(std::string_view key) const;

  // Pattern for the ambiguous occurrence `keys[index]`.
  Decision decide(const Route& route, std::span<const std::string> keys,
                  std::size_t index, Mode mode = Mode::kBestEvidence) const;

  std::vector<RestoredToken> restore_tokens(std::string_view text,
                                            const RestoreOptions& opts = {}) const;
  std::string restore(std::string_view text, const RestoreOptions& opts = {}) const;

 private:
  const Model* model_;
  std::unordered_map<std::string, Route> routes_;
};

std::string restore(std::string_view text, const Model& model,
                    const RestoreOptions& opts = {});

// Keys of the word and number tokens of `tokens`, in order, and the position
// of each token in that sequence (npos for punctuation and other tokens).
struct KeySequence {
  std::vector<std::string> keys;
  std::vector<std::size_t> position;
};
KeySequence key_sequence(std::span<const Token> tokens, const DiacriticMap& map);

}  // namespace accentdl

#endif  // ACCENTDL_RESTORER_HPP_
