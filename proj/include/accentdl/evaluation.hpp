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

// Strip-and-restore evaluation against an accented reference corpus.

#ifndef ACCENTDL_EVALUATION_HPP_
#define ACCENTDL_EVALUATION_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "accentdl/corpus.hpp"
#include "accentdl/restorer.hpp"

namespace accentdl {

struct TokenTally {
  std::size_t n = 0;
  std::size_t agree = 0;
  std::size_t prior = 0;  // tokens the most-common-pattern baseline gets right

  double agreement() const;
  double prior_rate() const;
  TokenTally& operator+=(const TokenTally& other);
};

struct EvalRow {
  std::string key;
  std::vector<std::string> patterns;
  TokenTally tally;
};

// Rows cover keys ambiguous in the training table. Word tokens fall in exactly
// one of three groups: ambiguous, unambiguous, or unseen in training. Unseen
// tokens count as agreeing only when left equal to the reference, and are
// excluded from the prior.
struct EvalReport {
  std::vector<EvalRow> rows;  // sorted by key
  TokenTally ambiguous;
  TokenTally unambiguous;
  TokenTally unseen;

  // Ambiguous plus unambiguous tokens.
  TokenTally overall() const;
  std::size_t total_tokens() const;
  // Fractions of word tokens that are ambiguous, unambiguous and unseen.
  std::array<double, 3> shares() const;

  // Occurrence-weighted combination.
  void merge(const EvalReport& other);
};

struct LabeledOccurrence {
  std::string key;
  std::string pattern;
};

struct PriorResult {
  double prior = 0.0;
  std::size_t counted = 0;
  std::size_t unseen = 0;
};

// Fraction of occurrences carrying the training-majority pattern of their key.
PriorResult prior_baseline(const PatternTable& table,
                           std::span<const LabeledOccurrence> test);

// Labeled word occurrences of an accented corpus.
std::vector<LabeledOccurrence> labeled_occurrences(const Corpus& corpus,
                                                   const DiacriticMap& map);

// Removes diacritics from every word of `text`, keeping case and spacing.
std::string strip_text(std::string_view text, const DiacriticMap& map);

// Strips `test`, restores it with `model` and compares every word token with
// the reference. Throws InsufficientDataError when `test` has no words.
EvalReport evaluate_split(const Model& model, const Corpus& test);

struct SignTest {
  std::size_t disagreements = 0;
  std::size_t best_wins = 0;
  double z = 0.0;        // standard deviations from an even split
  double p_value = 1.0;  // two-sided exact binomial
};

SignTest sign_test(std::size_t best_wins, std::size_t combined_wins);

// Single-best-evidence versus combined-evidence outcomes on ambiguous tokens.
struct ComparisonTable {
  std::size_t n = 0;
  std::size_t both_correct = 0;
  std::size_t both_wrong = 0;
  std::size_t best_correct = 0;      // disagree, single best evidence right
  std::size_t combined_correct = 0;  // disagree, combined evidence right

  // Cell fractions in the order above; all zero when n == 0.
  std::array<double, 4> cells() const;
  SignTest significance() const;
  void merge(const ComparisonTable& other);
};

ComparisonTable compare_best_vs_combined(const Model& model, const Corpus& test);

struct FoldSplit {
  Corpus train;
  Corpus test;
};

// Contiguous train/test partitions. Marked corpora split between documents,
// others between lines; test blocks never share a document with training
// text. `shuffle_seed` permutes the units before blocking.
std::vector<FoldSplit> make_folds(const Corpus& corpus, int folds,
                                  std::optional<std::uint64_t> shuffle_seed = {});

using Trainer = std::function<Model(const Corpus&)>;

struct KFoldResult {
  EvalReport pooled;
  std::vector<EvalReport> folds;
  ComparisonTable comparison;
};

// Throws ConfigError for folds < 2 and InsufficientDataError when the corpus
// has fewer units than folds.
KFoldResult kfold(const Corpus& corpus, int folds, const Trainer& trainer,
                  std::optional<std::uint64_t> shuffle_seed = {});

void print_report(std::ostream& out, const EvalReport& report);
// `key<TAB>N<TAB>agreement<TAB>prior` per row.
void write_report_tsv(std::ostream& out, const EvalReport& report);
void print_comparison(std::ostream& out, const ComparisonTable& table);

}  // namespace accentdl

#endif  // ACCENTDL_EVALUATION_HPP_
