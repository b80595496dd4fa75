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

// Decision lists: evidence ranked by smoothed log-likelihood, applied by first
// match, with optional residual interpolation, pruning and class pooling.

#ifndef ACCENTDL_DECISION_LIST_HPP_
#define ACCENTDL_DECISION_LIST_HPP_

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "accentdl/corpus.hpp"
#include "accentdl/features.hpp"

namespace accentdl {

// Additive smoothing constant added to every count before taking ratios.
struct SmoothingConfig {
  double alpha = 0.1;

  void validate() const;
};

// Interpolated counts are beta * global + gamma * residual.
struct InterpolationConfig {
  double beta = 1.0;
  double gamma = 0.0;

  void validate() const;
};

struct LabeledFeatures {
  int label = 0;
  std::vector<Feature> features;  // sorted, unique
};

std::vector<LabeledFeatures> featurize(std::span<const TrainingInstance> instances,
                                       const FeatureConfig& cfg,
                                       const Lexicons& lex = {});

struct CountOptions {
  // Minimum total count for adjacent, pair, tag and suffix evidence.
  std::uint32_t min_count = 1;
  // Minimum total count for window, class-window and lemma-window evidence.
  std::uint32_t min_window_count = 2;
  // Skip pair evidence whose adjacent word (or tag) is already unambiguous.
  bool suppress_dependent_pairs = true;
};

// Per-label counts for each feature.
using FeatureDistribution =
    std::unordered_map<Feature, std::vector<double>, FeatureHash>;

// Throws InsufficientDataError when `data` is empty.
FeatureDistribution count_distributions(std::span<const LabeledFeatures> data,
                                        int label_count,
                                        const CountOptions& opts = {});
FeatureDistribution count_distributions(std::span<const TrainingInstance> instances,
                                        int label_count, const FeatureConfig& cfg,
                                        const Lexicons& lex = {},
                                        const CountOptions& opts = {});

struct LogLikelihood {
  int classification = 0;
  double value = 0.0;
};

// classification = label with the largest count; value =
// log2((c_best + alpha) / (c_runner_up + alpha)) where c_runner_up is the
// largest competing count. Count ties go to the label listed first in
// `preference` (label order when empty). Requires a non-empty `counts`.
LogLikelihood log_likelihood(std::span<const double> counts, double alpha,
                             std::span<const int> preference = {});

struct DecisionEntry {
  Feature feature;
  double log_likelihood = 0.0;
  int classification = 0;
  std::vector<double> counts;

  friend bool operator==(const DecisionEntry&, const DecisionEntry&) = default;
};

// Sort order of a list: log-likelihood descending, then larger total count,
// then feature order.
bool ranks_before(const DecisionEntry& a, const DecisionEntry& b);

class DecisionList {
 public:
  DecisionList() = default;
  // `labels` names the classifications (accent patterns or class slots).
  // Entries are kept in the order given.
  DecisionList(std::string target, std::vector<std::string> labels,
               FeatureConfig config, std::vector<DecisionEntry> entries,
               int default_label);

  const std::string& target() const { return target_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const FeatureConfig& config() const { return config_; }
  const std::vector<DecisionEntry>& entries() const { return entries_; }
  int default_label() const { return default_label_; }
  std::size_t size() const { return entries_.size(); }

  // Rank of `feature` in the list, if present.
  std::optional<std::size_t> rank_of(const Feature& feature) const;

  // Index of the highest-ranked entry whose feature is in `features`.
  std::optional<std::size_t> first_match(std::span<const Feature> features) const;

  // Classification of the first match, or the default label.
  int classify(std::span<const Feature> features) const;

  friend bool operator==(const DecisionList& a, const DecisionList& b) {
    return a.target_ == b.target_ && a.labels_ == b.labels_ &&
           a.config_ == b.config_ && a.entries_ == b.entries_ &&
           a.default_label_ == b.default_label_;
  }

 private:
  std::string target_;
  std::vector<std::string> labels_;
  FeatureConfig config_;
  std::vector<DecisionEntry> entries_;
  int default_label_ = 0;
  std::unordered_map<Feature, std::size_t, FeatureHash> index_;
};

// Equality with log-likelihoods compared after rounding to `decimals`.
bool equal_at_precision(const DecisionList& a, const DecisionList& b,
                        int decimals = 4);

// Entries for every retained feature, sorted, ending in the most frequent
// label as default. Data with a single distinct label yields a default-only
// list. Throws InsufficientDataError when `data` is empty.
DecisionList build_list(std::string target, std::vector<std::string> labels,
                        std::span<const LabeledFeatures> data,
                        const FeatureConfig& cfg, const SmoothingConfig& smoothing,
                        const CountOptions& opts = {});
DecisionList build_list(std::string target, std::vector<std::string> labels,
                        std::span<const TrainingInstance> instances,
                        const FeatureConfig& cfg, const SmoothingConfig& smoothing,
                        const Lexicons& lex = {}, const CountOptions& opts = {});

// Recomputes every log-likelihood from the stored counts under `smoothing`
// and re-sorts. Classifications are unchanged.
DecisionList rescore(const DecisionList& list, const SmoothingConfig& smoothing);

// Re-estimates each entry, top-down, from beta * global counts plus gamma *
// counts over the instances no higher entry matched, then re-sorts.
// gamma == 0 returns the list unchanged.
DecisionList interpolate_residual(const DecisionList& list,
                                  std::span<const LabeledFeatures> data,
                                  const InterpolationConfig& ic,
                                  const SmoothingConfig& smoothing);

// Drops entries that can never be the first match because a higher entry's
// feature is present whenever theirs is (a class, tag or lemma above one of
// its member words, a word above a pair containing it, ...).
DecisionList prune_subsumption(const DecisionList& list, const Lexicons& lex = {});

// Repeatedly removes entries that are the first match for more misclassified
// than correctly classified `cv` instances, until nothing changes or
// `max_passes` passes have run.
DecisionList prune_cross_validation(const DecisionList& list,
                                    std::span<const LabeledFeatures> cv,
                                    int max_passes = 10);

// Removes entries that are never the first match on `cv`.
// Throws InsufficientDataError when `cv` is empty.
DecisionList prune_unused(const DecisionList& list,
                          std::span<const LabeledFeatures> cv);

// Fraction of `data` the list classifies correctly (0 for empty data).
double accuracy(const DecisionList& list, std::span<const LabeledFeatures> data);

// A family of words sharing one systematic accent alternation, e.g. "-ara/-ará"
// with slots {"ara", "ará"}. File format: `NAME<TAB>slot1 slot2 ...` with an
// optional third field listing member words; without it, members are found in
// the pattern table.
struct AmbiguityClassSpec {
  std::string name;
  std::vector<std::string> slots;
  std::vector<std::string> members;

  static std::vector<AmbiguityClassSpec> parse(std::istream& in,
                                               const std::string& source,
                                               const DiacriticMap& map);
  static std::vector<AmbiguityClassSpec> load(const std::string& path,
                                              const DiacriticMap& map);

  friend bool operator==(const AmbiguityClassSpec&,
                         const AmbiguityClassSpec&) = default;
};

// Maps each pattern id of `entry` to a slot, when every pattern is one shared
// stem plus exactly one distinct slot ending.
std::optional<std::vector<int>> align_slots(const AmbiguityClassSpec& spec,
                                            const PatternEntry& entry);

struct ClassMember {
  std::string key;
  std::vector<TrainingInstance> instances;  // labels are pattern ids
  std::vector<int> pattern_to_slot;
};

// Target placeholder of pooled class instances.
inline constexpr std::string_view kPooledTarget = "<TARGET>";

enum class QuotaPolicy { kMedian, kNone };

// Per-member cap: the lower median of the member counts.
std::size_t median_quota(std::span<const std::size_t> counts);

// Relabels instances to slots and caps every member at its quota, keeping an
// evenly spaced subsample of the capped members.
std::vector<TrainingInstance> pool_class_instances(std::span<const ClassMember> members,
                                                   QuotaPolicy policy);

// Throws InsufficientDataError with fewer than two members holding data.
DecisionList build_class_list(const AmbiguityClassSpec& spec,
                              std::span<const ClassMember> members,
                              const FeatureConfig& cfg,
                              const SmoothingConfig& smoothing,
                              const Lexicons& lex = {}, const CountOptions& opts = {},
                              QuotaPolicy policy = QuotaPolicy::kMedian);

enum class ListChoice { kWord, kClass };

// The class list is kept when its accuracy is within `delta` of the word list.
ListChoice select_list(double word_accuracy, double class_accuracy,
                       double delta = 0.01);

}  // namespace accentdl

#endif  // ACCENTDL_DECISION_LIST_HPP_
