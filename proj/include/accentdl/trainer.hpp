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

// End-to-end training: pattern table, contexts, per-word lists with window
// selection and pruning, and pooled ambiguity-class lists.

#ifndef ACCENTDL_TRAINER_HPP_
#define ACCENTDL_TRAINER_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "accentdl/corpus.hpp"
#include "accentdl/decision_list.hpp"
#include "accentdl/features.hpp"
#include "accentdl/restorer.hpp"

namespace accentdl {

struct TrainConfig {
  std::string language = "fr";
  std::uint64_t min_count = 2;
  // Fixed window for word lists; when unset each word picks the best of
  // `candidate_windows` on held-out data.
  std::optional<int> window;
  std::vector<int> candidate_windows{4, 20};
  int class_window = 20;
  FeatureConfig features;  // kinds and suffix settings; k is set per list
  SmoothingConfig smoothing;
  // When non-empty, one alpha for the whole model is picked from these by
  // pooled held-out accuracy, replacing `smoothing.alpha`.
  std::vector<double> candidate_alphas;
  InterpolationConfig interpolation;
  CountOptions counts;
  bool prune_subsumption = true;
  bool prune_cv = true;
  bool prune_unused = false;
  double select_delta = 0.01;
  // Every n-th instance of a word is held out for window and list selection.
  int holdout_every = 5;
  unsigned threads = 1;

  void validate() const;
};

struct TrainResources {
  DiacriticMap diacritics = DiacriticMap::builtin("fr");
  WordClassSet classes;
  TagLexicon tags;
  LemmaLexicon lemmas;
  std::vector<AmbiguityClassSpec> class_specs;
};

struct TrainSummary {
  std::size_t keys = 0;
  std::size_t ambiguous_keys = 0;
  std::map<std::string, std::size_t> list_sizes;  // word and class lists
  std::map<std::string, int> chosen_window;
  double alpha = 0.0;
  std::vector<std::string> warnings;
};

struct TrainResult {
  Model model;
  TrainSummary summary;
};

// Builds a list from `instances` with the configured pruning steps.
DecisionList train_list(std::string target, std::vector<std::string> labels,
                        std::span<const TrainingInstance> instances,
                        const FeatureConfig& cfg, const TrainConfig& config,
                        const Lexicons& lex);
DecisionList train_list(std::string target, std::vector<std::string> labels,
                        std::span<const LabeledFeatures> data, const FeatureConfig& cfg,
                        const TrainConfig& config, const Lexicons& lex);

// Applies interpolation and the configured pruning steps to a built list.
DecisionList refine_list(DecisionList list, std::span<const LabeledFeatures> data,
                         const TrainConfig& config, const Lexicons& lex);

// Throws InsufficientDataError on a corpus without words.
TrainResult train(const Corpus& corpus, const TrainConfig& config,
                  const TrainResources& resources);

}  // namespace accentdl

#endif  // ACCENTDL_TRAINER_HPP_
