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

#include "accentdl/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "accentdl/errors.hpp"

namespace accentdl {
namespace {

struct Split {
  std::vector<TrainingInstance> train;
  std::vector<TrainingInstance> held;
};

Split split(std::span<const TrainingInstance> instances, int every) {
  Split s;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    (i % static_cast<std::size_t>(every) == static_cast<std::size_t>(every - 1)
         ? s.held
         : s.train)
        .push_back(instances[i]);
  }
  return s;
}

FeatureConfig with_window(FeatureConfig cfg, int k) {
  cfg.k = k;
  return cfg;
}

struct WordOutcome {
  DecisionList list;
  int window = 0;
  Split parts;
  // Held-out hits per candidate window and alpha; empty when not scored.
  std::vector<std::vector<std::size_t>> hits;
  std::optional<double> held_accuracy;
};

// Scores every candidate window and alpha on the held-out part.
void score_word(WordOutcome& out, const PatternEntry& entry,
                const std::vector<TrainingInstance>& instances,
                const std::vector<int>& windows, const std::vector<double>& alphas,
                const TrainConfig& config, const Lexicons& lex) {
  out.parts = split(instances, config.holdout_every);
  if (out.parts.train.empty() || out.parts.held.empty()) return;
  const auto labels = entry.spellings();
  for (int k : windows) {
    const FeatureConfig cfg = with_window(config.features, k);
    const auto train_data = featurize(out.parts.train, cfg, lex);
    const auto held_data = featurize(out.parts.held, cfg, lex);
    std::vector<std::size_t> row;
    const DecisionList raw = build_list(entry.key, labels, train_data, cfg,
                                        SmoothingConfig{alphas.front()}, config.counts);
    for (double alpha : alphas) {
      TrainConfig trial = config;
      trial.smoothing.alpha = alpha;
      const auto list =
          refine_list(rescore(raw, trial.smoothing), train_data, trial, lex);
      std::size_t hits = 0;
      for (const auto& d : held_data) hits += list.classify(d.features) == d.label ? 1 : 0;
      row.push_back(hits);
    }
    out.hits.push_back(std::move(row));
  }
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, n); ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<TrainingInstance> to_slots(std::span<const TrainingInstance> instances,
                                       const std::vector<int>& pattern_to_slot) {
  std::vector<TrainingInstance> out(instances.begin(), instances.end());
  for (auto& inst : out) inst.label = pattern_to_slot[static_cast<std::size_t>(inst.label)];
  return out;
}

}  // namespace

void TrainConfig::validate() const {
  smoothing.validate();
  interpolation.validate();
  if (min_count < 1) throw ConfigError("min-count must be at least 1");
  if (window && *window < 1) throw ConfigError("window must be at least 1");
  if (!window && candidate_windows.empty()) {
    throw ConfigError("no candidate windows to choose from");
  }
  for (int k : candidate_windows) {
    if (k < 1) throw ConfigError("candidate windows must be at least 1");
  }
  for (double a : candidate_alphas) SmoothingConfig{a}.validate();
  if (class_window < 1) throw ConfigError("class window must be at least 1");
  if (holdout_every < 2) throw ConfigError("holdout interval must be at least 2");
  if (select_delta < 0.0) throw ConfigError("selection delta must be non-negative");
  with_window(features, window.value_or(class_window)).validate();
}

DecisionList train_list(std::string target, std::vector<std::string> labels,
                        std::span<const TrainingInstance> instances,
                        const FeatureConfig& cfg, const TrainConfig& config,
                        const Lexicons& lex) {
  cfg.validate();
  const auto data = featurize(instances, cfg, lex);
  return train_list(std::move(target), std::move(labels), data, cfg, config, lex);
}

DecisionList train_list(std::string target, std::vector<std::string> labels,
                        std::span<const LabeledFeatures> data, const FeatureConfig& cfg,
                        const TrainConfig& config, const Lexicons& lex) {
  DecisionList list = build_list(std::move(target), std::move(labels), data, cfg,
                                 config.smoothing, config.counts);
  return refine_list(std::move(list), data, config, lex);
}

DecisionList refine_list(DecisionList list, std::span<const LabeledFeatures> data,
                         const TrainConfig& config, const Lexicons& lex) {
  if (config.interpolation.gamma > 0.0) {
    list = interpolate_residual(list, data, config.interpolation, config.smoothing);
  }
  if (config.prune_subsumption) list = prune_subsumption(list, lex);
  if (config.prune_cv) list = prune_cross_validation(list, data);
  if (config.prune_unused) list = prune_unused(list, data);
  return list;
}

TrainResult train(const Corpus& corpus, const TrainConfig& config,
                  const TrainResources& resources) {
  config.validate();
  TrainResult result;
  Model& model = result.model;
  TrainSummary& summary = result.summary;

  model.header.language = config.language;
  model.header.alpha = config.smoothing.alpha;
  summary.alpha = config.smoothing.alpha;
  model.header.beta = config.interpolation.beta;
  model.header.gamma = config.interpolation.gamma;
  model.header.prune_cv = config.prune_cv;
  model.header.prune_unused = config.prune_unused;
  model.header.min_count = config.min_count;
  model.diacritics = resources.diacritics;
  model.classes = resources.classes;
  model.tags = resources.tags;
  model.lemmas = resources.lemmas;
  const Lexicons lex = model.lexicons();

  const auto words = word_tokens(corpus, model.diacritics);
  const bool any_word = std::any_of(words.begin(), words.end(), [](const auto& doc) {
    return std::any_of(doc.begin(), doc.end(),
                       [](const WordToken& w) { return !w.form.empty(); });
  });
  if (!any_word) throw InsufficientDataError("corpus contains no words");

  model.patterns = build_pattern_table(words, config.min_count);
  summary.keys = model.patterns.size();
  const auto ambiguous = model.patterns.ambiguous_keys();
  summary.ambiguous_keys = ambiguous.size();
  if (ambiguous.empty()) {
    summary.warnings.push_back("no ambiguous keys found; the model holds the pattern "
                               "table only");
    return result;
  }

  int widest = std::max(config.class_window, 2);
  if (config.window) widest = std::max(widest, *config.window);
  for (int k : config.candidate_windows) widest = std::max(widest, k);
  const auto instances = collect_all_contexts(words, model.patterns, widest);

  const std::vector<int> windows =
      config.window ? std::vector<int>{*config.window} : config.candidate_windows;
  const std::vector<double> alphas = config.candidate_alphas.empty()
                                         ? std::vector<double>{config.smoothing.alpha}
                                         : config.candidate_alphas;
  const bool need_heldout =
      !resources.class_specs.empty() || windows.size() > 1 || alphas.size() > 1;
  std::vector<std::optional<WordOutcome>> outcomes(ambiguous.size());
  parallel_for(ambiguous.size(), config.threads, [&](std::size_t i) {
    WordOutcome out;
    if (need_heldout) {
      score_word(out, *model.patterns.find(ambiguous[i]), instances.at(ambiguous[i]),
                 windows, alphas, config, lex);
    }
    outcomes[i] = std::move(out);
  });

  // Alpha with the most held-out hits, each word at its best window.
  std::size_t alpha_index = 0;
  std::size_t best_total = 0;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    std::size_t total = 0;
    for (const auto& o : outcomes) {
      std::size_t best = 0;
      for (const auto& row : o->hits) best = std::max(best, row[a]);
      total += best;
    }
    if (a == 0 || total > best_total) {
      best_total = total;
      alpha_index = a;
    }
  }
  TrainConfig final_config = config;
  final_config.smoothing.alpha = alphas[alpha_index];
  model.header.alpha = final_config.smoothing.alpha;
  summary.alpha = final_config.smoothing.alpha;

  parallel_for(ambiguous.size(), config.threads, [&](std::size_t i) {
    WordOutcome& out = *outcomes[i];
    const PatternEntry& entry = *model.patterns.find(ambiguous[i]);
    std::size_t window_index = windows.size() - 1;
    if (!out.hits.empty()) {
      std::optional<std::size_t> best;
      for (std::size_t w = 0; w < windows.size(); ++w) {
        if (!best || out.hits[w][alpha_index] > out.hits[*best][alpha_index]) best = w;
      }
      window_index = *best;
      out.held_accuracy = static_cast<double>(out.hits[window_index][alpha_index]) /
                          static_cast<double>(out.parts.held.size());
    }
    out.window = windows[window_index];
    out.list = train_list(entry.key, entry.spellings(), instances.at(ambiguous[i]),
                          with_window(config.features, out.window), final_config, lex);
  });
  std::map<std::string, WordOutcome*> by_key;
  for (std::size_t i = 0; i < ambiguous.size(); ++i) by_key[ambiguous[i]] = &*outcomes[i];

  std::set<std::string> assigned;
  for (const auto& spec : resources.class_specs) {
    const bool explicit_members = !spec.members.empty();
    const auto& candidates = explicit_members ? spec.members : ambiguous;
    std::vector<ClassMember> members;
    for (const auto& key : candidates) {
      if (assigned.count(key) != 0) continue;
      const PatternEntry* entry = model.patterns.find(key);
      if (entry == nullptr || !entry->ambiguous()) {
        if (explicit_members) {
          summary.warnings.push_back("class '" + spec.name + "': '" + key +
                                     "' is not an ambiguous word");
        }
        continue;
      }
      auto slots = align_slots(spec, *entry);
      if (!slots) {
        if (explicit_members) {
          summary.warnings.push_back("class '" + spec.name + "': patterns of '" + key +
                                     "' do not match its slots");
        }
        continue;
      }
      members.push_back({key, instances.at(key), std::move(*slots)});
    }
    if (members.size() < 2) {
      summary.warnings.push_back("class '" + spec.name +
                                 "' skipped: fewer than two member words with data");
      continue;
    }

    const FeatureConfig class_cfg = with_window(config.features, config.class_window);
    std::vector<ClassMember> train_members;
    for (const auto& m : members) {
      train_members.push_back({m.key, by_key.at(m.key)->parts.train, m.pattern_to_slot});
    }
    const auto trial_pool = pool_class_instances(train_members, QuotaPolicy::kMedian);
    std::optional<DecisionList> trial;
    if (!trial_pool.empty()) {
      trial = train_list(spec.name, spec.slots, trial_pool, class_cfg, final_config, lex);
    }

    std::vector<std::string> chosen;
    for (const auto& m : members) {
      const WordOutcome& word = *by_key.at(m.key);
      if (!word.held_accuracy || !trial) {
        chosen.push_back(m.key);
        continue;
      }
      const auto held = to_slots(word.parts.held, m.pattern_to_slot);
      const double class_acc = accuracy(*trial, featurize(held, class_cfg, lex));
      if (select_list(*word.held_accuracy, class_acc, config.select_delta) ==
          ListChoice::kClass) {
        chosen.push_back(m.key);
      }
    }
    if (chosen.empty()) continue;

    auto pooled = pool_class_instances(members, QuotaPolicy::kMedian);
    DecisionList list =
        train_list(spec.name, spec.slots, pooled, class_cfg, final_config, lex);
    for (const auto& key : chosen) {
      assigned.insert(key);
      model.class_assignment[key] = spec.name;
    }
    summary.list_sizes[spec.name] = list.size();
    model.class_lists[spec.name] = ClassList{spec, std::move(list)};
  }

  for (std::size_t i = 0; i < ambiguous.size(); ++i) {
    const auto& key = ambiguous[i];
    if (assigned.count(key) != 0) continue;
    summary.chosen_window[key] = outcomes[i]->window;
    summary.list_sizes[key] = outcomes[i]->list.size();
    model.word_lists.emplace(key, std::move(outcomes[i]->list));
  }
  model.validate();
  return result;
}

}  // namespace accentdl
