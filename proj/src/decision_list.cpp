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

#include "accentdl/decision_list.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "accentdl/errors.hpp"
#include "accentdl/text.hpp"

namespace accentdl {
namespace {

bool is_window_kind(FeatureKind kind) {
  return kind == FeatureKind::kWindow || kind == FeatureKind::kClassWindow ||
         kind == FeatureKind::kLemmaWindow;
}

bool has(std::span<const Feature> sorted, const Feature& f) {
  return std::binary_search(sorted.begin(), sorted.end(), f);
}

double total(std::span<const double> counts) {
  return std::accumulate(counts.begin(), counts.end(), 0.0);
}

bool single_label(const std::vector<double>& counts) {
  return std::count_if(counts.begin(), counts.end(),
                       [](double c) { return c > 0; }) == 1;
}

// Labels by descending frequency in `data`, ties to the lower id.
std::vector<int> label_preference(std::span<const LabeledFeatures> data,
                                  int label_count) {
  std::vector<std::size_t> freq(static_cast<std::size_t>(label_count), 0);
  for (const auto& d : data) {
    if (d.label < 0 || d.label >= label_count) {
      throw ContractViolation("instance label out of range");
    }
    ++freq[static_cast<std::size_t>(d.label)];
  }
  std::vector<int> order(static_cast<std::size_t>(label_count));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return freq[static_cast<std::size_t>(a)] > freq[static_cast<std::size_t>(b)];
  });
  return order;
}

void sort_entries(std::vector<DecisionEntry>& entries) {
  std::sort(entries.begin(), entries.end(), ranks_before);
}

DecisionList with_entries(const DecisionList& list, std::vector<DecisionEntry> entries) {
  return DecisionList(list.target(), list.labels(), list.config(), std::move(entries),
                      list.default_label());
}

// Adjacent single-word (or single-tag) evidence a pair feature depends on.
std::vector<Feature> pair_components(const Feature& f) {
  std::vector<Feature> out;
  auto side = [&](int offset, const std::string& value, bool is_tag) {
    if (offset != -1 && offset != 1) return;
    out.push_back(is_tag ? Feature::tag_at(offset, value) : Feature::word_at(offset, value));
  };
  if (f.kind == FeatureKind::kPair) {
    side(f.offset, f.value, false);
    side(f.offset2, f.value2, false);
  } else if (f.kind == FeatureKind::kTagPair) {
    side(f.offset, f.value, (f.tag_mask & 1) != 0);
    side(f.offset2, f.value2, (f.tag_mask & 2) != 0);
  }
  return out;
}

std::string round_ll(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::vector<std::string> split_ws(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto start = text.find_first_not_of(" \t", pos);
    if (start == std::string::npos) break;
    auto end = text.find_first_of(" \t", start);
    if (end == std::string::npos) end = text.size();
    out.push_back(text.substr(start, end - start));
    pos = end;
  }
  return out;
}

}  // namespace

void SmoothingConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be a positive number");
  }
}

void InterpolationConfig::validate() const {
  if (beta < 0.0 || gamma < 0.0 || std::abs(beta + gamma - 1.0) > 1e-9) {
    throw ConfigError("beta and gamma must be non-negative and sum to 1");
  }
}

std::vector<LabeledFeatures> featurize(std::span<const TrainingInstance> instances,
                                       const FeatureConfig& cfg, const Lexicons& lex) {
  std::vector<LabeledFeatures> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) {
    out.push_back({inst.label, extract_features(inst.view(), cfg, lex)});
  }
  return out;
}

FeatureDistribution count_distributions(std::span<const LabeledFeatures> data,
                                        int label_count, const CountOptions& opts) {
  if (data.empty()) throw InsufficientDataError("no training instances");
  if (label_count < 1) throw ContractViolation("label count must be positive");
  FeatureDistribution dist;
  for (const auto& d : data) {
    if (d.label < 0 || d.label >= label_count) {
      throw ContractViolation("instance label out of range");
    }
    for (const auto& f : d.features) {
      auto& counts = dist[f];
      if (counts.empty()) counts.assign(static_cast<std::size_t>(label_count), 0.0);
      counts[static_cast<std::size_t>(d.label)] += 1.0;
    }
  }

  std::vector<Feature> drop;
  for (const auto& [f, counts] : dist) {
    const double n = total(counts);
    const double min = is_window_kind(f.kind) ? opts.min_window_count : opts.min_count;
    if (n < min) {
      drop.push_back(f);
      continue;
    }
    if (opts.suppress_dependent_pairs) {
      for (const auto& c : pair_components(f)) {
        const auto it = dist.find(c);
        if (it != dist.end() && single_label(it->second)) {
          drop.push_back(f);
          break;
        }
      }
    }
  }
  for (const auto& f : drop) dist.erase(f);
  return dist;
}

FeatureDistribution count_distributions(std::span<const TrainingInstance> instances,
                                        int label_count, const FeatureConfig& cfg,
                                        const Lexicons& lex, const CountOptions& opts) {
  const auto data = featurize(instances, cfg, lex);
  return count_distributions(data, label_count, opts);
}

LogLikelihood log_likelihood(std::span<const double> counts, double alpha,
                             std::span<const int> preference) {
  if (counts.empty()) throw ContractViolation("empty count vector");
  std::vector<int> order(preference.begin(), preference.end());
  for (int i = 0; i < static_cast<int>(counts.size()); ++i) {
    if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
  }
  int best = order.front();
  for (int label : order) {
    if (counts[static_cast<std::size_t>(label)] > counts[static_cast<std::size_t>(best)]) {
      best = label;
    }
  }
  double runner_up = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (static_cast<int>(i) != best) runner_up = std::max(runner_up, counts[i]);
  }
  const double value =
      std::log2((counts[static_cast<std::size_t>(best)] + alpha) / (runner_up + alpha));
  return {best, value};
}

bool ranks_before(const DecisionEntry& a, const DecisionEntry& b) {
  if (a.log_likelihood != b.log_likelihood) return a.log_likelihood > b.log_likelihood;
  const double ta = total(a.counts);
  const double tb = total(b.counts);
  if (ta != tb) return ta > tb;
  return a.feature < b.feature;
}

DecisionList::DecisionList(std::string target, std::vector<std::string> labels,
                           FeatureConfig config, std::vector<DecisionEntry> entries,
                           int default_label)
    : target_(std::move(target)),
      labels_(std::move(labels)),
      config_(std::move(config)),
      entries_(std::move(entries)),
      default_label_(default_label) {
  const int n = static_cast<int>(labels_.size());
  if (default_label_ < 0 || default_label_ >= std::max(n, 1)) {
    throw ContractViolation("default label out of range for list '" + target_ + "'");
  }
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.classification < 0 || e.classification >= n) {
      throw ContractViolation("entry classification out of range in list '" +
                              target_ + "'");
    }
    if (!index_.emplace(e.feature, i).second) {
      throw ContractViolation("duplicate evidence in list '" + target_ + "'");
    }
  }
}

std::optional<std::size_t> DecisionList::rank_of(const Feature& feature) const {
  const auto it = index_.find(feature);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> DecisionList::first_match(
    std::span<const Feature> features) const {
  std::optional<std::size_t> best;
  for (const auto& f : features) {
    const auto it = index_.find(f);
    if (it != index_.end() && (!best || it->second < *best)) best = it->second;
  }
  return best;
}

int DecisionList::classify(std::span<const Feature> features) const {
  const auto match = first_match(features);
  return match ? entries_[*match].classification : default_label_;
}

bool equal_at_precision(const DecisionList& a, const DecisionList& b, int decimals) {
  if (a.target() != b.target() || a.labels() != b.labels() ||
      !(a.config() == b.config()) || a.default_label() != b.default_label() ||
      a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.entries()[i];
    const auto& y = b.entries()[i];
    if (!(x.feature == y.feature) || x.classification != y.classification ||
        x.counts != y.counts ||
        round_ll(x.log_likelihood, decimals) != round_ll(y.log_likelihood, decimals)) {
      return false;
    }
  }
  return true;
}

DecisionList build_list(std::string target, std::vector<std::string> labels,
                        std::span<const LabeledFeatures> data,
                        const FeatureConfig& cfg, const SmoothingConfig& smoothing,
                        const CountOptions& opts) {
  smoothing.validate();
  if (data.empty()) throw InsufficientDataError("no training data for '" + target + "'");
  const int label_count = static_cast<int>(labels.size());
  const auto preference = label_preference(data, label_count);
  const int default_label = preference.front();

  std::vector<bool> seen(labels.size(), false);
  for (const auto& d : data) seen[static_cast<std::size_t>(d.label)] = true;
  if (std::count(seen.begin(), seen.end(), true) < 2) {
    return DecisionList(std::move(target), std::move(labels), cfg, {}, default_label);
  }

  const FeatureDistribution dist = count_distributions(data, label_count, opts);
  std::vector<DecisionEntry> entries;
  entries.reserve(dist.size());
  for (const auto& [feature, counts] : dist) {
    const auto ll = log_likelihood(counts, smoothing.alpha, preference);
    entries.push_back({feature, ll.value, ll.classification, counts});
  }
  sort_entries(entries);
  return DecisionList(std::move(target), std::move(labels), cfg, std::move(entries),
                      default_label);
}

DecisionList build_list(std::string target, std::vector<std::string> labels,
                        std::span<const TrainingInstance> instances,
                        const FeatureConfig& cfg, const SmoothingConfig& smoothing,
                        const Lexicons& lex, const CountOptions& opts) {
  cfg.validate();
  const auto data = featurize(instances, cfg, lex);
  return build_list(std::move(target), std::move(labels), data, cfg, smoothing, opts);
}

DecisionList rescore(const DecisionList& list, const SmoothingConfig& smoothing) {
  smoothing.validate();
  std::vector<DecisionEntry> entries = list.entries();
  for (auto& e : entries) {
    const double best = e.counts[static_cast<std::size_t>(e.classification)];
    double runner_up = 0.0;
    for (std::size_t l = 0; l < e.counts.size(); ++l) {
      if (static_cast<int>(l) != e.classification) runner_up = std::max(runner_up, e.counts[l]);
    }
    e.log_likelihood = std::log2((best + smoothing.alpha) / (runner_up + smoothing.alpha));
  }
  sort_entries(entries);
  return with_entries(list, std::move(entries));
}

DecisionList interpolate_residual(const DecisionList& list,
                                  std::span<const LabeledFeatures> data,
                                  const InterpolationConfig& ic,
                                  const SmoothingConfig& smoothing) {
  ic.validate();
  smoothing.validate();
  if (ic.gamma == 0.0) return list;
  const int label_count = static_cast<int>(list.labels().size());
  const auto preference = label_preference(data, label_count);

  std::vector<bool> residual(data.size(), true);
  std::vector<DecisionEntry> entries;
  entries.reserve(list.size());
  for (const auto& entry : list.entries()) {
    std::vector<double> local(static_cast<std::size_t>(label_count), 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (!residual[i] || !has(data[i].features, entry.feature)) continue;
      local[static_cast<std::size_t>(data[i].label)] += 1.0;
      residual[i] = false;
    }
    std::vector<double> mixed(local.size());
    for (std::size_t l = 0; l < mixed.size(); ++l) {
      const double global = l < entry.counts.size() ? entry.counts[l] : 0.0;
      mixed[l] = ic.beta * global + ic.gamma * local[l];
    }
    const auto ll = log_likelihood(mixed, smoothing.alpha, preference);
    entries.push_back({entry.feature, ll.value, ll.classification, std::move(mixed)});
  }
  sort_entries(entries);
  return with_entries(list, std::move(entries));
}

DecisionList prune_subsumption(const DecisionList& list, const Lexicons& lex) {
  std::vector<DecisionEntry> kept;
  for (std::size_t j = 0; j < list.size(); ++j) {
    const auto& entry = list.entries()[j];
    bool shadowed = false;
    for (const auto& g : implied_features(entry.feature, list.config(), lex)) {
      const auto rank = list.rank_of(g);
      if (rank && *rank < j) {
        shadowed = true;
        break;
      }
    }
    if (!shadowed) kept.push_back(entry);
  }
  return with_entries(list, std::move(kept));
}

DecisionList prune_cross_validation(const DecisionList& list,
                                    std::span<const LabeledFeatures> cv,
                                    int max_passes) {
  DecisionList current = list;
  for (int pass = 0; pass < max_passes; ++pass) {
    std::vector<std::size_t> correct(current.size(), 0);
    std::vector<std::size_t> wrong(current.size(), 0);
    for (const auto& d : cv) {
      const auto m = current.first_match(d.features);
      if (!m) continue;
      (current.entries()[*m].classification == d.label ? correct : wrong)[*m]++;
    }
    std::vector<DecisionEntry> kept;
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (wrong[i] <= correct[i]) kept.push_back(current.entries()[i]);
    }
    if (kept.size() == current.size()) break;
    current = with_entries(current, std::move(kept));
  }
  return current;
}

DecisionList prune_unused(const DecisionList& list, std::span<const LabeledFeatures> cv) {
  if (cv.empty()) throw InsufficientDataError("no cross-validation data");
  std::vector<bool> used(list.size(), false);
  for (const auto& d : cv) {
    if (const auto m = list.first_match(d.features)) used[*m] = true;
  }
  std::vector<DecisionEntry> kept;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (used[i]) kept.push_back(list.entries()[i]);
  }
  return with_entries(list, std::move(kept));
}

double accuracy(const DecisionList& list, std::span<const LabeledFeatures> data) {
  if (data.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& d : data) hits += list.classify(d.features) == d.label ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(data.size());
}

std::vector<AmbiguityClassSpec> AmbiguityClassSpec::parse(std::istream& in,
                                                          const std::string& source,
                                                          const DiacriticMap& map) {
  std::vector<AmbiguityClassSpec> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!is_valid_utf8(line)) throw ParseError(source, number, "invalid UTF-8");
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const auto tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab == std::string::npos ? tab : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3 || fields[0].empty()) {
      throw ParseError(source, number, "expected NAME<TAB>slots[<TAB>members]");
    }
    AmbiguityClassSpec spec;
    spec.name = fields[0];
    for (const auto& s : split_ws(fields[1])) spec.slots.push_back(to_lower(nfc(s)));
    if (spec.slots.size() < 2) {
      throw ParseError(source, number, "an ambiguity class needs at least two slots");
    }
    if (fields.size() == 3) {
      for (const auto& m : split_ws(fields[2])) spec.members.push_back(map.strip(m));
    }
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<AmbiguityClassSpec> AmbiguityClassSpec::load(const std::string& path,
                                                         const DiacriticMap& map) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  return parse(in, path, map);
}

std::optional<std::vector<int>> align_slots(const AmbiguityClassSpec& spec,
                                            const PatternEntry& entry) {
  if (entry.patterns.size() != spec.slots.size()) return std::nullopt;
  std::vector<int> mapping(entry.patterns.size(), -1);
  std::vector<bool> used(spec.slots.size(), false);
  std::optional<std::string> stem;
  for (std::size_t i = 0; i < entry.patterns.size(); ++i) {
    const std::string& p = entry.patterns[i].pattern;
    int slot = -1;
    for (std::size_t s = 0; s < spec.slots.size(); ++s) {
      if (!p.ends_with(spec.slots[s])) continue;
      if (slot >= 0) return std::nullopt;
      slot = static_cast<int>(s);
    }
    if (slot < 0 || used[static_cast<std::size_t>(slot)]) return std::nullopt;
    used[static_cast<std::size_t>(slot)] = true;
    std::string st = p.substr(0, p.size() - spec.slots[static_cast<std::size_t>(slot)].size());
    if (stem && *stem != st) return std::nullopt;
    stem = std::move(st);
    mapping[i] = slot;
  }
  return mapping;
}

std::size_t median_quota(std::span<const std::size_t> counts) {
  if (counts.empty()) return 0;
  std::vector<std::size_t> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted[(sorted.size() - 1) / 2];
}

std::vector<TrainingInstance> pool_class_instances(std::span<const ClassMember> members,
                                                   QuotaPolicy policy) {
  std::vector<std::size_t> counts;
  for (const auto& m : members) {
    if (!m.instances.empty()) counts.push_back(m.instances.size());
  }
  const std::size_t quota = policy == QuotaPolicy::kMedian
                                ? median_quota(counts)
                                : std::numeric_limits<std::size_t>::max();
  std::vector<TrainingInstance> pooled;
  for (const auto& m : members) {
    const std::size_t n = m.instances.size();
    const std::size_t take = std::min(n, quota);
    for (std::size_t j = 0; j < take; ++j) {
      TrainingInstance inst = m.instances[take == n ? j : j * n / take];
      const auto label = static_cast<std::size_t>(inst.label);
      if (label >= m.pattern_to_slot.size()) {
        throw ContractViolation("member '" + m.key + "' has an unaligned pattern");
      }
      inst.label = m.pattern_to_slot[label];
      inst.target = std::string(kPooledTarget);
      pooled.push_back(std::move(inst));
    }
  }
  return pooled;
}

DecisionList build_class_list(const AmbiguityClassSpec& spec,
                              std::span<const ClassMember> members,
                              const FeatureConfig& cfg, const SmoothingConfig& smoothing,
                              const Lexicons& lex, const CountOptions& opts,
                              QuotaPolicy policy) {
  const auto with_data = std::count_if(members.begin(), members.end(),
                                       [](const auto& m) { return !m.instances.empty(); });
  if (with_data < 2) {
    throw InsufficientDataError("ambiguity class '" + spec.name +
                                "' needs at least two members with training data");
  }
  const auto pooled = pool_class_instances(members, policy);
  return build_list(spec.name, spec.slots, pooled, cfg, smoothing, lex, opts);
}

ListChoice select_list(double word_accuracy, double class_accuracy, double delta) {
  constexpr double kSlack = 1e-12;
  return class_accuracy + kSlack >= word_accuracy - delta ? ListChoice::kClass
                                                          : ListChoice::kWord;
}

}  // namespace accentdl
