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

#include "accentdl/restorer.hpp"

#include <algorithm>
#include <cstdio>

#include "accentdl/errors.hpp"

namespace accentdl {

void Model::validate() const {
  for (const auto& [key, entry] : patterns.entries()) {
    const bool own = word_lists.count(key) != 0;
    const auto assigned = class_assignment.find(key);
    if (!entry.ambiguous()) {
      if (own || assigned != class_assignment.end()) {
        throw ContractViolation("unambiguous key '" + key + "' has a decision list");
      }
      continue;
    }
    if (own == (assigned != class_assignment.end())) {
      throw ContractViolation("ambiguous key '" + key +
                              "' must resolve to exactly one decision list");
    }
    if (own) {
      if (word_lists.at(key).labels() != entry.spellings()) {
        throw ContractViolation("decision list for '" + key +
                                "' does not match its accent patterns");
      }
      continue;
    }
    const auto cls = class_lists.find(assigned->second);
    if (cls == class_lists.end()) {
      throw ContractViolation("key '" + key + "' is assigned to unknown class '" +
                              assigned->second + "'");
    }
    if (!align_slots(cls->second.spec, entry)) {
      throw ContractViolation("key '" + key + "' does not align with class '" +
                              assigned->second + "'");
    }
  }
  for (const auto& [key, list] : word_lists) {
    if (patterns.find(key) == nullptr) {
      throw ContractViolation("decision list for unknown key '" + key + "'");
    }
  }
  for (const auto& [name, cls] : class_lists) {
    if (cls.list.labels() != cls.spec.slots) {
      throw ContractViolation("class list '" + name + "' labels differ from its slots");
    }
  }
}

bool equal_at_precision(const Model& a, const Model& b, int decimals) {
  if (!(a.header == b.header) || !(a.diacritics == b.diacritics) ||
      !(a.patterns == b.patterns) || !(a.classes == b.classes) ||
      !(a.tags == b.tags) || !(a.lemmas == b.lemmas) ||
      a.class_assignment != b.class_assignment ||
      a.word_lists.size() != b.word_lists.size() ||
      a.class_lists.size() != b.class_lists.size()) {
    return false;
  }
  for (const auto& [key, list] : a.word_lists) {
    const auto it = b.word_lists.find(key);
    if (it == b.word_lists.end() || !equal_at_precision(list, it->second, decimals)) {
      return false;
    }
  }
  for (const auto& [name, cls] : a.class_lists) {
    const auto it = b.class_lists.find(name);
    if (it == b.class_lists.end() || !(cls.spec == it->second.spec) ||
        !equal_at_precision(cls.list, it->second.list, decimals)) {
      return false;
    }
  }
  return true;
}

Classification classify_traced(const DecisionList& list, const ContextView& context,
                               const Lexicons& lex) {
  const auto features = extract_features(context, list.config(), lex);
  const auto match = list.first_match(features);
  if (!match) return {list.default_label(), std::nullopt};
  return {list.entries()[*match].classification, match};
}

int classify(const DecisionList& list, const ContextView& context, const Lexicons& lex) {
  return classify_traced(list, context, lex).label;
}

int classify_combined(const DecisionList& list, std::span<const Feature> features) {
  std::vector<std::size_t> matches;
  for (const auto& f : features) {
    if (const auto rank = list.rank_of(f)) matches.push_back(*rank);
  }
  if (matches.empty()) return list.default_label();
  std::sort(matches.begin(), matches.end());
  std::vector<double> score(list.labels().size(), 0.0);
  for (std::size_t m : matches) {
    const auto& e = list.entries()[m];
    score[static_cast<std::size_t>(e.classification)] += e.log_likelihood;
  }
  const double best = *std::max_element(score.begin(), score.end());
  for (std::size_t m : matches) {
    const int label = list.entries()[m].classification;
    if (score[static_cast<std::size_t>(label)] == best) return label;
  }
  if (score[static_cast<std::size_t>(list.default_label())] == best) {
    return list.default_label();
  }
  return static_cast<int>(std::find(score.begin(), score.end(), best) - score.begin());
}

int classify_combined(const DecisionList& list, const ContextView& context,
                      const Lexicons& lex) {
  return classify_combined(list, extract_features(context, list.config(), lex));
}

KeySequence key_sequence(std::span<const Token> tokens, const DiacriticMap& map) {
  KeySequence seq;
  seq.position.assign(tokens.size(), std::string::npos);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].kind == TokenKind::kWord) {
      seq.position[i] = seq.keys.size();
      seq.keys.push_back(map.strip(tokens[i].surface));
    } else if (tokens[i].kind == TokenKind::kNumber) {
      seq.position[i] = seq.keys.size();
      seq.keys.emplace_back(kNumberKey);
    }
  }
  return seq;
}

Restorer::Restorer(const Model& model) : model_(&model) {
  for (const auto& [key, entry] : model.patterns.entries()) {
    Route route;
    route.entry = &entry;
    if (entry.ambiguous()) {
      if (const auto it = model.word_lists.find(key); it != model.word_lists.end()) {
        route.list = &it->second;
        for (int i = 0; i < static_cast<int>(entry.patterns.size()); ++i) {
          route.label_to_pattern.push_back(i);
        }
      } else if (const auto cls = model.class_assignment.find(key);
                 cls != model.class_assignment.end()) {
        const auto it2 = model.class_lists.find(cls->second);
        if (it2 == model.class_lists.end()) {
          throw ContractViolation("key '" + key + "' assigned to missing class '" +
                                  cls->second + "'");
        }
        const auto slots = align_slots(it2->second.spec, entry);
        if (!slots) {
          throw ContractViolation("key '" + key + "' does not align with class '" +
                                  cls->second + "'");
        }
        route.list = &it2->second.list;
        route.label_to_pattern.assign(slots->size(), 0);
        for (std::size_t p = 0; p < slots->size(); ++p) {
          route.label_to_pattern[static_cast<std::size_t>((*slots)[p])] =
              static_cast<int>(p);
        }
      } else {
        throw ContractViolation("ambiguous key '" + key + "' has no decision list");
      }
    }
    routes_.emplace(key, std::move(route));
  }
}

const Restorer::Route* Restorer::route(std::string_view key) const {
  const auto it = routes_.find(std::string(key));
  return it == routes_.end() ? nullptr : &it->second;
}

Restorer::Decision Restorer::decide(const Route& route, std::span<const std::string> keys,
                                    std::size_t index, Mode mode) const {
  const DecisionList& list = *route.list;
  const ContextView context = context_at(keys, index, list.config().context_width());
  const auto features = extract_features(context, list.config(), model_->lexicons());
  Decision d;
  d.list = &list;
  int label = list.default_label();
  if (mode == Mode::kBestEvidence) {
    d.matched = list.first_match(features);
    if (d.matched) label = list.entries()[*d.matched].classification;
  } else {
    label = classify_combined(list, features);
  }
  d.pattern = route.label_to_pattern.at(static_cast<std::size_t>(label));
  return d;
}

std::vector<RestoredToken> Restorer::restore_tokens(std::string_view text,
                                                    const RestoreOptions& opts) const {
  const std::vector<Token> tokens = tokenize(text);
  const DiacriticMap& map = model_->diacritics;
  const KeySequence seq = key_sequence(tokens, map);
  std::vector<RestoredToken> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    RestoredToken rt{tokens[i], tokens[i].surface, false};
    const std::size_t pos = seq.position[i];
    if (tokens[i].kind != TokenKind::kWord ||
        (opts.trust_existing && map.has_diacritics(tokens[i].surface))) {
      out.push_back(std::move(rt));
      continue;
    }
    const Route* r = route(seq.keys[pos]);
    if (r == nullptr) {
      out.push_back(std::move(rt));
      continue;
    }
    int pattern = 0;
    if (r->list != nullptr) {
      const Decision d = decide(*r, seq.keys, pos);
      pattern = d.pattern;
      if (opts.trace != nullptr) {
        const auto& list = *d.list;
        std::string evidence = "DEFAULT";
        double ll = 0.0;
        if (d.matched) {
          const auto& e = list.entries()[*d.matched];
          evidence = describe(e.feature, seq.keys[pos], list.config().k);
          ll = e.log_likelihood;
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", ll);
        *opts.trace << seq.keys[pos] << '\t' << evidence << '\t' << buf << '\t'
                    << r->entry->patterns[static_cast<std::size_t>(pattern)].pattern
                    << '\n';
      }
    }
    rt.output = apply_pattern(tokens[i].surface,
                              r->entry->patterns[static_cast<std::size_t>(pattern)].pattern,
                              map);
    rt.changed = rt.output != tokens[i].surface;
    out.push_back(std::move(rt));
  }
  return out;
}

std::string Restorer::restore(std::string_view text, const RestoreOptions& opts) const {
  const auto restored = restore_tokens(text, opts);
  std::string out;
  out.reserve(text.size() + text.size() / 8);
  std::size_t cursor = 0;
  for (const auto& rt : restored) {
    out.append(text.substr(cursor, rt.token.begin - cursor));
    if (rt.changed) {
      out += rt.output;
    } else {
      out.append(text.substr(rt.token.begin, rt.token.end - rt.token.begin));
    }
    cursor = rt.token.end;
  }
  out.append(text.substr(cursor));
  return out;
}

std::string restore(std::string_view text, const Model& model, const RestoreOptions& opts) {
  return Restorer(model).restore(text, opts);
}

}  // namespace accentdl
