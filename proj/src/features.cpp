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

#include "accentdl/features.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "accentdl/errors.hpp"
#include "accentdl/text.hpp"

namespace accentdl {
namespace {

constexpr int kAdjacent[] = {-1, 1};

template <typename Fn>
void for_each_record(std::istream& in, const std::string& source, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!is_valid_utf8(line)) throw ParseError(source, number, "invalid UTF-8");
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(source, number, "expected two TAB-separated fields");
    }
    fn(line.substr(0, tab), line.substr(tab + 1), number);
  }
}

std::vector<std::string> split_any(std::string_view text, std::string_view seps) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto start = text.find_first_not_of(seps, pos);
    if (start == std::string_view::npos) break;
    auto end = text.find_first_of(seps, start);
    if (end == std::string_view::npos) end = text.size();
    out.emplace_back(text.substr(start, end - start));
    pos = end;
  }
  return out;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  return in;
}

std::vector<std::string> window_words(const ContextView& ctx, int k) {
  std::vector<std::string> out;
  const auto width = static_cast<std::size_t>(k);
  const std::size_t left = std::min(width, ctx.left.size());
  const std::size_t right = std::min(width, ctx.right.size());
  out.reserve(left + right);
  out.insert(out.end(), ctx.left.end() - static_cast<std::ptrdiff_t>(left),
             ctx.left.end());
  out.insert(out.end(), ctx.right.begin(),
             ctx.right.begin() + static_cast<std::ptrdiff_t>(right));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::string> suffix_of(std::string_view word, int length) {
  if (word == kNumberKey) return std::nullopt;
  const std::u32string cps = to_u32(word);
  if (cps.size() < static_cast<std::size_t>(length)) return std::nullopt;
  return to_utf8(std::u32string_view(cps).substr(cps.size() - length));
}

void sort_unique(std::vector<Feature>& features) {
  std::sort(features.begin(), features.end());
  features.erase(std::unique(features.begin(), features.end()), features.end());
}

}  // namespace

const char* to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kWordAt: return "word";
    case FeatureKind::kPair: return "pair";
    case FeatureKind::kWindow: return "window";
    case FeatureKind::kClassAt: return "class";
    case FeatureKind::kClassWindow: return "class-window";
    case FeatureKind::kTagAt: return "tag";
    case FeatureKind::kTagPair: return "tag-pair";
    case FeatureKind::kLemmaWindow: return "lemma-window";
    case FeatureKind::kSuffixAt: return "suffix";
  }
  return "?";
}

std::optional<FeatureKind> feature_kind_from_string(std::string_view name) {
  for (auto kind : {FeatureKind::kWordAt, FeatureKind::kPair, FeatureKind::kWindow,
                    FeatureKind::kClassAt, FeatureKind::kClassWindow,
                    FeatureKind::kTagAt, FeatureKind::kTagPair,
                    FeatureKind::kLemmaWindow, FeatureKind::kSuffixAt}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

Feature Feature::word_at(int offset, std::string word) {
  Feature f;
  f.kind = FeatureKind::kWordAt;
  f.offset = static_cast<std::int8_t>(offset);
  f.value = std::move(word);
  return f;
}

Feature Feature::pair(int first, int second, std::string a, std::string b) {
  Feature f;
  f.kind = FeatureKind::kPair;
  f.offset = static_cast<std::int8_t>(first);
  f.offset2 = static_cast<std::int8_t>(second);
  f.value = std::move(a);
  f.value2 = std::move(b);
  return f;
}

Feature Feature::window(std::string word) {
  Feature f;
  f.kind = FeatureKind::kWindow;
  f.value = std::move(word);
  return f;
}

Feature Feature::class_at(int offset, std::string name) {
  Feature f;
  f.kind = FeatureKind::kClassAt;
  f.offset = static_cast<std::int8_t>(offset);
  f.value = std::move(name);
  return f;
}

Feature Feature::class_window(std::string name) {
  Feature f;
  f.kind = FeatureKind::kClassWindow;
  f.value = std::move(name);
  return f;
}

Feature Feature::tag_at(int offset, std::string tag) {
  Feature f;
  f.kind = FeatureKind::kTagAt;
  f.offset = static_cast<std::int8_t>(offset);
  f.value = std::move(tag);
  return f;
}

Feature Feature::tag_pair(int first, int second, std::uint8_t mask, std::string a,
                          std::string b) {
  Feature f;
  f.kind = FeatureKind::kTagPair;
  f.offset = static_cast<std::int8_t>(first);
  f.offset2 = static_cast<std::int8_t>(second);
  f.tag_mask = mask;
  f.value = std::move(a);
  f.value2 = std::move(b);
  return f;
}

Feature Feature::lemma_window(std::string lemma) {
  Feature f;
  f.kind = FeatureKind::kLemmaWindow;
  f.value = std::move(lemma);
  return f;
}

Feature Feature::suffix_at(int offset, int length, std::string suffix) {
  Feature f;
  f.kind = FeatureKind::kSuffixAt;
  f.offset = static_cast<std::int8_t>(offset);
  f.length = static_cast<std::uint8_t>(length);
  f.value = std::move(suffix);
  return f;
}

std::size_t FeatureHash::operator()(const Feature& f) const noexcept {
  std::size_t h = std::hash<std::string>{}(f.value);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(std::hash<std::string>{}(f.value2));
  mix((static_cast<std::size_t>(f.kind) << 24) |
      (static_cast<std::size_t>(static_cast<std::uint8_t>(f.offset)) << 16) |
      (static_cast<std::size_t>(static_cast<std::uint8_t>(f.offset2)) << 8) |
      (static_cast<std::size_t>(f.tag_mask) << 32) | f.length);
  return h;
}

void FeatureConfig::validate() const {
  if (k < 1) throw ConfigError("window size k must be at least 1");
  if (k > 127) throw ConfigError("window size k must be at most 127");
  if (!(words || pairs || window || classes || tags || lemmas || suffixes)) {
    throw ConfigError("at least one feature kind must be enabled");
  }
  if (suffixes) {
    for (int len : suffix_lengths) {
      if (len < 1 || len > 32) throw ConfigError("suffix lengths must be in [1, 32]");
    }
    for (int o : suffix_offsets) {
      if (o == 0 || o < -k || o > k) {
        throw ConfigError("suffix offsets must be non-zero and within +-k");
      }
    }
  }
}

void WordClassSet::add(const std::string& name, const std::string& word) {
  if (!classes_[name].insert(word).second) return;
  auto& names = by_word_[word];
  names.insert(std::upper_bound(names.begin(), names.end(), name), name);
}

std::span<const std::string> WordClassSet::lookup(std::string_view word) const {
  const auto it = by_word_.find(std::string(word));
  if (it == by_word_.end()) return {};
  return it->second;
}

bool WordClassSet::contains(std::string_view name, std::string_view word) const {
  const auto it = classes_.find(std::string(name));
  return it != classes_.end() && it->second.count(std::string(word)) != 0;
}

WordClassSet WordClassSet::parse(std::istream& in, const std::string& source,
                                 const DiacriticMap& map) {
  WordClassSet set;
  for_each_record(in, source, [&](const std::string& name, const std::string& rest,
                                  std::size_t line) {
    const auto members = split_any(rest, " \t,");
    if (name.empty() || members.empty()) {
      throw ParseError(source, line, "class needs a name and members");
    }
    for (const auto& m : members) set.add(name, map.strip(m));
  });
  return set;
}

WordClassSet WordClassSet::load(const std::string& path, const DiacriticMap& map) {
  auto in = open_or_throw(path);
  return parse(in, path, map);
}

void TagLexicon::add(const std::string& word, const std::string& tag) {
  auto& set = tags_[word];
  set.insert(tag);
  std::string joined;
  for (const auto& t : set) {
    if (!joined.empty()) joined += '-';
    joined += t;
  }
  union_[word] = std::move(joined);
}

std::optional<std::string> TagLexicon::union_tag(std::string_view word) const {
  const auto it = union_.find(std::string(word));
  if (it == union_.end()) return std::nullopt;
  return it->second;
}

TagLexicon TagLexicon::parse(std::istream& in, const std::string& source,
                             const DiacriticMap& map) {
  TagLexicon lexicon;
  for_each_record(in, source, [&](const std::string& word, const std::string& rest,
                                  std::size_t line) {
    const auto tags = split_any(rest, ", \t");
    if (word.empty() || tags.empty()) {
      throw ParseError(source, line, "entry needs a word and at least one tag");
    }
    for (const auto& t : tags) lexicon.add(map.strip(word), t);
  });
  return lexicon;
}

TagLexicon TagLexicon::load(const std::string& path, const DiacriticMap& map) {
  auto in = open_or_throw(path);
  return parse(in, path, map);
}

void LemmaLexicon::add(const std::string& word, const std::string& lemma) {
  lemmas_[word] = lemma;
}

std::optional<std::string> LemmaLexicon::find(std::string_view word) const {
  const auto it = lemmas_.find(word);
  if (it == lemmas_.end()) return std::nullopt;
  return it->second;
}

std::string LemmaLexicon::lemma(std::string_view word) const {
  return find(word).value_or(std::string(word));
}

LemmaLexicon LemmaLexicon::parse(std::istream& in, const std::string& source,
                                 const DiacriticMap& map) {
  LemmaLexicon lexicon;
  for_each_record(in, source, [&](const std::string& word, const std::string& rest,
                                  std::size_t line) {
    const auto fields = split_any(rest, " \t");
    if (word.empty() || fields.size() != 1) {
      throw ParseError(source, line, "expected word<TAB>lemma");
    }
    lexicon.add(map.strip(word), map.strip(fields.front()));
  });
  return lexicon;
}

LemmaLexicon LemmaLexicon::load(const std::string& path, const DiacriticMap& map) {
  auto in = open_or_throw(path);
  return parse(in, path, map);
}

std::vector<std::string> class_lookup(std::string_view word,
                                      const WordClassSet& classes) {
  const auto names = classes.lookup(word);
  return {names.begin(), names.end()};
}

std::optional<std::string> union_tag(std::string_view word, const TagLexicon& tags) {
  return tags.union_tag(word);
}

std::vector<Feature> extract_features(const ContextView& ctx,
                                      const FeatureConfig& cfg,
                                      const Lexicons& lex) {
  std::vector<Feature> out;
  const bool use_classes = cfg.classes && lex.classes != nullptr;
  const bool use_tags = cfg.tags && lex.tags != nullptr;
  const bool use_lemmas = cfg.lemmas && lex.lemmas != nullptr;

  for (int o : kAdjacent) {
    const std::string* w = ctx.at(o);
    if (w == nullptr) continue;
    if (cfg.words) out.push_back(Feature::word_at(o, *w));
    if (use_classes) {
      for (const auto& c : lex.classes->lookup(*w)) out.push_back(Feature::class_at(o, c));
    }
    if (use_tags) {
      if (auto t = lex.tags->union_tag(*w)) out.push_back(Feature::tag_at(o, *t));
    }
  }

  for (const auto& [o1, o2] : kPairOffsets) {
    const std::string* a = ctx.at(o1);
    const std::string* b = ctx.at(o2);
    if (a == nullptr || b == nullptr) continue;
    if (cfg.pairs) out.push_back(Feature::pair(o1, o2, *a, *b));
    if (use_tags) {
      const auto ta = lex.tags->union_tag(*a);
      const auto tb = lex.tags->union_tag(*b);
      if (ta) out.push_back(Feature::tag_pair(o1, o2, 1, *ta, *b));
      if (tb) out.push_back(Feature::tag_pair(o1, o2, 2, *a, *tb));
      if (ta && tb) out.push_back(Feature::tag_pair(o1, o2, 3, *ta, *tb));
    }
  }

  if (cfg.window || use_classes || use_lemmas) {
    for (const auto& w : window_words(ctx, cfg.k)) {
      if (cfg.window) out.push_back(Feature::window(w));
      if (use_classes) {
        for (const auto& c : lex.classes->lookup(w)) out.push_back(Feature::class_window(c));
      }
      if (use_lemmas) {
        if (auto l = lex.lemmas->find(w)) out.push_back(Feature::lemma_window(*l));
      }
    }
  }

  if (cfg.suffixes) {
    for (int o : cfg.suffix_offsets) {
      const std::string* w = ctx.at(o);
      if (w == nullptr) continue;
      for (int len : cfg.suffix_lengths) {
        if (auto s = suffix_of(*w, len)) out.push_back(Feature::suffix_at(o, len, *s));
      }
    }
  }

  sort_unique(out);
  return out;
}

std::vector<Feature> implied_features(const Feature& feature,
                                      const FeatureConfig& cfg,
                                      const Lexicons& lex) {
  // What any matching context is known to contain.
  std::map<int, std::string> words;
  std::map<int, std::string> tags;
  std::set<std::string> in_window;

  switch (feature.kind) {
    case FeatureKind::kWordAt:
      words[feature.offset] = feature.value;
      break;
    case FeatureKind::kPair:
      words[feature.offset] = feature.value;
      words[feature.offset2] = feature.value2;
      break;
    case FeatureKind::kTagPair:
      (feature.tag_mask & 1 ? tags : words)[feature.offset] = feature.value;
      (feature.tag_mask & 2 ? tags : words)[feature.offset2] = feature.value2;
      break;
    case FeatureKind::kWindow:
      in_window.insert(feature.value);
      break;
    default:
      return {};
  }
  for (const auto& [o, w] : words) {
    if (o >= -cfg.k && o <= cfg.k) in_window.insert(w);
  }

  const bool use_classes = cfg.classes && lex.classes != nullptr;
  const bool use_tags = cfg.tags && lex.tags != nullptr;
  const bool use_lemmas = cfg.lemmas && lex.lemmas != nullptr;

  auto word_at = [&](int o) -> const std::string* {
    const auto it = words.find(o);
    return it == words.end() ? nullptr : &it->second;
  };
  auto tag_at = [&](int o) -> std::optional<std::string> {
    if (const std::string* w = word_at(o)) return lex.tags->union_tag(*w);
    const auto it = tags.find(o);
    if (it == tags.end()) return std::nullopt;
    return it->second;
  };

  std::vector<Feature> out;
  for (int o : kAdjacent) {
    const std::string* w = word_at(o);
    if (w != nullptr && cfg.words) out.push_back(Feature::word_at(o, *w));
    if (w != nullptr && use_classes) {
      for (const auto& c : lex.classes->lookup(*w)) out.push_back(Feature::class_at(o, c));
    }
    if (use_tags) {
      if (auto t = tag_at(o)) out.push_back(Feature::tag_at(o, *t));
    }
  }
  for (const auto& [o1, o2] : kPairOffsets) {
    const std::string* a = word_at(o1);
    const std::string* b = word_at(o2);
    if (a != nullptr && b != nullptr && cfg.pairs) {
      out.push_back(Feature::pair(o1, o2, *a, *b));
    }
    if (!use_tags) continue;
    const auto ta = tag_at(o1);
    const auto tb = tag_at(o2);
    if (ta && b != nullptr) out.push_back(Feature::tag_pair(o1, o2, 1, *ta, *b));
    if (a != nullptr && tb) out.push_back(Feature::tag_pair(o1, o2, 2, *a, *tb));
    if (ta && tb) out.push_back(Feature::tag_pair(o1, o2, 3, *ta, *tb));
  }
  for (const auto& w : in_window) {
    if (cfg.window) out.push_back(Feature::window(w));
    if (use_classes) {
      for (const auto& c : lex.classes->lookup(w)) out.push_back(Feature::class_window(c));
    }
    if (use_lemmas) {
      if (auto l = lex.lemmas->find(w)) out.push_back(Feature::lemma_window(*l));
    }
  }
  if (cfg.suffixes) {
    for (int o : cfg.suffix_offsets) {
      const std::string* w = word_at(o);
      if (w == nullptr) continue;
      for (int len : cfg.suffix_lengths) {
        if (auto s = suffix_of(*w, len)) out.push_back(Feature::suffix_at(o, len, *s));
      }
    }
  }
  sort_unique(out);
  std::erase(out, feature);
  return out;
}

std::string describe(const Feature& f, std::string_view target, int k) {
  const std::string t = "*" + std::string(target) + "*";
  const std::string within = " (within +-" + std::to_string(k) + " words)";
  auto around = [&](int o1, const std::string& a, int o2, const std::string& b) {
    if (o2 < 0) return a + " " + b + " " + t;
    if (o1 < 0) return a + " " + t + " " + b;
    return t + " " + a + " " + b;
  };
  switch (f.kind) {
    case FeatureKind::kWordAt:
    case FeatureKind::kClassAt:
    case FeatureKind::kTagAt:
      return f.offset < 0 ? f.value + " " + t : t + " " + f.value;
    case FeatureKind::kPair:
    case FeatureKind::kTagPair:
      return around(f.offset, f.value, f.offset2, f.value2);
    case FeatureKind::kWindow:
    case FeatureKind::kClassWindow:
      return f.value + within;
    case FeatureKind::kLemmaWindow:
      return "lemma " + f.value + within;
    case FeatureKind::kSuffixAt: {
      const std::string s = "-" + f.value + " at " + (f.offset > 0 ? "+" : "") +
                            std::to_string(f.offset);
      return s + " " + t;
    }
  }
  return t;
}

}  // namespace accentdl
