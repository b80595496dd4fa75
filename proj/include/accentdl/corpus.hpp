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

// Accent pattern histograms and labeled training contexts.

#ifndef ACCENTDL_CORPUS_HPP_
#define ACCENTDL_CORPUS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "accentdl/diacritics.hpp"

namespace accentdl {

// Context key standing in for every number token.
inline constexpr std::string_view kNumberKey = "<NUM>";

struct Document {
  std::string name;
  std::string text;
};

// Documents are "marked" when the source delimits them with <doc ...> and
// </doc> lines; otherwise every input file is a single document.
struct Corpus {
  std::vector<Document> documents;
  bool marked = false;
};

// Splits `text` into documents at <doc> markers, or returns it whole.
Corpus corpus_from_text(std::string_view text, const std::string& name);

// Reads files and (recursively, in sorted order) directories.
// Throws IoError for unreadable paths and EncodingError for bad UTF-8.
Corpus load_corpus(std::span<const std::string> paths);

// A word or number token as seen by the trainer. `form` is the lowercase NFC
// spelling with accents kept; `key` is its de-accented key (kNumberKey for
// numbers, whose `form` is empty).
struct WordToken {
  std::string key;
  std::string form;
};

using WordSequence = std::vector<WordToken>;

WordSequence word_tokens(std::string_view text, const DiacriticMap& map);
std::vector<WordSequence> word_tokens(const Corpus& corpus,
                                      const DiacriticMap& map);

struct PatternCount {
  std::string pattern;
  std::uint64_t count = 0;
  double freq = 0.0;

  friend bool operator==(const PatternCount&, const PatternCount&) = default;
};

// All observed accent patterns of one key, by descending count (ties by
// pattern spelling). Pattern ids are positions in this vector.
struct PatternEntry {
  std::string key;
  std::vector<PatternCount> patterns;

  bool ambiguous() const { return patterns.size() >= 2; }
  std::uint64_t total() const;
  std::optional<int> id_of(std::string_view pattern) const;
  std::vector<std::string> spellings() const;

  friend bool operator==(const PatternEntry&, const PatternEntry&) = default;
};

class PatternTable {
 public:
  const PatternEntry* find(std::string_view key) const;
  const std::map<std::string, PatternEntry, std::less<>>& entries() const {
    return entries_;
  }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::vector<std::string> ambiguous_keys() const;

  // Inserts or replaces an entry; patterns are re-sorted and frequencies
  // recomputed from the counts.
  void insert(PatternEntry entry);

  friend bool operator==(const PatternTable&, const PatternTable&) = default;

 private:
  std::map<std::string, PatternEntry, std::less<>> entries_;
};

// Raw key -> pattern -> count histogram. Shards merge associatively.
class PatternCounter {
 public:
  void add(const WordSequence& words);
  void add(std::string_view key, std::string_view pattern, std::uint64_t n = 1);
  void merge(const PatternCounter& other);

  // Drops patterns seen fewer than `min_count` times, then keys whose
  // remaining total is below `min_count`.
  PatternTable table(std::uint64_t min_count) const;

 private:
  std::unordered_map<std::string, std::unordered_map<std::string, std::uint64_t>>
      counts_;
};

PatternTable build_pattern_table(std::span<const WordSequence> corpus,
                                 std::uint64_t min_count);

// Left and right context keys of one occurrence, both in text order, so the
// nearest left word is `left.back()` and the nearest right word `right.front()`.
struct ContextView {
  std::span<const std::string> left;
  std::span<const std::string> right;

  // Word at offset -n or +n, or nullptr past a document boundary.
  const std::string* at(int offset) const;
};

struct TrainingInstance {
  int label = 0;
  std::string target;
  std::vector<std::string> left;
  std::vector<std::string> right;

  ContextView view() const { return {left, right}; }

  friend bool operator==(const TrainingInstance&,
                         const TrainingInstance&) = default;
};

// One labeled instance per occurrence of any listed pattern of `entry`, with
// up to `k` context keys on each side. Occurrences whose spelling is not in
// the entry (dropped by min_count) are skipped.
std::vector<TrainingInstance> collect_contexts(std::span<const WordSequence> corpus,
                                               const PatternEntry& entry, int k);

// Same as collect_contexts for every ambiguous key of `table` in one pass.
std::map<std::string, std::vector<TrainingInstance>> collect_all_contexts(
    std::span<const WordSequence> corpus, const PatternTable& table, int k);

// Context around position `index` of `words`, truncated to `k` on each side.
// Views point into `keys`, which must hold the keys of `words` in order.
ContextView context_at(std::span<const std::string> keys, std::size_t index,
                       int k);

}  // namespace accentdl

#endif  // ACCENTDL_CORPUS_HPP_
