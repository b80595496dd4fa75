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

#include "accentdl/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "accentdl/errors.hpp"
#include "accentdl/text.hpp"

namespace accentdl {
namespace {

namespace fs = std::filesystem;

bool starts_with_marker(std::string_view line, std::string_view marker) {
  const auto first = line.find_first_not_of(" \t");
  return first != std::string_view::npos && line.substr(first).starts_with(marker);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void sort_patterns(PatternEntry& entry) {
  std::sort(entry.patterns.begin(), entry.patterns.end(),
            [](const PatternCount& a, const PatternCount& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.pattern < b.pattern;
            });
  const double total = static_cast<double>(entry.total());
  for (auto& p : entry.patterns) {
    p.freq = total > 0 ? static_cast<double>(p.count) / total : 0.0;
  }
}

}  // namespace

Corpus corpus_from_text(std::string_view text, const std::string& name) {
  Corpus corpus;
  std::vector<std::string_view> lines;
  for (std::size_t pos = 0; pos <= text.size();) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl + 1;
    if (end > pos) lines.push_back(text.substr(pos, end - pos));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  const bool marked = std::any_of(lines.begin(), lines.end(), [](auto line) {
    return starts_with_marker(line, "<doc");
  });
  if (!marked) {
    corpus.documents.push_back({name, std::string(text)});
    return corpus;
  }
  corpus.marked = true;
  std::optional<Document> current;
  for (auto line : lines) {
    if (starts_with_marker(line, "<doc")) {
      if (current) corpus.documents.push_back(std::move(*current));
      current = Document{name + "#" + std::to_string(corpus.documents.size()), {}};
    } else if (starts_with_marker(line, "</doc")) {
      if (current) corpus.documents.push_back(std::move(*current));
      current.reset();
    } else if (current) {
      current->text.append(line);
    }
  }
  if (current) corpus.documents.push_back(std::move(*current));
  return corpus;
}

Corpus load_corpus(std::span<const std::string> paths) {
  std::vector<fs::path> files;
  for (const auto& p : paths) {
    const fs::path path(p);
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::recursive_directory_iterator(path)) {
        if (e.is_regular_file()) found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(path, ec)) {
      files.push_back(path);
    } else {
      throw IoError("cannot read '" + p + "'");
    }
  }
  Corpus corpus;
  for (const auto& file : files) {
    const std::string text = read_file(file);
    if (!is_valid_utf8(text)) {
      throw EncodingError("'" + file.string() + "' is not valid UTF-8");
    }
    Corpus part = corpus_from_text(text, file.string());
    corpus.marked = corpus.marked || part.marked;
    for (auto& d : part.documents) corpus.documents.push_back(std::move(d));
  }
  return corpus;
}

WordSequence word_tokens(std::string_view text, const DiacriticMap& map) {
  WordSequence out;
  for (const auto& token : tokenize(text)) {
    if (token.kind == TokenKind::kWord) {
      out.push_back({map.strip(token.surface), to_lower(token.surface)});
    } else if (token.kind == TokenKind::kNumber) {
      out.push_back({std::string(kNumberKey), {}});
    }
  }
  return out;
}

std::vector<WordSequence> word_tokens(const Corpus& corpus,
                                      const DiacriticMap& map) {
  std::vector<WordSequence> out;
  out.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) out.push_back(word_tokens(doc.text, map));
  return out;
}

std::uint64_t PatternEntry::total() const {
  std::uint64_t total = 0;
  for (const auto& p : patterns) total += p.count;
  return total;
}

std::optional<int> PatternEntry::id_of(std::string_view pattern) const {
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (patterns[i].pattern == pattern) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::vector<std::string> PatternEntry::spellings() const {
  std::vector<std::string> out;
  for (const auto& p : patterns) out.push_back(p.pattern);
  return out;
}

const PatternEntry* PatternTable::find(std::string_view key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> PatternTable::ambiguous_keys() const {
  std::vector<std::string> out;
  for (const auto& [key, entry] : entries_) {
    if (entry.ambiguous()) out.push_back(key);
  }
  return out;
}

void PatternTable::insert(PatternEntry entry) {
  sort_patterns(entry);
  std::string key = entry.key;
  entries_.insert_or_assign(std::move(key), std::move(entry));
}

void PatternCounter::add(const WordSequence& words) {
  for (const auto& w : words) {
    if (!w.form.empty()) add(w.key, w.form);
  }
}

void PatternCounter::add(std::string_view key, std::string_view pattern,
                         std::uint64_t n) {
  counts_[std::string(key)][std::string(pattern)] += n;
}

void PatternCounter::merge(const PatternCounter& other) {
  for (const auto& [key, patterns] : other.counts_) {
    auto& mine = counts_[key];
    for (const auto& [pattern, n] : patterns) mine[pattern] += n;
  }
}

PatternTable PatternCounter::table(std::uint64_t min_count) const {
  PatternTable table;
  for (const auto& [key, patterns] : counts_) {
    PatternEntry entry{key, {}};
    for (const auto& [pattern, n] : patterns) {
      if (n >= min_count && n > 0) entry.patterns.push_back({pattern, n, 0.0});
    }
    if (entry.patterns.empty() || entry.total() < min_count) continue;
    table.insert(std::move(entry));
  }
  return table;
}

PatternTable build_pattern_table(std::span<const WordSequence> corpus,
                                 std::uint64_t min_count) {
  PatternCounter counter;
  for (const auto& doc : corpus) counter.add(doc);
  return counter.table(min_count);
}

const std::string* ContextView::at(int offset) const {
  if (offset < 0) {
    const auto n = static_cast<std::size_t>(-offset);
    return n <= left.size() ? &left[left.size() - n] : nullptr;
  }
  if (offset > 0) {
    const auto n = static_cast<std::size_t>(offset);
    return n <= right.size() ? &right[n - 1] : nullptr;
  }
  return nullptr;
}

ContextView context_at(std::span<const std::string> keys, std::size_t index,
                       int k) {
  const auto width = static_cast<std::size_t>(std::max(k, 0));
  const std::size_t lo = index >= width ? index - width : 0;
  const std::size_t hi = std::min(keys.size(), index + 1 + width);
  return {keys.subspan(lo, index - lo), keys.subspan(index + 1, hi - index - 1)};
}

namespace {

TrainingInstance make_instance(const std::vector<std::string>& keys,
                               std::size_t index, int label, int k) {
  const ContextView view = context_at(keys, index, k);
  return {label, keys[index], {view.left.begin(), view.left.end()},
          {view.right.begin(), view.right.end()}};
}

std::vector<std::string> keys_of(const WordSequence& words) {
  std::vector<std::string> keys;
  keys.reserve(words.size());
  for (const auto& w : words) keys.push_back(w.key);
  return keys;
}

}  // namespace

std::vector<TrainingInstance> collect_contexts(std::span<const WordSequence> corpus,
                                               const PatternEntry& entry, int k) {
  std::vector<TrainingInstance> out;
  for (const auto& doc : corpus) {
    std::vector<std::string> keys;
    for (std::size_t i = 0; i < doc.size(); ++i) {
      if (doc[i].key != entry.key) continue;
      const auto label = entry.id_of(doc[i].form);
      if (!label) continue;
      if (keys.empty()) keys = keys_of(doc);
      out.push_back(make_instance(keys, i, *label, k));
    }
  }
  return out;
}

std::map<std::string, std::vector<TrainingInstance>> collect_all_contexts(
    std::span<const WordSequence> corpus, const PatternTable& table, int k) {
  std::map<std::string, std::vector<TrainingInstance>> out;
  for (const auto& key : table.ambiguous_keys()) out[key];
  for (const auto& doc : corpus) {
    std::vector<std::string> keys;
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const PatternEntry* entry = table.find(doc[i].key);
      if (entry == nullptr || !entry->ambiguous()) continue;
      const auto label = entry->id_of(doc[i].form);
      if (!label) continue;
      if (keys.empty()) keys = keys_of(doc);
      out[entry->key].push_back(make_instance(keys, i, *label, k));
    }
  }
  return out;
}

}  // namespace accentdl
