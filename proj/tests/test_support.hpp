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

// Shared fixtures for the unit tests.

#ifndef ACCENTDL_TESTS_TEST_SUPPORT_HPP_
#define ACCENTDL_TESTS_TEST_SUPPORT_HPP_

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "accentdl/corpus.hpp"
#include "accentdl/decision_list.hpp"
#include "accentdl/features.hpp"
#include "accentdl/restorer.hpp"

namespace accentdl::testing {

inline TrainingInstance instance(int label, std::vector<std::string> left,
                                 std::vector<std::string> right,
                                 std::string target = "cote") {
  return {label, std::move(target), std::move(left), std::move(right)};
}

inline LabeledFeatures labeled(int label, std::vector<Feature> features) {
  std::sort(features.begin(), features.end());
  return {label, std::move(features)};
}

inline DecisionEntry entry(Feature f, double ll, int cls, std::vector<double> counts = {}) {
  if (counts.empty()) counts = {cls == 0 ? 1.0 : 0.0, cls == 1 ? 1.0 : 0.0};
  return {std::move(f), ll, cls, std::move(counts)};
}

inline FeatureConfig words_only(int k = 3) {
  FeatureConfig cfg;
  cfg.k = k;
  cfg.classes = cfg.tags = cfg.lemmas = false;
  return cfg;
}

// French model with one ambiguous key, cote = {côte, côté}, and one
// unambiguous key, cout = {coût}.
inline Model cote_model() {
  Model m;
  m.header.language = "fr";
  m.diacritics = DiacriticMap::builtin("fr");
  PatternCounter counter;
  counter.add("cote", "côte", 60);
  counter.add("cote", "côté", 40);
  counter.add("cout", "coût", 30);
  counter.add("la", "la", 500);
  m.patterns = counter.table(1);
  std::vector<DecisionEntry> entries = {
      entry(Feature::word_at(-1, "la"), 7.5, 0, {180, 0}),
      entry(Feature::word_at(1, "gauche"), 6.0, 1, {0, 63}),
      entry(Feature::window("ouest"), 4.0, 0, {15, 0}),
      entry(Feature::window("de"), 1.5, 1, {20, 56})};
  m.word_lists.emplace("cote", DecisionList("cote", {"côte", "côté"}, words_only(3),
                                            std::move(entries), 0));
  m.validate();
  return m;
}

// A scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("accentdl-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& root() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace accentdl::testing

#endif  // ACCENTDL_TESTS_TEST_SUPPORT_HPP_
