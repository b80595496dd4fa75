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

#include <gtest/gtest.h>

#include "accentdl/errors.hpp"
#include "accentdl/model_io.hpp"
#include "accentdl/synth.hpp"
#include "test_support.hpp"

namespace accentdl {
namespace {

std::string repeat(const std::string& line, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += line + "\n";
  return out;
}

Corpus french_corpus() {
  return corpus_from_text(repeat("nous longeons la côte ouest du pays", 30) +
                              repeat("il reste de ce côté gauche de la rue", 20) +
                              repeat("le coût reste élevé", 5),
                          "fr");
}

TEST(Train, LearnsCollocations) {
  TrainConfig cfg;
  const auto result = train(french_corpus(), cfg, TrainResources{});
  const Model& m = result.model;
  EXPECT_EQ(result.summary.ambiguous_keys, 1u);
  ASSERT_EQ(m.word_lists.count("cote"), 1u);
  EXPECT_EQ(m.word_lists.at("cote").labels(), (std::vector<std::string>{"côte", "côté"}));
  EXPECT_EQ(m.word_lists.at("cote").default_label(), 0);
  const Restorer r(m);
  EXPECT_EQ(r.restore("la cote ouest"), "la côte ouest");
  EXPECT_EQ(r.restore("ce cote gauche"), "ce côté gauche");
  EXPECT_EQ(r.restore("le cout eleve"), "le coût élevé");
  EXPECT_EQ(result.summary.list_sizes.at("cote"), m.word_lists.at("cote").size());
  EXPECT_EQ(m.header.alpha, 0.1);
}

TEST(Train, WindowSelection) {
  TrainConfig cfg;
  const auto chosen = train(french_corpus(), cfg, TrainResources{}).summary.chosen_window;
  ASSERT_EQ(chosen.count("cote"), 1u);
  EXPECT_TRUE(chosen.at("cote") == 4 || chosen.at("cote") == 20);
  cfg.window = 7;
  const auto fixed = train(french_corpus(), cfg, TrainResources{});
  EXPECT_EQ(fixed.summary.chosen_window.at("cote"), 7);
  EXPECT_EQ(fixed.model.word_lists.at("cote").config().k, 7);
}

TEST(Train, AlphaPickedFromCandidates) {
  TrainConfig cfg;
  cfg.candidate_alphas = {0.1, 0.25};
  const auto result = train(french_corpus(), cfg, TrainResources{});
  EXPECT_TRUE(result.summary.alpha == 0.1 || result.summary.alpha == 0.25);
  EXPECT_EQ(result.model.header.alpha, result.summary.alpha);
}

TEST(Train, NoisyPlantedCorpusGetsOneListPerKey) {
  SynthConfig sc;
  sc.occurrences = 2000;
  sc.keys = 4;
  sc.noise = 0.1;
  sc.seed = 9;
  const auto synth = generate_planted_corpus(sc);
  TrainResources res;
  res.diacritics = DiacriticMap::builtin("es");
  TrainConfig cfg;
  cfg.language = "es";
  cfg.candidate_alphas = {0.1, 0.25};
  const auto result = train(corpus_from_text(synth.text, "synth"), cfg, res);
  EXPECT_EQ(result.summary.ambiguous_keys, sc.keys);
  for (const auto& k : synth.keys) EXPECT_EQ(result.model.word_lists.count(k.key), 1u);
}

TEST(Train, ThreadsDoNotChangeTheModel) {
  SynthConfig sc;
  sc.occurrences = 1500;
  sc.keys = 6;
  sc.noise = 0.05;
  const auto corpus = corpus_from_text(generate_planted_corpus(sc).text, "s");
  TrainResources res;
  res.diacritics = DiacriticMap::builtin("es");
  TrainConfig one;
  one.language = "es";
  TrainConfig many = one;
  many.threads = 4;
  EXPECT_EQ(train(corpus, one, res).model, train(corpus, many, res).model);
}

TEST(Train, NoAmbiguityWarns) {
  const auto result = train(corpus_from_text("le coût\nle coût\n", "x"), TrainConfig{},
                            TrainResources{});
  EXPECT_EQ(result.summary.ambiguous_keys, 0u);
  EXPECT_FALSE(result.summary.warnings.empty());
  EXPECT_TRUE(result.model.word_lists.empty());
  EXPECT_NO_THROW(result.model.validate());
}

TEST(Train, EmptyCorpusRejected) {
  EXPECT_THROW(train(corpus_from_text("", "x"), TrainConfig{}, TrainResources{}),
               InsufficientDataError);
  EXPECT_THROW(train(corpus_from_text("1 2 , .", "x"), TrainConfig{}, TrainResources{}),
               InsufficientDataError);
}

TEST(TrainConfig, Validation) {
  TrainConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.min_count = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.candidate_alphas = {0.1, 0.0};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.window = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.interpolation = {0.6, 0.6};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.holdout_every = 1;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(RefineList, PruningStepsFollowConfig) {
  const auto a = Feature::window("a");
  const auto b = Feature::window("b");
  const DecisionList list("cote", {"côte", "côté"}, testing::words_only(2),
                          {testing::entry(a, 5, 1), testing::entry(b, 3, 0)}, 0);
  const std::vector<LabeledFeatures> data = {testing::labeled(0, {a}),
                                             testing::labeled(0, {a})};
  TrainConfig cfg;
  cfg.prune_cv = false;
  EXPECT_EQ(refine_list(list, data, cfg, {}).size(), 2u);
  cfg.prune_cv = true;
  EXPECT_EQ(refine_list(list, data, cfg, {}).size(), 1u);
  cfg.prune_cv = false;
  cfg.prune_unused = true;
  const auto unused = refine_list(list, data, cfg, {});
  ASSERT_EQ(unused.size(), 1u);
  EXPECT_EQ(unused.entries()[0].feature, a);
}

TEST(Train, AmbiguityClassPoolsMembers) {
  std::string text;
  for (const char* stem : {"habl", "cant", "mir", "pas", "tom"}) {
    const std::string s(stem);
    text += repeat("ayer si " + s + "ara bien todo", 12);
    text += repeat("dice que " + s + "ará mañana temprano", 12);
  }
  TrainResources res;
  res.diacritics = DiacriticMap::builtin("es");
  res.class_specs = {AmbiguityClassSpec{"ARA", {"ara", "ará"}, {}}};
  TrainConfig cfg;
  cfg.language = "es";
  const auto result = train(corpus_from_text(text, "es"), cfg, res);
  const Model& m = result.model;
  ASSERT_EQ(m.class_lists.count("ARA"), 1u);
  EXPECT_FALSE(m.class_assignment.empty());
  for (const auto& [key, name] : m.class_assignment) {
    EXPECT_EQ(name, "ARA");
    EXPECT_EQ(m.word_lists.count(key), 0u);
  }
  EXPECT_EQ(m.class_assignment.size() + m.word_lists.size(), result.summary.ambiguous_keys);
  const Restorer r(m);
  EXPECT_EQ(r.restore("si cantara bien"), "si cantara bien");
  EXPECT_EQ(r.restore("que tomara manana"), "que tomará mañana");
  EXPECT_TRUE(equal_at_precision(parse_model(serialize_model(m)), m));
}

TEST(Train, ClassWarningsForBadMembers) {
  TrainResources res;
  res.diacritics = DiacriticMap::builtin("es");
  res.class_specs = {AmbiguityClassSpec{"ARA", {"ara", "ará"}, {"hablara", "nada"}}};
  TrainConfig cfg;
  cfg.language = "es";
  const auto result =
      train(corpus_from_text(repeat("si hablara", 10) + repeat("hablará hoy", 10), "x"),
            cfg, res);
  EXPECT_TRUE(result.model.class_lists.empty());
  EXPECT_GE(result.summary.warnings.size(), 2u);
}

}  // namespace
}  // namespace accentdl
