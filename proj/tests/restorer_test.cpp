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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "accentdl/errors.hpp"
#include "test_support.hpp"

namespace accentdl {
namespace {

using testing::cote_model;
using testing::entry;
using testing::words_only;

class RestorerTest : public ::testing::Test {
 protected:
  Model model = cote_model();
  Restorer restorer{model};
};

TEST_F(RestorerTest, BestEvidenceDecides) {
  EXPECT_EQ(restorer.restore("la cote ouest"), "la côte ouest");
  EXPECT_EQ(restorer.restore("le cote gauche"), "le côté gauche");
  EXPECT_EQ(restorer.restore("un cote de"), "un côté de");
  EXPECT_EQ(restorer.restore("la cote de"), "la côte de");
}

TEST_F(RestorerTest, DefaultWhenNothingMatches) {
  EXPECT_EQ(restorer.restore("cote"), "côte");
  EXPECT_EQ(restorer.restore("rien cote rien"), "rien côte rien");
}

TEST_F(RestorerTest, UnambiguousAndUnknownWords) {
  EXPECT_EQ(restorer.restore("le cout total"), "le coût total");
  EXPECT_EQ(restorer.restore("xyz 42 !"), "xyz 42 !");
}

TEST_F(RestorerTest, CaseAndLayoutPreserved) {
  EXPECT_EQ(restorer.restore("COTE de"), "CÔTÉ de");
  EXPECT_EQ(restorer.restore("Cote gauche"), "Côté gauche");
  EXPECT_EQ(restorer.restore("  la cote,\tet\n\n"), "  la côte,\tet\n\n");
  EXPECT_EQ(restorer.restore(""), "");
}

TEST_F(RestorerTest, ContextSkipsPunctuation) {
  EXPECT_EQ(restorer.restore("la, cote"), "la, côte");
  EXPECT_EQ(restorer.restore("cote ; gauche"), "côté ; gauche");
}

TEST_F(RestorerTest, TrustExisting) {
  EXPECT_EQ(restorer.restore("côté ouest"), "côte ouest");
  RestoreOptions opts;
  opts.trust_existing = true;
  EXPECT_EQ(restorer.restore("côté ouest", opts), "côté ouest");
  EXPECT_EQ(restorer.restore("cote ouest", opts), "côte ouest");
}

TEST_F(RestorerTest, Trace) {
  std::ostringstream trace;
  RestoreOptions opts;
  opts.trace = &trace;
  restorer.restore("la cote. cote", opts);
  EXPECT_EQ(trace.str(), "cote\tla *cote*\t7.5000\tcôte\ncote\tDEFAULT\t0.0000\tcôte\n");
}

TEST_F(RestorerTest, RestoredTokens) {
  const auto tokens = restorer.restore_tokens("la cote !");
  ASSERT_EQ(tokens.size(), 3u);
  EXPECT_FALSE(tokens[0].changed);
  EXPECT_TRUE(tokens[1].changed);
  EXPECT_EQ(tokens[1].output, "côte");
  EXPECT_EQ(tokens[2].output, "!");
}

TEST_F(RestorerTest, RoutesAndDecisions) {
  EXPECT_EQ(restorer.route("zzz"), nullptr);
  const auto* cout = restorer.route("cout");
  ASSERT_NE(cout, nullptr);
  EXPECT_EQ(cout->list, nullptr);
  const auto* cote = restorer.route("cote");
  ASSERT_NE(cote->list, nullptr);
  const std::vector<std::string> keys = {"la", "cote", "gauche", "de"};
  const auto best = restorer.decide(*cote, keys, 1);
  EXPECT_EQ(best.pattern, 0);
  EXPECT_EQ(best.matched, 0u);
  // Combined votes: la 7.5 against gauche 6.0 + de 1.5 ties; the top entry's
  // label wins the tie.
  EXPECT_EQ(restorer.decide(*cote, keys, 1, Restorer::Mode::kCombined).pattern, 0);
  const std::vector<std::string> keys2 = {"cote", "gauche", "ouest", "de"};
  EXPECT_EQ(restorer.decide(*cote, keys2, 0).pattern, 1);
  EXPECT_EQ(restorer.decide(*cote, keys2, 0, Restorer::Mode::kCombined).pattern, 1);
}

TEST(ClassifyCombined, SumsVotes) {
  const Model m = cote_model();
  const DecisionList& list = m.word_lists.at("cote");
  const std::vector<Feature> strong_pair{Feature::window("ouest"), Feature::word_at(1, "gauche")};
  EXPECT_EQ(list.classify(strong_pair), 1);
  EXPECT_EQ(classify_combined(list, strong_pair), 1);
  const std::vector<Feature> split{Feature::window("ouest"), Feature::window("de")};
  EXPECT_EQ(list.classify(split), 0);
  EXPECT_EQ(classify_combined(list, split), 0);
  EXPECT_EQ(classify_combined(list, std::vector<Feature>{}), list.default_label());
  const std::vector<Feature> sum{Feature::window("ouest"), Feature::window("de"),
                                 Feature::word_at(1, "gauche")};
  EXPECT_EQ(list.classify(sum), 1);
  EXPECT_EQ(classify_combined(list, sum), 1);
}

TEST(ClassifyTraced, ReportsMatch) {
  const Model m = cote_model();
  const DecisionList& list = m.word_lists.at("cote");
  const std::vector<std::string> left = {"x", "la"};
  const std::vector<std::string> right = {"gauche"};
  const auto c = classify_traced(list, ContextView{left, right});
  EXPECT_EQ(c.label, 0);
  EXPECT_EQ(c.matched, 0u);
  const auto d = classify_traced(list, ContextView{});
  EXPECT_EQ(d.matched, std::nullopt);
  EXPECT_EQ(classify(list, ContextView{{}, right}), 1);
}

TEST(KeySequence, WordsAndNumbers) {
  const auto tokens = tokenize("Où, 12 Été !");
  const auto seq = key_sequence(tokens, DiacriticMap::builtin("fr"));
  EXPECT_EQ(seq.keys, (std::vector<std::string>{"ou", "<NUM>", "ete"}));
  ASSERT_EQ(seq.position.size(), tokens.size());
  EXPECT_EQ(seq.position[0], 0u);
  EXPECT_EQ(seq.position[1], std::string::npos);
  EXPECT_EQ(seq.position[2], 1u);
}

Model ara_model() {
  Model m;
  m.header.language = "es";
  m.diacritics = DiacriticMap::builtin("es");
  PatternCounter counter;
  counter.add("hablara", "hablará", 9);
  counter.add("hablara", "hablara", 4);
  counter.add("cantara", "cantara", 8);
  counter.add("cantara", "cantará", 3);
  m.patterns = counter.table(1);
  const AmbiguityClassSpec spec{"ARA", {"ara", "ará"}, {}};
  std::vector<DecisionEntry> entries = {entry(Feature::word_at(1, "manana"), 5.0, 1),
                                        entry(Feature::word_at(-1, "si"), 4.0, 0)};
  m.class_lists.emplace("ARA", ClassList{spec, DecisionList("ARA", spec.slots, words_only(2),
                                                             std::move(entries), 0)});
  m.class_assignment = {{"cantara", "ARA"}, {"hablara", "ARA"}};
  m.validate();
  return m;
}

TEST(ClassRouting, SlotsMapToEachMembersPatterns) {
  const Model m = ara_model();
  const Restorer r(m);
  EXPECT_EQ(r.restore("hablara manana"), "hablará manana");
  EXPECT_EQ(r.restore("cantara manana"), "cantará manana");
  EXPECT_EQ(r.restore("si hablara"), "si hablara");
  EXPECT_EQ(r.restore("si cantara"), "si cantara");
  EXPECT_EQ(r.restore("hablara"), "hablara");
  EXPECT_EQ(r.route("hablara")->label_to_pattern, (std::vector<int>{1, 0}));
  EXPECT_EQ(r.route("cantara")->label_to_pattern, (std::vector<int>{0, 1}));
}

TEST(ModelValidate, Violations) {
  Model missing = cote_model();
  missing.word_lists.clear();
  EXPECT_THROW(missing.validate(), ContractViolation);
  EXPECT_THROW(Restorer{missing}, ContractViolation);

  Model both = ara_model();
  both.word_lists.emplace("hablara", DecisionList("hablara", {"hablará", "hablara"},
                                                  words_only(), {}, 0));
  EXPECT_THROW(both.validate(), ContractViolation);

  Model extra = cote_model();
  extra.word_lists.emplace("cout", DecisionList("cout", {"coût"}, words_only(), {}, 0));
  EXPECT_THROW(extra.validate(), ContractViolation);

  Model labels = cote_model();
  labels.word_lists.erase("cote");
  labels.word_lists.emplace("cote", DecisionList("cote", {"côté", "côte"}, words_only(), {}, 0));
  EXPECT_THROW(labels.validate(), ContractViolation);

  Model unknown = ara_model();
  unknown.class_assignment["cantara"] = "NOPE";
  EXPECT_THROW(unknown.validate(), ContractViolation);
}

// Restoration changes accents only: de-accenting the output gives back the
// de-accented input, with every byte outside word tokens untouched.
TEST(RestoreProperty, SkeletonPreserved) {
  const Model m = cote_model();
  const Restorer r(m);
  const std::vector<std::string> pieces = {"cote", "Cote", "COTE", "côté", "la", "de",
                                           "gauche", "ouest", "cout", "l'", "42",
                                           ", ", ". ", " ", "  ", "\n", "«", "»"};
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    for (int i = 0; i < 12; ++i) text += pieces[pick(rng)] + (i % 2 ? "" : " ");
    const std::string out = r.restore(text);
    ASSERT_EQ(m.diacritics.deaccent(out), m.diacritics.deaccent(text)) << text;
    const std::string stripped = m.diacritics.deaccent(text);
    ASSERT_EQ(m.diacritics.deaccent(r.restore(stripped)), stripped);
  }
}

}  // namespace
}  // namespace accentdl
