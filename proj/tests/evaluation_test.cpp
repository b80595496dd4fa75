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

#include "accentdl/evaluation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "accentdl/errors.hpp"
#include "test_support.hpp"

namespace accentdl {
namespace {

using testing::cote_model;
using testing::entry;
using testing::words_only;

Corpus text_corpus(const std::string& text) { return corpus_from_text(text, "t"); }

TEST(EvaluateSplit, TalliesByGroup) {
  const Model m = cote_model();
  const auto report =
      evaluate_split(m, text_corpus("La côte ouest, le côté gauche.\nUn coût xyz cote de\n"));
  // cote tokens: côte (right, prior), côté (right), cote (wrong: restored côté).
  EXPECT_EQ(report.ambiguous.n, 3u);
  EXPECT_EQ(report.ambiguous.agree, 2u);
  EXPECT_EQ(report.ambiguous.prior, 1u);
  // la, coût.
  EXPECT_EQ(report.unambiguous.n, 2u);
  EXPECT_EQ(report.unambiguous.agree, 2u);
  EXPECT_EQ(report.unambiguous.prior, 2u);
  // ouest, le, gauche, un, xyz, de.
  EXPECT_EQ(report.unseen.n, 6u);
  EXPECT_EQ(report.unseen.agree, 6u);
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_EQ(report.rows[0].key, "cote");
  EXPECT_EQ(report.rows[0].patterns, (std::vector<std::string>{"côte", "côté"}));
  EXPECT_EQ(report.total_tokens(), 11u);
  EXPECT_EQ(report.overall().n, 5u);
  const auto shares = report.shares();
  EXPECT_DOUBLE_EQ(shares[0] + shares[1] + shares[2], 1.0);
  EXPECT_THROW(evaluate_split(m, text_corpus(" , 42 .")), InsufficientDataError);
}

TEST(EvaluateSplit, UnseenAccentedWordDisagrees) {
  const auto report = evaluate_split(cote_model(), text_corpus("été"));
  EXPECT_EQ(report.unseen.n, 1u);
  EXPECT_EQ(report.unseen.agree, 0u);
}

TEST(EvaluateSplit, DefaultOnlyModelMatchesPrior) {
  Model m = cote_model();
  m.word_lists.erase("cote");
  m.word_lists.emplace("cote", DecisionList("cote", {"côte", "côté"}, words_only(3), {}, 0));
  const auto report = evaluate_split(
      m, text_corpus("la côte gauche\nle côté ouest\ncôté de\nune côte\n"));
  EXPECT_EQ(report.ambiguous.agreement(), report.ambiguous.prior_rate());
  EXPECT_DOUBLE_EQ(report.ambiguous.agreement(), 0.5);
}

TEST(PriorBaseline, MajorityPattern) {
  const Model m = cote_model();
  const std::vector<LabeledOccurrence> test = {
      {"cote", "côte"}, {"cote", "côté"}, {"cote", "côte"}, {"zzz", "zzz"}};
  const auto p = prior_baseline(m.patterns, test);
  EXPECT_DOUBLE_EQ(p.prior, 2.0 / 3.0);
  EXPECT_EQ(p.counted, 3u);
  EXPECT_EQ(p.unseen, 1u);
}

TEST(LabeledOccurrences, WordsOnly) {
  const auto occ =
      labeled_occurrences(text_corpus("La Côte, 12 fois."), DiacriticMap::builtin("fr"));
  ASSERT_EQ(occ.size(), 3u);
  EXPECT_EQ(occ[1].key, "cote");
  EXPECT_EQ(occ[1].pattern, "côte");
}

TEST(StripText, KeepsCaseAndSpacing) {
  EXPECT_EQ(strip_text("  Côté,\tÉTÉ\n", DiacriticMap::builtin("fr")), "  Cote,\tETE\n");
}

TEST(SignTest, ExactBinomial) {
  const auto t = sign_test(8, 2);
  EXPECT_EQ(t.disagreements, 10u);
  EXPECT_NEAR(t.z, 3.0 / std::sqrt(2.5), 1e-12);
  EXPECT_NEAR(t.p_value, 2.0 * (1 + 10 + 45) / 1024.0, 1e-12);
  EXPECT_NEAR(sign_test(2, 8).p_value, t.p_value, 1e-12);
  EXPECT_NEAR(sign_test(2, 8).z, -t.z, 1e-12);
  EXPECT_EQ(sign_test(0, 0).p_value, 1.0);
  EXPECT_EQ(sign_test(5, 5).p_value, 1.0);
}

TEST(Comparison, HandBuiltDisagreement) {
  Model m = cote_model();
  m.word_lists.erase("cote");
  m.word_lists.emplace(
      "cote", DecisionList("cote", {"côte", "côté"}, words_only(3),
                           {entry(Feature::word_at(-1, "la"), 2.0, 0),
                            entry(Feature::word_at(1, "gauche"), 1.5, 1),
                            entry(Feature::window("de"), 1.0, 1)},
                           0));
  const auto table = compare_best_vs_combined(m, text_corpus("la côté gauche de\nla côte\n"));
  EXPECT_EQ(table.n, 2u);
  EXPECT_EQ(table.both_correct, 1u);
  EXPECT_EQ(table.combined_correct, 1u);
  EXPECT_EQ(table.best_correct, 0u);
  const auto cells = table.cells();
  EXPECT_DOUBLE_EQ(cells[0] + cells[1] + cells[2] + cells[3], 1.0);
  std::ostringstream out;
  print_comparison(out, table);
  EXPECT_NE(out.str().find("Disagree - combined evidence correct"), std::string::npos);
  EXPECT_NE(out.str().find("Sign test on 1 disagreements"), std::string::npos);
}

TEST(Comparison, EmptyTableCellsAreZero) {
  ComparisonTable t;
  EXPECT_EQ(t.cells(), (std::array<double, 4>{0, 0, 0, 0}));
}

std::string lines(int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += "ligne " + std::to_string(i) + "\n";
  return out;
}

TEST(MakeFolds, PartitionLines) {
  const Corpus c = text_corpus(lines(10) + "\n  \n");
  const auto folds = make_folds(c, 5);
  ASSERT_EQ(folds.size(), 5u);
  std::string all_tests;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    ASSERT_EQ(folds[f].test.documents.size(), 1u);
    const std::string& test = folds[f].test.documents[0].text;
    EXPECT_EQ(test, "ligne " + std::to_string(2 * f) + "\nligne " +
                        std::to_string(2 * f + 1) + "\n");
    all_tests += test;
    std::string train;
    for (const auto& d : folds[f].train.documents) train += d.text;
    EXPECT_EQ(train.find(test), std::string::npos);
    EXPECT_EQ(train.size() + test.size(), lines(10).size());
  }
  EXPECT_EQ(all_tests, lines(10));
}

TEST(MakeFolds, UnevenSizes) {
  const auto folds = make_folds(text_corpus(lines(7)), 3);
  std::vector<std::size_t> sizes;
  for (const auto& f : folds) {
    sizes.push_back(static_cast<std::size_t>(
        std::count(f.test.documents[0].text.begin(), f.test.documents[0].text.end(), '\n')));
  }
  EXPECT_EQ(sizes, (std::vector<std::size_t>{2, 2, 3}));
}

TEST(MakeFolds, MarkedCorporaSplitBetweenDocuments) {
  std::string text;
  for (int d = 0; d < 4; ++d) text += "<doc id=" + std::to_string(d) + ">\na\nb\n</doc>\n";
  const auto folds = make_folds(text_corpus(text), 2);
  for (const auto& f : folds) {
    EXPECT_EQ(f.test.documents.size(), 2u);
    EXPECT_EQ(f.train.documents.size(), 2u);
    for (const auto& d : f.test.documents) EXPECT_EQ(d.text, "a\nb\n");
  }
}

TEST(MakeFolds, ShuffleIsSeeded) {
  const Corpus c = text_corpus(lines(20));
  const auto a = make_folds(c, 4, 99);
  const auto b = make_folds(c, 4, 99);
  for (std::size_t f = 0; f < a.size(); ++f) {
    ASSERT_EQ(a[f].test.documents.size(), b[f].test.documents.size());
    for (std::size_t d = 0; d < a[f].test.documents.size(); ++d) {
      EXPECT_EQ(a[f].test.documents[d].text, b[f].test.documents[d].text);
    }
  }
  std::multiset<std::string> seen;
  for (const auto& f : a) {
    for (const auto& d : f.test.documents) seen.insert(d.text);
  }
  EXPECT_EQ(seen.size(), 20u);
  EXPECT_EQ(std::set<std::string>(seen.begin(), seen.end()).size(), 20u);
}

TEST(MakeFolds, Errors) {
  EXPECT_THROW(make_folds(text_corpus(lines(5)), 1), ConfigError);
  EXPECT_THROW(make_folds(text_corpus(lines(3)), 5), InsufficientDataError);
}

TEST(EvalReport, MergeIsOccurrenceWeighted) {
  EvalReport a, b;
  a.ambiguous = {10, 10, 5};
  a.rows = {{"cote", {"côte", "côté"}, {10, 10, 5}}};
  b.ambiguous = {90, 81, 45};
  b.rows = {{"cote", {"côte", "côté"}, {90, 81, 45}}, {"a", {"a", "à"}, {1, 1, 1}}};
  a.merge(b);
  EXPECT_DOUBLE_EQ(a.ambiguous.agreement(), 0.91);
  ASSERT_EQ(a.rows.size(), 2u);
  EXPECT_EQ(a.rows[0].key, "a");
  EXPECT_EQ(a.rows[1].tally.n, 100u);
}

TEST(EvalReport, EqualSizedFoldsPoolToTheirMean) {
  EvalReport pooled;
  for (std::size_t agree : {10u, 10u, 10u, 9u, 9u}) {
    EvalReport fold;
    fold.ambiguous = {10, agree, 5};
    pooled.merge(fold);
  }
  EXPECT_NEAR(pooled.ambiguous.agreement(), 0.96, 1e-12);
}

TEST(Kfold, TrainsPerFoldAndPools) {
  std::string text;
  for (int i = 0; i < 10; ++i) text += i % 2 ? "la côte ouest\n" : "le côté gauche\n";
  int calls = 0;
  const auto result = kfold(text_corpus(text), 5, [&](const Corpus& train) {
    ++calls;
    EXPECT_FALSE(train.documents.empty());
    return cote_model();
  });
  EXPECT_EQ(calls, 5);
  EXPECT_EQ(result.folds.size(), 5u);
  EXPECT_EQ(result.pooled.ambiguous.n, 10u);
  EXPECT_EQ(result.pooled.ambiguous.agree, 10u);
  EXPECT_EQ(result.comparison.n, 10u);
}

TEST(Reports, Formats) {
  EvalReport r;
  r.ambiguous = {4, 3, 2};
  r.rows = {{"cote", {"côte", "côté"}, {4, 3, 2}}};
  std::ostringstream tsv;
  write_report_tsv(tsv, r);
  EXPECT_EQ(tsv.str(), "cote\t4\t0.750000\t0.500000\n");
  std::ostringstream text;
  print_report(text, r);
  EXPECT_NE(text.str().find("côte/côté"), std::string::npos);
  EXPECT_NE(text.str().find(" 75.00%"), std::string::npos);
  EXPECT_NE(text.str().find("tokens unseen in training"), std::string::npos);
}

}  // namespace
}  // namespace accentdl
