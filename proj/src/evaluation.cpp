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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>

#include "accentdl/errors.hpp"
#include "accentdl/text.hpp"

namespace accentdl {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%6.2f%%", 100.0 * v);
  return buf;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

// log P(X = k) for X ~ Binomial(n, 1/2).
double log_binomial_half(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1) - static_cast<double>(n) * std::log(2.0);
}

struct Unit {
  std::size_t document;
  std::string text;
};

std::vector<Unit> split_units(const Corpus& corpus) {
  std::vector<Unit> units;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const std::string& text = corpus.documents[d].text;
    if (corpus.marked) {
      if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
        units.push_back({d, text});
      }
      continue;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto nl = text.find('\n', pos);
      const std::size_t end = nl == std::string::npos ? text.size() : nl + 1;
      std::string line = text.substr(pos, end - pos);
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) {
        units.push_back({d, std::move(line)});
      }
      pos = end;
    }
  }
  return units;
}

// Joins runs of consecutive units from one source document.
Corpus assemble(const Corpus& source, const std::vector<Unit>& units,
                const std::vector<std::size_t>& picked, bool join_runs) {
  Corpus out;
  out.marked = source.marked;
  std::optional<std::size_t> previous;
  for (std::size_t idx : picked) {
    const Unit& u = units[idx];
    const bool extend = join_runs && previous && *previous + 1 == idx &&
                        units[*previous].document == u.document;
    if (extend) {
      out.documents.back().text += u.text;
    } else {
      out.documents.push_back({source.documents[u.document].name, u.text});
    }
    previous = idx;
  }
  return out;
}

}  // namespace

double TokenTally::agreement() const { return ratio(agree, n); }
double TokenTally::prior_rate() const { return ratio(prior, n); }

TokenTally& TokenTally::operator+=(const TokenTally& other) {
  n += other.n;
  agree += other.agree;
  prior += other.prior;
  return *this;
}

TokenTally EvalReport::overall() const {
  TokenTally t = ambiguous;
  t += unambiguous;
  return t;
}

std::size_t EvalReport::total_tokens() const {
  return ambiguous.n + unambiguous.n + unseen.n;
}

std::array<double, 3> EvalReport::shares() const {
  const std::size_t n = total_tokens();
  return {ratio(ambiguous.n, n), ratio(unambiguous.n, n), ratio(unseen.n, n)};
}

void EvalReport::merge(const EvalReport& other) {
  ambiguous += other.ambiguous;
  unambiguous += other.unambiguous;
  unseen += other.unseen;
  std::map<std::string, EvalRow> rows_by_key;
  for (auto& r : rows) rows_by_key.emplace(r.key, std::move(r));
  for (const auto& r : other.rows) {
    auto [it, inserted] = rows_by_key.emplace(r.key, r);
    if (!inserted) it->second.tally += r.tally;
  }
  rows.clear();
  for (auto& [key, row] : rows_by_key) rows.push_back(std::move(row));
}

PriorResult prior_baseline(const PatternTable& table,
                           std::span<const LabeledOccurrence> test) {
  PriorResult result;
  std::size_t hits = 0;
  for (const auto& occ : test) {
    const PatternEntry* entry = table.find(occ.key);
    if (entry == nullptr) {
      ++result.unseen;
      continue;
    }
    ++result.counted;
    if (entry->patterns.front().pattern == occ.pattern) ++hits;
  }
  result.prior = ratio(hits, result.counted);
  return result;
}

std::vector<LabeledOccurrence> labeled_occurrences(const Corpus& corpus,
                                                   const DiacriticMap& map) {
  std::vector<LabeledOccurrence> out;
  for (const auto& doc : word_tokens(corpus, map)) {
    for (const auto& w : doc) {
      if (!w.form.empty()) out.push_back({w.key, w.form});
    }
  }
  return out;
}

std::string strip_text(std::string_view text, const DiacriticMap& map) {
  return map.deaccent(text);
}

EvalReport evaluate_split(const Model& model, const Corpus& test) {
  const Restorer restorer(model);
  const DiacriticMap& map = model.diacritics;
  EvalReport report;
  std::map<std::string, EvalRow> rows;
  for (const auto& doc : test.documents) {
    const auto reference = tokenize(doc.text);
    const auto restored = restorer.restore_tokens(strip_text(doc.text, map));
    if (restored.size() != reference.size()) {
      throw ContractViolation("stripping changed the tokenization of '" + doc.name + "'");
    }
    for (std::size_t i = 0; i < reference.size(); ++i) {
      if (reference[i].kind != TokenKind::kWord) continue;
      const std::string ref = to_lower(reference[i].surface);
      const std::string out = to_lower(restored[i].output);
      const std::string key = map.strip(ref);
      const bool agree = out == ref;
      const PatternEntry* entry = model.patterns.find(key);
      if (entry == nullptr) {
        ++report.unseen.n;
        report.unseen.agree += agree ? 1 : 0;
        continue;
      }
      const bool prior = entry->patterns.front().pattern == ref;
      TokenTally t{1, agree ? 1u : 0u, prior ? 1u : 0u};
      if (entry->ambiguous()) {
        report.ambiguous += t;
        auto [it, inserted] = rows.try_emplace(key);
        if (inserted) {
          it->second.key = key;
          it->second.patterns = entry->spellings();
        }
        it->second.tally += t;
      } else {
        report.unambiguous += t;
      }
    }
  }
  if (report.total_tokens() == 0) {
    throw InsufficientDataError("test data contains no words");
  }
  for (auto& [key, row] : rows) report.rows.push_back(std::move(row));
  return report;
}

SignTest sign_test(std::size_t best_wins, std::size_t combined_wins) {
  SignTest t;
  t.disagreements = best_wins + combined_wins;
  t.best_wins = best_wins;
  const std::size_t n = t.disagreements;
  if (n == 0) return t;
  t.z = (static_cast<double>(best_wins) - 0.5 * static_cast<double>(n)) /
        std::sqrt(0.25 * static_cast<double>(n));
  const std::size_t tail = std::min(best_wins, combined_wins);
  double p = 0.0;
  for (std::size_t k = 0; k <= tail; ++k) p += std::exp(log_binomial_half(n, k));
  t.p_value = std::min(1.0, 2.0 * p);
  return t;
}

std::array<double, 4> ComparisonTable::cells() const {
  return {ratio(both_correct, n), ratio(both_wrong, n), ratio(best_correct, n),
          ratio(combined_correct, n)};
}

SignTest ComparisonTable::significance() const {
  return sign_test(best_correct, combined_correct);
}

void ComparisonTable::merge(const ComparisonTable& other) {
  n += other.n;
  both_correct += other.both_correct;
  both_wrong += other.both_wrong;
  best_correct += other.best_correct;
  combined_correct += other.combined_correct;
}

ComparisonTable compare_best_vs_combined(const Model& model, const Corpus& test) {
  const Restorer restorer(model);
  const DiacriticMap& map = model.diacritics;
  ComparisonTable table;
  for (const auto& doc : test.documents) {
    const auto reference = tokenize(doc.text);
    const auto stripped = tokenize(strip_text(doc.text, map));
    if (stripped.size() != reference.size()) {
      throw ContractViolation("stripping changed the tokenization of '" + doc.name + "'");
    }
    const KeySequence seq = key_sequence(stripped, map);
    for (std::size_t i = 0; i < stripped.size(); ++i) {
      if (stripped[i].kind != TokenKind::kWord) continue;
      const std::size_t pos = seq.position[i];
      const Restorer::Route* route = restorer.route(seq.keys[pos]);
      if (route == nullptr || route->list == nullptr) continue;
      const std::string ref = to_lower(reference[i].surface);
      const auto& patterns = route->entry->patterns;
      const auto best = restorer.decide(*route, seq.keys, pos,
                                        Restorer::Mode::kBestEvidence);
      const auto combined = restorer.decide(*route, seq.keys, pos,
                                            Restorer::Mode::kCombined);
      const bool best_ok = patterns[static_cast<std::size_t>(best.pattern)].pattern == ref;
      const bool combined_ok =
          patterns[static_cast<std::size_t>(combined.pattern)].pattern == ref;
      ++table.n;
      if (best.pattern == combined.pattern) {
        ++(best_ok ? table.both_correct : table.both_wrong);
      } else if (best_ok) {
        ++table.best_correct;
      } else if (combined_ok) {
        ++table.combined_correct;
      } else {
        // Possible only with three or more patterns: both wrong, differently.
        ++table.both_wrong;
      }
    }
  }
  return table;
}

std::vector<FoldSplit> make_folds(const Corpus& corpus, int folds,
                                  std::optional<std::uint64_t> shuffle_seed) {
  if (folds < 2) throw ConfigError("at least 2 folds are needed for a train/test split");
  const auto units = split_units(corpus);
  const auto n = units.size();
  if (n < static_cast<std::size_t>(folds)) {
    throw InsufficientDataError("corpus has " + std::to_string(n) +
                                " units, too few for " + std::to_string(folds) +
                                " non-empty folds");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (shuffle_seed) {
    std::mt19937_64 rng(*shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  const bool join_runs = !shuffle_seed;
  std::vector<FoldSplit> out;
  for (int f = 0; f < folds; ++f) {
    const std::size_t lo = n * static_cast<std::size_t>(f) / static_cast<std::size_t>(folds);
    const std::size_t hi =
        n * static_cast<std::size_t>(f + 1) / static_cast<std::size_t>(folds);
    std::vector<std::size_t> train, test;
    for (std::size_t i = 0; i < n; ++i) (i >= lo && i < hi ? test : train).push_back(order[i]);
    out.push_back({assemble(corpus, units, train, join_runs),
                   assemble(corpus, units, test, join_runs)});
  }
  return out;
}

KFoldResult kfold(const Corpus& corpus, int folds, const Trainer& trainer,
                  std::optional<std::uint64_t> shuffle_seed) {
  KFoldResult result;
  for (const auto& split : make_folds(corpus, folds, shuffle_seed)) {
    const Model model = trainer(split.train);
    EvalReport report = evaluate_split(model, split.test);
    result.comparison.merge(compare_best_vs_combined(model, split.test));
    result.pooled.merge(report);
    result.folds.push_back(std::move(report));
  }
  return result;
}

void print_report(std::ostream& out, const EvalReport& report) {
  char line[512];
  std::snprintf(line, sizeof line, "%-20s %-32s %8s %10s %10s\n", "Word", "Patterns",
                "N", "Agreement", "Prior");
  out << line;
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof line, "%-20s %-32s %8zu %10s %10s\n", row.key.c_str(),
                  join(row.patterns, "/").c_str(), row.tally.n,
                  percent(row.tally.agreement()).c_str(),
                  percent(row.tally.prior_rate()).c_str());
    out << line;
  }
  auto summary = [&](const char* label, const TokenTally& t, bool with_prior) {
    std::snprintf(line, sizeof line, "%-53s %8zu %10s %10s\n", label, t.n,
                  percent(t.agreement()).c_str(),
                  with_prior ? percent(t.prior_rate()).c_str() : "-");
    out << line;
  };
  out << '\n';
  summary("ambiguous tokens", report.ambiguous, true);
  summary("unambiguous tokens", report.unambiguous, true);
  summary("all known tokens", report.overall(), true);
  summary("tokens unseen in training", report.unseen, false);
}

void write_report_tsv(std::ostream& out, const EvalReport& report) {
  char buf[64];
  for (const auto& row : report.rows) {
    out << row.key << '\t' << row.tally.n << '\t';
    std::snprintf(buf, sizeof buf, "%.6f\t%.6f", row.tally.agreement(),
                  row.tally.prior_rate());
    out << buf << '\n';
  }
}

void print_comparison(std::ostream& out, const ComparisonTable& table) {
  const auto cells = table.cells();
  const auto sig = table.significance();
  char line[256];
  out << "Combining vs. not combining evidence (" << table.n << " ambiguous tokens)\n";
  const char* labels[] = {"Agree    - both classifications correct",
                          "Agree    - both classifications incorrect",
                          "Disagree - single best evidence correct",
                          "Disagree - combined evidence correct"};
  for (int i = 0; i < 4; ++i) {
    std::snprintf(line, sizeof line, "%-44s %s\n", labels[i], percent(cells[i]).c_str());
    out << line;
  }
  std::snprintf(line, sizeof line,
                "Sign test on %zu disagreements: best wins %zu, z = %.2f, p = %.4g\n",
                sig.disagreements, sig.best_wins, sig.z, sig.p_value);
  out << line;
}

}  // namespace accentdl
