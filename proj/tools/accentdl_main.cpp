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

// accentdl: train, apply, evaluate and inspect accent-restoration models.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "accentdl/corpus.hpp"
#include "accentdl/errors.hpp"
#include "accentdl/evaluation.hpp"
#include "accentdl/model_io.hpp"
#include "accentdl/restorer.hpp"
#include "accentdl/synth.hpp"
#include "accentdl/text.hpp"
#include "accentdl/trainer.hpp"

namespace {

using namespace accentdl;

enum ExitCode {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kIo = 3,
  kInsufficientData = 4,
  kParse = 5,
  kUnknownKey = 6,
};

class UnknownKeyError : public Error {
 public:
  using Error::Error;
};

struct TrainingFlags {
  std::optional<int> window;
  std::string alpha = "0.1";
  std::string beta_gamma = "1,0";
  bool prune_cv = true;
  bool prune_unused = false;
  bool suffixes = false;
  std::uint64_t min_count = 2;
  std::string language = "fr";
  std::string diacritics;
  std::string classes;
  std::string tags;
  std::string lemmas;
  std::string classes_spec;
  unsigned threads = 1;
};

const std::map<std::string, bool> kOnOff{{"on", true}, {"off", false}};

void add_training_flags(CLI::App* cmd, TrainingFlags& f) {
  cmd->add_option("-k,--window", f.window,
                  "Context window in words (default: chosen per word from 4 and 20)")
      ->check(CLI::Range(1, 127));
  cmd->add_option("--alpha", f.alpha,
                  "Smoothing constant added to every count, or 'auto' to pick one of "
                  "0.1, 0.15, 0.2, 0.25 on held-out data")
      ->capture_default_str();
  cmd->add_option("--beta-gamma", f.beta_gamma,
                  "Weights of global and residual counts, as BETA,GAMMA")
      ->capture_default_str();
  cmd->add_option("--prune-cv", f.prune_cv, "Cross-validation pruning (on|off)")
      ->transform(CLI::CheckedTransformer(kOnOff, CLI::ignore_case))
      ->default_str("on");
  cmd->add_option("--prune-unused", f.prune_unused,
                  "Drop evidence that never decides a training instance (on|off)")
      ->transform(CLI::CheckedTransformer(kOnOff, CLI::ignore_case))
      ->default_str("off");
  cmd->add_option("--suffixes", f.suffixes, "Word-suffix evidence (on|off)")
      ->transform(CLI::CheckedTransformer(kOnOff, CLI::ignore_case))
      ->default_str("off");
  cmd->add_option("--min-count", f.min_count,
                  "Minimum count for a key or accent pattern to be kept")
      ->capture_default_str();
  cmd->add_option("--language", f.language, "Built-in diacritic map (es|fr)")
      ->check(CLI::IsMember({"es", "fr"}))
      ->capture_default_str();
  cmd->add_option("--diacritics", f.diacritics, "Diacritic map file replacing the built-in one");
  cmd->add_option("--classes", f.classes, "Word-class file (NAME<TAB>word word ...)");
  cmd->add_option("--tags", f.tags, "Part-of-speech lexicon (word<TAB>tag, tag ...)");
  cmd->add_option("--lemmas", f.lemmas, "Lemma lexicon (word<TAB>lemma)");
  cmd->add_option("--classes-spec", f.classes_spec,
                  "Ambiguity classes (NAME<TAB>slot slot ...[<TAB>members])");
  cmd->add_option("--threads", f.threads, "Worker threads for per-word training")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
}

TrainConfig make_config(const TrainingFlags& f) {
  TrainConfig c;
  c.language = f.language;
  c.min_count = f.min_count;
  c.window = f.window;
  if (f.alpha == "auto") {
    c.candidate_alphas = {0.1, 0.15, 0.2, 0.25};
  } else {
    try {
      std::size_t used = 0;
      c.smoothing.alpha = std::stod(f.alpha, &used);
      if (used != f.alpha.size()) throw std::invalid_argument(f.alpha);
    } catch (const std::logic_error&) {
      throw ConfigError("--alpha expects a number or 'auto', got '" + f.alpha + "'");
    }
  }
  const auto comma = f.beta_gamma.find_first_of(",/");
  if (comma == std::string::npos) {
    throw ConfigError("--beta-gamma expects BETA,GAMMA, got '" + f.beta_gamma + "'");
  }
  try {
    std::size_t used = 0;
    const std::string beta = f.beta_gamma.substr(0, comma);
    const std::string gamma = f.beta_gamma.substr(comma + 1);
    c.interpolation.beta = std::stod(beta, &used);
    if (used != beta.size()) throw std::invalid_argument(beta);
    c.interpolation.gamma = std::stod(gamma, &used);
    if (used != gamma.size()) throw std::invalid_argument(gamma);
  } catch (const std::logic_error&) {
    throw ConfigError("--beta-gamma expects two numbers, got '" + f.beta_gamma + "'");
  }
  c.prune_cv = f.prune_cv;
  c.prune_unused = f.prune_unused;
  c.features.suffixes = f.suffixes;
  c.threads = f.threads;
  c.validate();
  return c;
}

TrainResources load_resources(const TrainingFlags& f) {
  TrainResources r;
  r.diacritics = f.diacritics.empty() ? DiacriticMap::builtin(f.language)
                                      : DiacriticMap::load(f.diacritics);
  if (!f.classes.empty()) r.classes = WordClassSet::load(f.classes, r.diacritics);
  if (!f.tags.empty()) r.tags = TagLexicon::load(f.tags, r.diacritics);
  if (!f.lemmas.empty()) r.lemmas = LemmaLexicon::load(f.lemmas, r.diacritics);
  if (!f.classes_spec.empty()) {
    r.class_specs = AmbiguityClassSpec::load(f.classes_spec, r.diacritics);
  }
  return r;
}

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") return read_all(std::cin);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_all(in);
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << data;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

void print_summary(const TrainSummary& s) {
  std::cout << "keys: " << s.keys << "\nambiguous keys: " << s.ambiguous_keys
            << "\nalpha: " << s.alpha << '\n';
  for (const auto& [name, size] : s.list_sizes) {
    std::cout << "  " << name << ": " << size << " entries";
    const auto w = s.chosen_window.find(name);
    if (w != s.chosen_window.end()) std::cout << " (k=" << w->second << ")";
    std::cout << '\n';
  }
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << '\n';
}

std::size_t edit_distance(const std::u32string& a, const std::u32string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] != b[j - 1])});
      diag = up;
    }
  }
  return row[b.size()];
}

std::vector<std::string> nearest_keys(const Model& model, const std::string& key,
                                      std::size_t n) {
  const auto target = to_u32(key);
  std::vector<std::pair<std::size_t, std::string>> scored;
  for (const auto& [k, entry] : model.patterns.entries()) {
    scored.emplace_back(edit_distance(target, to_u32(k)), k);
  }
  for (const auto& [name, cls] : model.class_lists) {
    scored.emplace_back(edit_distance(target, to_u32(name)), name);
  }
  const std::size_t m = std::min(n, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(m),
                    scored.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(scored[i].second);
  return out;
}

void inspect(const Model& model, const std::string& query) {
  const auto cls = model.class_lists.find(query);
  if (cls != model.class_lists.end()) {
    std::cout << "class " << cls->first << " (" << cls->second.spec.slots.size()
              << " slots)\n"
              << format_list(cls->second.list);
    return;
  }
  const std::string key = model.diacritics.strip(query);
  const PatternEntry* entry = model.patterns.find(key);
  if (entry == nullptr) {
    std::string msg = "unknown key '" + query + "'";
    const auto near = nearest_keys(model, key, 5);
    if (!near.empty()) {
      msg += "; nearest keys:";
      for (const auto& k : near) msg += " " + k;
    }
    throw UnknownKeyError(msg);
  }
  std::cout << key << ':';
  for (const auto& p : entry->patterns) std::cout << ' ' << p.pattern << " (" << p.count << ')';
  std::cout << '\n';
  if (!entry->ambiguous()) return;
  const auto own = model.word_lists.find(key);
  if (own != model.word_lists.end()) {
    std::cout << format_list(own->second);
    return;
  }
  const auto& name = model.class_assignment.at(key);
  std::cout << "served by class " << name << '\n'
            << format_list(model.class_lists.at(name).list);
}

int run(int argc, char** argv) {
  CLI::App app{"Restore accents in de-accented text with decision lists."};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML or INI file with default flag values")
      ->envname("ACCENTDL_CONFIG");

  TrainingFlags train_flags;
  std::vector<std::string> train_inputs;
  std::string model_out;
  auto* train_cmd = app.add_subcommand("train", "Train a model from accented text");
  train_cmd->add_option("corpus", train_inputs, "Corpus files or directories")
      ->required();
  train_cmd->add_option("-o,--output", model_out, "Model file to write")->required();
  add_training_flags(train_cmd, train_flags);

  std::string model_in, restore_in, restore_out;
  bool trace = false, trust_existing = false;
  auto* restore_cmd = app.add_subcommand("restore", "Restore accents with a model");
  restore_cmd->add_option("-m,--model", model_in, "Model file")->required();
  restore_cmd->add_option("input", restore_in, "Input text (default: standard input)");
  restore_cmd->add_option("-o,--output", restore_out, "Output file (default: standard output)");
  restore_cmd->add_flag("--trace", trace,
                        "Print key, evidence, log-likelihood and pattern per ambiguous word "
                        "to standard error");
  restore_cmd->add_flag("--trust-existing", trust_existing,
                        "Keep words that already carry diacritics");

  TrainingFlags eval_flags;
  std::vector<std::string> eval_inputs;
  int folds = 5;
  std::optional<std::uint64_t> eval_seed;
  std::string report_path;
  bool compare = false;
  auto* eval_cmd = app.add_subcommand("eval", "Cross-validated strip-and-restore evaluation");
  eval_cmd->add_option("corpus", eval_inputs, "Corpus files or directories")
      ->required();
  eval_cmd->add_option("--folds", folds, "Number of folds")->capture_default_str();
  eval_cmd->add_option("--seed", eval_seed, "Shuffle text units with this seed before folding");
  eval_cmd->add_option("--report", report_path, "Write per-word rows as TSV");
  eval_cmd->add_flag("--compare", compare,
                     "Also compare single-best against combined evidence");
  add_training_flags(eval_cmd, eval_flags);

  std::string inspect_model, inspect_key;
  auto* inspect_cmd = app.add_subcommand("inspect", "Print the decision list for a word");
  inspect_cmd->add_option("-m,--model", inspect_model, "Model file")->required();
  inspect_cmd->add_option("key", inspect_key, "Word, with or without accents, or class name")
      ->required();

  SynthConfig synth;
  std::string synth_out, planted_out;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a planted test corpus");
  synth_cmd->add_option("--occurrences", synth.occurrences, "Planted occurrences")
      ->capture_default_str();
  synth_cmd->add_option("--keys", synth.keys, "Planted keys")->capture_default_str();
  synth_cmd->add_option("--noise", synth.noise, "Probability of a misleading trigger")
      ->capture_default_str();
  synth_cmd->add_option("--trigger-window", synth.trigger_window,
                        "Maximum distance of the trigger from the key")
      ->capture_default_str();
  synth_cmd->add_option("--line-length", synth.line_length, "Words per line")
      ->capture_default_str();
  synth_cmd->add_option("--fillers", synth.filler_vocabulary, "Filler vocabulary size")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--language", synth.language, "es|fr")->capture_default_str();
  synth_cmd->add_option("-o,--output", synth_out, "Corpus file (default: standard output)");
  synth_cmd->add_option("--planted", planted_out,
                        "Write key, patterns and triggers as TSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*train_cmd) {
    const TrainConfig config = make_config(train_flags);
    const TrainResources resources = load_resources(train_flags);
    const Corpus corpus = load_corpus(train_inputs);
    const TrainResult result = train(corpus, config, resources);
    save_model(model_out, result.model);
    print_summary(result.summary);
  } else if (*restore_cmd) {
    const Model model = load_model(model_in);
    RestoreOptions opts;
    opts.trust_existing = trust_existing;
    if (trace) opts.trace = &std::cerr;
    const std::string text = read_input(restore_in);
    require_utf8(text);
    write_output(restore_out, restore(text, model, opts));
  } else if (*eval_cmd) {
    const TrainConfig config = make_config(eval_flags);
    const TrainResources resources = load_resources(eval_flags);
    const Corpus corpus = load_corpus(eval_inputs);
    const Trainer trainer = [&](const Corpus& part) {
      return train(part, config, resources).model;
    };
    const KFoldResult result = kfold(corpus, folds, trainer, eval_seed);
    print_report(std::cout, result.pooled);
    if (compare) {
      std::cout << '\n';
      print_comparison(std::cout, result.comparison);
    }
    if (!report_path.empty()) {
      std::ostringstream tsv;
      write_report_tsv(tsv, result.pooled);
      write_output(report_path, tsv.str());
    }
  } else if (*inspect_cmd) {
    inspect(load_model(inspect_model), inspect_key);
  } else if (*synth_cmd) {
    const SynthCorpus corpus = generate_planted_corpus(synth);
    write_output(synth_out, corpus.text);
    if (!planted_out.empty()) {
      std::ostringstream tsv;
      for (const auto& k : corpus.keys) {
        tsv << k.key << '\t' << k.patterns[0] << '\t' << k.patterns[1] << '\t'
            << k.triggers[0] << '\t' << k.triggers[1] << '\n';
      }
      write_output(planted_out, tsv.str());
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const accentdl::ConfigError& e) {
    std::cerr << "accentdl: " << e.what() << '\n';
    return kUsage;
  } catch (const accentdl::ParseError& e) {
    std::cerr << "accentdl: " << e.what() << '\n';
    return kParse;
  } catch (const accentdl::IoError& e) {
    std::cerr << "accentdl: " << e.what() << '\n';
    return kIo;
  } catch (const accentdl::EncodingError& e) {
    std::cerr << "accentdl: " << e.what() << '\n';
    return kIo;
  } catch (const accentdl::InsufficientDataError& e) {
    std::cerr << "accentdl: " << e.what() << '\n';
    return kInsufficientData;
  } catch (const UnknownKeyError& e) {
    std::cerr << "accentdl: " << e.what() << '\n';
    return kUnknownKey;
  } catch (const std::exception& e) {
    std::cerr << "accentdl: " << e.what() << '\n';
    return kFailure;
  }
}
