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

#include "accentdl/model_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "accentdl/errors.hpp"
#include "accentdl/text.hpp"

namespace accentdl {
namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_ll(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string signed_offset(int v) { return (v > 0 ? "+" : "") + std::to_string(v); }

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.emplace_back(s.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  for (auto& w : split(s, ' ')) {
    if (!w.empty()) out.push_back(std::move(w));
  }
  return out;
}

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

template <typename Range>
std::string join_ints(const Range& items) {
  std::string out;
  for (const auto& v : items) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

void write_config(std::ostream& out, const FeatureConfig& c) {
  out << "config\tk=" << c.k << " words=" << c.words << " pairs=" << c.pairs
      << " window=" << c.window << " classes=" << c.classes << " tags=" << c.tags
      << " lemmas=" << c.lemmas << " suffixes=" << c.suffixes
      << " suffix-lengths=" << join_ints(c.suffix_lengths)
      << " suffix-offsets=" << join_ints(c.suffix_offsets) << '\n';
}

std::string position_of(const Feature& f) {
  switch (f.kind) {
    case FeatureKind::kPair:
    case FeatureKind::kTagPair:
      return signed_offset(f.offset) + "," + signed_offset(f.offset2);
    case FeatureKind::kWindow:
    case FeatureKind::kClassWindow:
    case FeatureKind::kLemmaWindow:
      return "";
    default:
      return signed_offset(f.offset);
  }
}

std::string attribute_of(const Feature& f) {
  if (f.kind == FeatureKind::kTagPair) return "mask=" + std::to_string(f.tag_mask);
  if (f.kind == FeatureKind::kSuffixAt) return "len=" + std::to_string(f.length);
  return "";
}

void write_list_body(std::ostream& out, const DecisionList& list) {
  out << "labels\t" << join(list.labels(), ' ') << '\n';
  write_config(out, list.config());
  for (const auto& e : list.entries()) {
    const Feature& f = e.feature;
    std::string counts;
    for (double c : e.counts) {
      if (!counts.empty()) counts += ',';
      counts += format_double(c);
    }
    out << format_ll(e.log_likelihood) << '\t' << to_string(f.kind) << '\t'
        << position_of(f) << '\t' << attribute_of(f) << '\t' << f.value << '\t'
        << f.value2 << '\t' << list.labels()[static_cast<std::size_t>(e.classification)]
        << '\t' << counts << '\n';
  }
  out << "DEFAULT\t" << list.labels()[static_cast<std::size_t>(list.default_label())]
      << '\n';
}

struct Line {
  std::size_t number;
  std::vector<std::string> fields;
};

class Reader {
 public:
  Reader(std::istream& in, std::string source) : source_(std::move(source)) {
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
      ++number;
      if (!text.empty() && text.back() == '\r') text.pop_back();
      if (text.empty() || text.front() == '#') continue;
      if (!is_valid_utf8(text)) fail(number, "invalid UTF-8");
      lines_.push_back({number, split(text, '\t')});
    }
    last_line_ = number;
  }

  bool done() const { return pos_ >= lines_.size(); }

  const Line& next() {
    if (done()) fail(last_line_, "unexpected end of model file");
    return lines_[pos_++];
  }

  const Line& peek() const {
    if (done()) fail(last_line_, "unexpected end of model file");
    return lines_[pos_];
  }

  [[noreturn]] void fail(std::size_t line, const std::string& what) const {
    throw ParseError(source_, line, what);
  }

  void expect_fields(const Line& l, std::size_t n) const {
    if (l.fields.size() != n) {
      fail(l.number, "expected " + std::to_string(n) + " tab-separated fields, found " +
                         std::to_string(l.fields.size()));
    }
  }

  template <typename Int>
  Int parse_int(const Line& l, std::string_view s) const {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    Int v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      fail(l.number, "invalid integer '" + std::string(s) + "'");
    }
    return v;
  }

  double parse_double(const Line& l, std::string_view s) const {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
      fail(l.number, "invalid number '" + std::string(s) + "'");
    }
    return v;
  }

  bool parse_flag(const Line& l, std::string_view s) const {
    if (s == "1" || s == "on") return true;
    if (s == "0" || s == "off") return false;
    fail(l.number, "invalid flag '" + std::string(s) + "'");
  }

 private:
  std::string source_;
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::size_t last_line_ = 0;
};

bool is_end(const Line& l) { return l.fields.size() == 1 && l.fields[0] == "END"; }

void expect_section(Reader& r, std::string_view name) {
  const Line& l = r.next();
  if (l.fields.size() != 1 || l.fields[0] != name) {
    r.fail(l.number, "expected section " + std::string(name));
  }
}

ModelHeader read_header(Reader& r) {
  expect_section(r, "HEADER");
  ModelHeader h;
  for (const Line* l = &r.next(); !is_end(*l); l = &r.next()) {
    r.expect_fields(*l, 2);
    const auto& key = l->fields[0];
    const auto& value = l->fields[1];
    if (key == "language") {
      h.language = value;
    } else if (key == "alpha") {
      h.alpha = r.parse_double(*l, value);
    } else if (key == "beta") {
      h.beta = r.parse_double(*l, value);
    } else if (key == "gamma") {
      h.gamma = r.parse_double(*l, value);
    } else if (key == "prune-cv") {
      h.prune_cv = r.parse_flag(*l, value);
    } else if (key == "prune-unused") {
      h.prune_unused = r.parse_flag(*l, value);
    } else if (key == "min-count") {
      h.min_count = r.parse_int<std::uint64_t>(*l, value);
    } else {
      r.fail(l->number, "unknown header field '" + key + "'");
    }
  }
  return h;
}

FeatureConfig read_config(Reader& r) {
  const Line& l = r.next();
  r.expect_fields(l, 2);
  if (l.fields[0] != "config") r.fail(l.number, "expected config line");
  FeatureConfig c;
  auto int_list = [&](const std::string& s) {
    std::vector<int> out;
    if (s.empty()) return out;
    for (const auto& item : split(s, ',')) out.push_back(r.parse_int<int>(l, item));
    return out;
  };
  for (const auto& item : words(l.fields[1])) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) r.fail(l.number, "expected name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (name == "k") {
      c.k = r.parse_int<int>(l, value);
    } else if (name == "words") {
      c.words = r.parse_flag(l, value);
    } else if (name == "pairs") {
      c.pairs = r.parse_flag(l, value);
    } else if (name == "window") {
      c.window = r.parse_flag(l, value);
    } else if (name == "classes") {
      c.classes = r.parse_flag(l, value);
    } else if (name == "tags") {
      c.tags = r.parse_flag(l, value);
    } else if (name == "lemmas") {
      c.lemmas = r.parse_flag(l, value);
    } else if (name == "suffixes") {
      c.suffixes = r.parse_flag(l, value);
    } else if (name == "suffix-lengths") {
      c.suffix_lengths = int_list(value);
    } else if (name == "suffix-offsets") {
      c.suffix_offsets = int_list(value);
    } else {
      r.fail(l.number, "unknown config field '" + name + "'");
    }
  }
  try {
    c.validate();
  } catch (const ConfigError& e) {
    r.fail(l.number, e.what());
  }
  return c;
}

std::vector<std::string> read_named_words(Reader& r, std::string_view name) {
  const Line& l = r.next();
  r.expect_fields(l, 2);
  if (l.fields[0] != name) r.fail(l.number, "expected " + std::string(name) + " line");
  return words(l.fields[1]);
}

Feature read_feature(const Reader& r, const Line& l) {
  const auto kind = feature_kind_from_string(l.fields[1]);
  if (!kind) r.fail(l.number, "unknown evidence kind '" + l.fields[1] + "'");
  const std::string& position = l.fields[2];
  const std::string& attribute = l.fields[3];
  Feature f;
  f.kind = *kind;
  f.value = l.fields[4];
  f.value2 = l.fields[5];
  auto offset = [&](std::string_view s) {
    const int v = r.parse_int<int>(l, s);
    if (v < -127 || v > 127 || v == 0) r.fail(l.number, "offset out of range");
    return static_cast<std::int8_t>(v);
  };
  auto attribute_value = [&](std::string_view name) {
    if (attribute.rfind(std::string(name) + "=", 0) != 0) {
      r.fail(l.number, "expected attribute " + std::string(name) + "=N");
    }
    return r.parse_int<int>(l, std::string_view(attribute).substr(name.size() + 1));
  };
  bool want_value2 = false;
  switch (f.kind) {
    case FeatureKind::kPair:
    case FeatureKind::kTagPair: {
      const auto parts = split(position, ',');
      if (parts.size() != 2) r.fail(l.number, "pair evidence needs two offsets");
      f.offset = offset(parts[0]);
      f.offset2 = offset(parts[1]);
      if (f.kind == FeatureKind::kTagPair) {
        const int mask = attribute_value("mask");
        if (mask < 1 || mask > 3) r.fail(l.number, "tag mask must be 1, 2 or 3");
        f.tag_mask = static_cast<std::uint8_t>(mask);
      } else if (!attribute.empty()) {
        r.fail(l.number, "unexpected attribute");
      }
      want_value2 = true;
      break;
    }
    case FeatureKind::kWindow:
    case FeatureKind::kClassWindow:
    case FeatureKind::kLemmaWindow:
      if (!position.empty() || !attribute.empty()) {
        r.fail(l.number, "window evidence takes no position or attribute");
      }
      break;
    case FeatureKind::kSuffixAt: {
      f.offset = offset(position);
      const int len = attribute_value("len");
      if (len < 1 || len > 255) r.fail(l.number, "suffix length out of range");
      f.length = static_cast<std::uint8_t>(len);
      break;
    }
    default:
      f.offset = offset(position);
      if (!attribute.empty()) r.fail(l.number, "unexpected attribute");
      break;
  }
  if (f.value.empty()) r.fail(l.number, "evidence value is empty");
  if (want_value2 == f.value2.empty()) {
    r.fail(l.number, want_value2 ? "pair evidence needs two values"
                                 : "unexpected second value");
  }
  return f;
}

int label_index(const Reader& r, const Line& l, const std::vector<std::string>& labels,
                const std::string& label) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  r.fail(l.number, "unknown classification '" + label + "'");
}

// Reads entries, DEFAULT and END after the labels/config lines.
DecisionList read_list_body(Reader& r, std::size_t block_line, std::string target,
                            std::vector<std::string> labels, FeatureConfig config) {
  std::vector<DecisionEntry> entries;
  std::optional<int> default_label;
  for (const Line* l = &r.next(); !is_end(*l); l = &r.next()) {
    if (default_label) r.fail(l->number, "entries after DEFAULT");
    if (l->fields[0] == "DEFAULT") {
      r.expect_fields(*l, 2);
      default_label = label_index(r, *l, labels, l->fields[1]);
      continue;
    }
    r.expect_fields(*l, 8);
    DecisionEntry e;
    e.log_likelihood = r.parse_double(*l, l->fields[0]);
    e.feature = read_feature(r, *l);
    e.classification = label_index(r, *l, labels, l->fields[6]);
    for (const auto& c : split(l->fields[7], ',')) {
      e.counts.push_back(r.parse_double(*l, c));
    }
    if (e.counts.size() != labels.size()) {
      r.fail(l->number, "expected one count per label");
    }
    entries.push_back(std::move(e));
  }
  if (!default_label) r.fail(block_line, "list '" + target + "' has no DEFAULT line");
  try {
    return DecisionList(std::move(target), std::move(labels), std::move(config),
                        std::move(entries), *default_label);
  } catch (const ContractViolation& e) {
    r.fail(block_line, e.what());
  }
}

}  // namespace

void write_model(std::ostream& out, const Model& m) {
  out << kModelMagic << '\t' << kModelFormatVersion << '\n';
  const auto& h = m.header;
  out << "HEADER\n"
      << "language\t" << h.language << '\n'
      << "alpha\t" << format_double(h.alpha) << '\n'
      << "beta\t" << format_double(h.beta) << '\n'
      << "gamma\t" << format_double(h.gamma) << '\n'
      << "prune-cv\t" << (h.prune_cv ? "on" : "off") << '\n'
      << "prune-unused\t" << (h.prune_unused ? "on" : "off") << '\n'
      << "min-count\t" << h.min_count << '\n'
      << "END\n";
  out << "DIACRITICS\n";
  for (const auto& [from, to] : m.diacritics.entries()) out << from << '\t' << to << '\n';
  out << "END\nPATTERNS\n";
  for (const auto& [key, entry] : m.patterns.entries()) {
    out << key;
    for (const auto& p : entry.patterns) out << '\t' << p.pattern << '\t' << p.count;
    out << '\n';
  }
  out << "END\nCLASSES\n";
  for (const auto& [name, members] : m.classes.classes()) {
    out << name << '\t' << join({members.begin(), members.end()}, ' ') << '\n';
  }
  out << "END\nTAGS\n";
  for (const auto& [word, tags] : m.tags.tags()) {
    out << word << '\t' << join({tags.begin(), tags.end()}, ' ') << '\n';
  }
  out << "END\nLEMMAS\n";
  for (const auto& [word, lemma] : m.lemmas.lemmas()) out << word << '\t' << lemma << '\n';
  out << "END\nASSIGN\n";
  for (const auto& [key, name] : m.class_assignment) out << key << '\t' << name << '\n';
  out << "END\n";
  for (const auto& [key, list] : m.word_lists) {
    out << "LIST\t" << key << '\n';
    write_list_body(out, list);
    out << "END\n";
  }
  for (const auto& [name, cls] : m.class_lists) {
    out << "CLASSLIST\t" << name << '\n';
    out << "slots\t" << join(cls.spec.slots, ' ') << '\n';
    out << "members\t" << join(cls.spec.members, ' ') << '\n';
    write_list_body(out, cls.list);
    out << "END\n";
  }
}

std::string serialize_model(const Model& model) {
  std::ostringstream out;
  write_model(out, model);
  return out.str();
}

Model read_model(std::istream& in, const std::string& source) {
  Reader r(in, source);
  {
    const Line& l = r.next();
    if (l.fields.size() != 2 || l.fields[0] != kModelMagic) {
      r.fail(l.number, "not an accentdl model file");
    }
    if (r.parse_int<int>(l, l.fields[1]) != kModelFormatVersion) {
      r.fail(l.number, "unsupported model format version " + l.fields[1]);
    }
  }
  Model m;
  m.header = read_header(r);

  expect_section(r, "DIACRITICS");
  for (const Line* l = &r.next(); !is_end(*l); l = &r.next()) {
    r.expect_fields(*l, 2);
    const auto from = to_u32(l->fields[0]);
    if (from.size() != 1) r.fail(l->number, "expected a single accented character");
    try {
      m.diacritics.add(from[0], to_u32(l->fields[1]));
    } catch (const Error& e) {
      r.fail(l->number, e.what());
    }
  }

  expect_section(r, "PATTERNS");
  for (const Line* l = &r.next(); !is_end(*l); l = &r.next()) {
    if (l->fields.size() < 3 || l->fields.size() % 2 == 0) {
      r.fail(l->number, "expected key followed by pattern/count pairs");
    }
    PatternEntry entry{l->fields[0], {}};
    if (m.patterns.find(entry.key) != nullptr) {
      r.fail(l->number, "duplicate key '" + entry.key + "'");
    }
    for (std::size_t i = 1; i < l->fields.size(); i += 2) {
      const auto& pattern = l->fields[i];
      if (m.diacritics.strip(pattern) != entry.key) {
        r.fail(l->number, "pattern '" + pattern + "' does not match key '" + entry.key + "'");
      }
      if (entry.id_of(pattern)) r.fail(l->number, "duplicate pattern '" + pattern + "'");
      entry.patterns.push_back(
          {pattern, r.parse_int<std::uint64_t>(*l, l->fields[i + 1]), 0.0});
    }
    m.patterns.insert(std::move(entry));
  }

  expect_section(r, "CLASSES");
  for (const Line* l = &r.next(); !is_end(*l); l = &r.next()) {
    r.expect_fields(*l, 2);
    for (const auto& w : words(l->fields[1])) m.classes.add(l->fields[0], w);
  }
  expect_section(r, "TAGS");
  for (const Line* l = &r.next(); !is_end(*l); l = &r.next()) {
    r.expect_fields(*l, 2);
    for (const auto& t : words(l->fields[1])) m.tags.add(l->fields[0], t);
  }
  expect_section(r, "LEMMAS");
  for (const Line* l = &r.next(); !is_end(*l); l = &r.next()) {
    r.expect_fields(*l, 2);
    m.lemmas.add(l->fields[0], l->fields[1]);
  }
  expect_section(r, "ASSIGN");
  for (const Line* l = &r.next(); !is_end(*l); l = &r.next()) {
    r.expect_fields(*l, 2);
    if (!m.class_assignment.emplace(l->fields[0], l->fields[1]).second) {
      r.fail(l->number, "duplicate assignment for '" + l->fields[0] + "'");
    }
  }

  while (!r.done()) {
    const Line& head = r.next();
    r.expect_fields(head, 2);
    const std::string& name = head.fields[1];
    if (head.fields[0] == "LIST") {
      auto labels = read_named_words(r, "labels");
      auto config = read_config(r);
      auto list = read_list_body(r, head.number, name, std::move(labels), std::move(config));
      if (!m.word_lists.emplace(name, std::move(list)).second) {
        r.fail(head.number, "duplicate list '" + name + "'");
      }
    } else if (head.fields[0] == "CLASSLIST") {
      AmbiguityClassSpec spec;
      spec.name = name;
      spec.slots = read_named_words(r, "slots");
      spec.members = read_named_words(r, "members");
      auto labels = read_named_words(r, "labels");
      auto config = read_config(r);
      auto list = read_list_body(r, head.number, name, std::move(labels), std::move(config));
      if (!m.class_lists.emplace(name, ClassList{std::move(spec), std::move(list)}).second) {
        r.fail(head.number, "duplicate class list '" + name + "'");
      }
    } else {
      r.fail(head.number, "expected LIST or CLASSLIST block");
    }
  }
  m.validate();
  return m;
}

Model parse_model(std::string_view text, const std::string& source) {
  std::istringstream in{std::string(text)};
  return read_model(in, source);
}

void save_model(const std::string& path, const Model& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_model(out, model);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model '" + path + "'");
  return read_model(in, path);
}

std::string format_list(const DecisionList& list) {
  const int k = list.config().k;
  std::vector<std::string> evidence;
  std::size_t width = std::string_view("Evidence").size();
  for (const auto& e : list.entries()) {
    evidence.push_back(describe(e.feature, list.target(), k));
    width = std::max(width, length_in_code_points(evidence.back()));
  }
  auto pad = [&](const std::string& s) {
    return s + std::string(width - length_in_code_points(s), ' ');
  };
  std::ostringstream out;
  out << "LogL     " << pad("Evidence") << "    Classification\n";
  for (std::size_t i = 0; i < evidence.size(); ++i) {
    const auto& e = list.entries()[i];
    char ll[32];
    std::snprintf(ll, sizeof ll, "%-8.2f", e.log_likelihood);
    out << ll << ' ' << pad(evidence[i]) << " => "
        << list.labels()[static_cast<std::size_t>(e.classification)] << '\n';
  }
  out << "         " << pad("DEFAULT") << " => "
      << list.labels()[static_cast<std::size_t>(list.default_label())] << '\n';
  return out.str();
}

}  // namespace accentdl
