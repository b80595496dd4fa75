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

// Plain-text model files. A model file is a sequence of tab-separated
// sections, each closed by an END line:
//
//   accentdl-model<TAB>1
//   HEADER       key<TAB>value
//   DIACRITICS   accented<TAB>plain
//   PATTERNS     key<TAB>pattern<TAB>count[<TAB>pattern<TAB>count ...]
//   CLASSES      name<TAB>word word ...
//   TAGS         word<TAB>tag tag ...
//   LEMMAS       word<TAB>lemma
//   ASSIGN       key<TAB>class-list name
//   LIST<TAB>target                 one per word list
//   CLASSLIST<TAB>name              one per ambiguity-class list
//
// List blocks hold `labels`, `config` and, for class lists, `slots` and
// `members` lines, then one line per entry in rank order:
//
//   LL<TAB>kind<TAB>position<TAB>attribute<TAB>value<TAB>value2<TAB>label<TAB>counts
//
// and a closing `DEFAULT<TAB>label`. Lines starting with '#' and blank lines
// are ignored, so files can be annotated and edited by hand.

#ifndef ACCENTDL_MODEL_IO_HPP_
#define ACCENTDL_MODEL_IO_HPP_

#include <istream>
#include <ostream>
#include <string>

#include "accentdl/decision_list.hpp"
#include "accentdl/restorer.hpp"

namespace accentdl {

inline constexpr std::string_view kModelMagic = "accentdl-model";
inline constexpr int kModelFormatVersion = 1;

void write_model(std::ostream& out, const Model& model);
std::string serialize_model(const Model& model);

// Throws ParseError (with the offending line) on malformed input and
// ContractViolation when the parsed model is inconsistent.
Model read_model(std::istream& in, const std::string& source = "<model>");
Model parse_model(std::string_view text, const std::string& source = "<model>");

// Throws IoError when the file cannot be opened or written.
void save_model(const std::string& path, const Model& model);
Model load_model(const std::string& path);

// Three-column `LogL  Evidence  Classification` rendering of a list.
std::string format_list(const DecisionList& list);

}  // namespace accentdl

#endif  // ACCENTDL_MODEL_IO_HPP_
