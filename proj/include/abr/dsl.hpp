// Copyright 2026 The ABR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The .abr rule language: parser, canonical printer and KB loading.
//
//   rule t_4 [technical]: reqHighRes(Att) <- highLevelSkill(Att).
//   prefer p_1: str_2 > str_1.
//   fact attackPeriod(usBHack, [2012, 9]).
//   abducible specificTarget/1.

#ifndef ABR_DSL_HPP_
#define ABR_DSL_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "abr/knowledge_base.hpp"
#include "abr/term.hpp"

namespace abr {

struct FactStmt {
  std::optional<std::string> id;
  Literal literal;

  friend bool operator==(const FactStmt&, const FactStmt&) = default;
};

using Statement =
    std::variant<ArgumentRule, PreferenceRule, FactStmt, AbducibleDecl>;

// 1-based; `end_*` is the position just past the closing period.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t end_line = 1;
  std::size_t end_column = 1;
};

struct SourceProgram {
  std::vector<Statement> statements;
  std::vector<SourceSpan> spans;  // parallel to statements

  // Structural: spans are ignored.
  friend bool operator==(const SourceProgram& a, const SourceProgram& b) {
    return a.statements == b.statements;
  }
};

struct ParseError {
  std::size_t line = 1;
  std::size_t column = 1;
  std::string expected;
  std::string lexeme;  // empty at end of input

  std::string message() const;
};

struct ProgramParse {
  SourceProgram program;
  std::vector<ParseError> errors;

  bool ok() const { return errors.empty(); }
};

// Malformed statements are skipped up to the next "." and reported; the
// remaining statements are still returned.
ProgramParse parse_program(std::string_view text);

struct QueryParse {
  std::optional<Literal> literal;
  std::optional<ParseError> error;
};

// A single literal with no trailing period.
QueryParse parse_query(std::string_view text);

struct TermParse {
  std::optional<Term> term;
  std::optional<ParseError> error;
};

struct ConditionParse {
  std::optional<BodyCondition> condition;
  std::optional<ParseError> error;
};

TermParse parse_term(std::string_view text);
// A body condition: literal, built-in or `T1 != T2`.
ConditionParse parse_condition(std::string_view text);

struct FactParse {
  std::optional<FactStmt> fact;
  std::optional<ParseError> error;
};

// The body of a fact statement, `(id :)? literal`, with an optional leading
// `fact` keyword and trailing period. Error positions refer to `text`.
FactParse parse_fact(std::string_view text);

// One statement per line, ", " between arguments and conditions.
std::string render_program(const SourceProgram& program);
std::string render_statement(const Statement& stmt);

// Adds every statement to `base`. Facts get layer technical, or background
// when `provenance` is Background. Throws KbError.
KnowledgeBase load_program(const SourceProgram& program,
                           KnowledgeBase base = {},
                           Provenance provenance = Provenance::Evidence);

}  // namespace abr

#endif  // ABR_DSL_HPP_
