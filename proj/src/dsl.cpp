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

#include "abr/dsl.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <utility>

namespace abr {

std::string ParseError::message() const {
  std::ostringstream os;
  os << line << ':' << column << ": expected " << expected << ", found ";
  if (lexeme.empty()) {
    os << "end of input";
  } else {
    os << '\'' << lexeme << '\'';
  }
  return os.str();
}

namespace {

enum class Tok {
  Ident,
  Var,
  Int,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Dot,
  Colon,
  Arrow,
  NotEq,
  Greater,
  Slash,
  Invalid,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t line = 1;
  std::size_t col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::Invalid, {}, line, col};
    std::size_t len = 1;
    if (std::islower(static_cast<unsigned char>(c)) ||
        std::isupper(static_cast<unsigned char>(c))) {
      while (i + len < src.size() && is_word_char(src[i + len])) ++len;
      t.kind = std::isupper(static_cast<unsigned char>(c)) ? Tok::Var
                                                           : Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < src.size() &&
                std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      while (i + len < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[i + len]))) {
        ++len;
      }
      t.kind = Tok::Int;
    } else if (src.substr(i, 2) == "<-") {
      t.kind = Tok::Arrow;
      len = 2;
    } else if (src.substr(i, 2) == "!=") {
      t.kind = Tok::NotEq;
      len = 2;
    } else {
      switch (c) {
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '[': t.kind = Tok::LBracket; break;
        case ']': t.kind = Tok::RBracket; break;
        case ',': t.kind = Tok::Comma; break;
        case '.': t.kind = Tok::Dot; break;
        case ':': t.kind = Tok::Colon; break;
        case '>': t.kind = Tok::Greater; break;
        case '/': t.kind = Tok::Slash; break;
        default: break;
      }
    }
    t.text = std::string(src.substr(i, len));
    advance(len);
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::End, {}, line, col});
  return out;
}

struct Failure {
  ParseError error;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::End; }
  std::size_t position() const { return pos_; }

  [[noreturn]] void fail(std::string expected) const {
    const Token& t = peek();
    throw Failure{ParseError{t.line, t.column, std::move(expected), t.text}};
  }

  const Token& expect(Tok kind, std::string_view what) {
    if (peek().kind != kind) fail(std::string(what));
    return toks_[pos_++];
  }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  // Skips past the next "." (or to the end).
  void recover() {
    while (!at_end()) {
      if (toks_[pos_++].kind == Tok::Dot) return;
    }
  }

  Term term() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Var:
        ++pos_;
        return Term::variable(t.text);
      case Tok::Ident:
        ++pos_;
        return Term::constant(t.text);
      case Tok::Int: {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(t.text.data(),
                                       t.text.data() + t.text.size(), v);
        if (ec != std::errc()) fail("integer in range");
        ++pos_;
        return Term::integer(v);
      }
      case Tok::LBracket: {
        ++pos_;
        std::vector<Term> elements;
        if (accept(Tok::RBracket)) return Term::list({});
        elements.push_back(term());
        while (accept(Tok::Comma)) elements.push_back(term());
        expect(Tok::RBracket, "',' or ']'");
        return Term::list(std::move(elements));
      }
      default:
        fail("term");
    }
  }

  Atom atom() {
    Atom a;
    a.predicate = expect(Tok::Ident, "predicate name").text;
    if (accept(Tok::LParen)) {
      a.args.push_back(term());
      while (accept(Tok::Comma)) a.args.push_back(term());
      expect(Tok::RParen, "',' or ')'");
    }
    return a;
  }

  Literal literal() {
    if (peek().kind == Tok::Ident && peek().text == "neg" &&
        peek(1).kind == Tok::Ident) {
      ++pos_;
      return Literal{atom(), false};
    }
    if (peek().kind != Tok::Ident) fail("literal");
    return Literal{atom(), true};
  }

  BodyCondition condition() {
    const Tok k = peek().kind;
    const bool term_start = k == Tok::Var || k == Tok::Int ||
                            k == Tok::LBracket ||
                            (k == Tok::Ident && peek(1).kind == Tok::NotEq);
    if (term_start) {
      Term left = term();
      expect(Tok::NotEq, "'!='");
      Term right = term();
      return NotEqual{std::move(left), std::move(right)};
    }
    if (k != Tok::Ident) fail("condition");
    return classify_condition(literal());
  }

  std::vector<BodyCondition> body() {
    std::vector<BodyCondition> out;
    if (!accept(Tok::Arrow)) return out;
    out.push_back(condition());
    while (accept(Tok::Comma)) out.push_back(condition());
    return out;
  }

  Statement statement() {
    const Token& head = peek();
    if (head.kind != Tok::Ident) {
      fail("'rule', 'prefer', 'fact' or 'abducible'");
    }
    if (head.text == "rule") {
      ++pos_;
      ArgumentRule r;
      r.id = expect(Tok::Ident, "rule label").text;
      expect(Tok::LBracket, "'['");
      const Token& layer = peek();
      auto parsed = layer.kind == Tok::Ident ? parse_layer(layer.text)
                                             : std::nullopt;
      if (!parsed) fail("layer");
      ++pos_;
      r.layer = *parsed;
      expect(Tok::RBracket, "']'");
      expect(Tok::Colon, "':'");
      r.head = literal();
      r.body = body();
      expect(Tok::Dot, "'.'");
      return r;
    }
    if (head.text == "prefer") {
      ++pos_;
      PreferenceRule p;
      p.id = expect(Tok::Ident, "preference label").text;
      expect(Tok::Colon, "':'");
      p.higher = expect(Tok::Ident, "rule label").text;
      expect(Tok::Greater, "'>'");
      p.lower = expect(Tok::Ident, "rule label").text;
      p.body = body();
      expect(Tok::Dot, "'.'");
      return p;
    }
    if (head.text == "fact") {
      ++pos_;
      FactStmt f;
      if (peek().kind == Tok::Ident && peek(1).kind == Tok::Colon) {
        f.id = peek().text;
        pos_ += 2;
      }
      f.literal = literal();
      expect(Tok::Dot, "'.'");
      return f;
    }
    if (head.text == "abducible") {
      ++pos_;
      AbducibleDecl a;
      a.predicate = expect(Tok::Ident, "predicate name").text;
      expect(Tok::Slash, "'/'");
      const Token& n = expect(Tok::Int, "arity");
      if (n.text.front() == '-') {
        --pos_;
        fail("non-negative arity");
      }
      a.arity = std::stoul(n.text);
      expect(Tok::Dot, "'.'");
      return a;
    }
    fail("'rule', 'prefer', 'fact' or 'abducible'");
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ProgramParse parse_program(std::string_view text) {
  ProgramParse result;
  std::vector<Token> tokens = lex(text);
  Parser p(tokens);
  while (!p.at_end()) {
    const Token& start = p.peek();
    SourceSpan span{start.line, start.column, start.line, start.column};
    try {
      Statement stmt = p.statement();
      const Token& last = tokens[p.position() - 1];
      span.end_line = last.line;
      span.end_column = last.column + last.text.size();
      result.program.statements.push_back(std::move(stmt));
      result.program.spans.push_back(span);
    } catch (const Failure& f) {
      result.errors.push_back(f.error);
      p.recover();
    }
  }
  return result;
}

QueryParse parse_query(std::string_view text) {
  QueryParse result;
  Parser p(lex(text));
  try {
    Literal l = p.literal();
    if (!p.at_end()) p.fail("end of query");
    result.literal = std::move(l);
  } catch (const Failure& f) {
    result.error = f.error;
  }
  return result;
}

TermParse parse_term(std::string_view text) {
  TermParse result;
  Parser p(lex(text));
  try {
    Term t = p.term();
    if (!p.at_end()) p.fail("end of term");
    result.term = std::move(t);
  } catch (const Failure& f) {
    result.error = f.error;
  }
  return result;
}

ConditionParse parse_condition(std::string_view text) {
  ConditionParse result;
  Parser p(lex(text));
  try {
    BodyCondition c = p.condition();
    if (!p.at_end()) p.fail("end of condition");
    result.condition = std::move(c);
  } catch (const Failure& f) {
    result.error = f.error;
  }
  return result;
}

FactParse parse_fact(std::string_view text) {
  FactParse result;
  Parser p(lex(text));
  try {
    if (p.peek().kind == Tok::Ident && p.peek().text == "fact" &&
        p.peek(1).kind == Tok::Ident) {
      p.expect(Tok::Ident, "'fact'");
    }
    FactStmt f;
    if (p.peek().kind == Tok::Ident && p.peek(1).kind == Tok::Colon) {
      f.id = p.expect(Tok::Ident, "fact label").text;
      p.expect(Tok::Colon, "':'");
    }
    f.literal = p.literal();
    p.accept(Tok::Dot);
    if (!p.at_end()) p.fail("end of fact");
    result.fact = std::move(f);
  } catch (const Failure& f) {
    result.error = f.error;
  }
  return result;
}

namespace {

void render_body(std::ostream& os, const std::vector<BodyCondition>& body) {
  if (body.empty()) return;
  os << " <- ";
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) os << ", ";
    os << body[i];
  }
}

}  // namespace

std::string render_statement(const Statement& stmt) {
  std::ostringstream os;
  if (const auto* r = std::get_if<ArgumentRule>(&stmt)) {
    os << "rule " << r->id << " [" << to_string(r->layer) << "]: " << r->head;
    render_body(os, r->body);
  } else if (const auto* p = std::get_if<PreferenceRule>(&stmt)) {
    os << "prefer " << p->id << ": " << p->higher << " > " << p->lower;
    render_body(os, p->body);
  } else if (const auto* f = std::get_if<FactStmt>(&stmt)) {
    os << "fact ";
    if (f->id) os << *f->id << ": ";
    os << f->literal;
  } else {
    const auto& a = std::get<AbducibleDecl>(stmt);
    os << "abducible " << a.predicate << '/' << a.arity;
  }
  os << '.';
  return os.str();
}

std::string render_program(const SourceProgram& program) {
  std::string out;
  for (const Statement& s : program.statements) {
    out += render_statement(s);
    out += '\n';
  }
  return out;
}

KnowledgeBase load_program(const SourceProgram& program, KnowledgeBase base,
                           Provenance provenance) {
  const Layer fact_layer =
      provenance == Provenance::Background ? Layer::Background
                                           : Layer::Technical;
  for (const Statement& s : program.statements) {
    if (const auto* r = std::get_if<ArgumentRule>(&s)) {
      base = std::move(base).with_rule(*r);
    } else if (const auto* p = std::get_if<PreferenceRule>(&s)) {
      base = std::move(base).with_preference(*p);
    } else if (const auto* f = std::get_if<FactStmt>(&s)) {
      base = std::move(base).with_fact(f->literal, fact_layer, provenance,
                                       f->id);
    } else {
      base = std::move(base).with_abducible(std::get<AbducibleDecl>(s));
    }
  }
  return base;
}

}  // namespace abr
