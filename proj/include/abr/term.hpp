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

// Logical vocabulary: terms, atoms, literals, layers and body conditions.

#ifndef ABR_TERM_HPP_
#define ABR_TERM_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace abr {

// A first-order term. Constants start lowercase, variables uppercase;
// lists nest arbitrarily (dates are two-element integer lists).
class Term {
 public:
  enum class Kind : std::uint8_t { Constant, Variable, Integer, List };

  Term() = default;

  static Term constant(std::string symbol);
  static Term variable(std::string name);
  static Term integer(std::int64_t value);
  static Term list(std::vector<Term> elements);

  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  bool is_variable() const { return kind_ == Kind::Variable; }
  bool is_integer() const { return kind_ == Kind::Integer; }
  bool is_list() const { return kind_ == Kind::List; }

  // Symbol for constants, name for variables; empty otherwise.
  const std::string& name() const { return name_; }
  std::int64_t value() const { return value_; }
  const std::vector<Term>& elements() const { return elements_; }

  bool is_ground() const;
  void collect_variables(std::set<std::string>& out) const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  Kind kind_ = Kind::Constant;
  std::string name_;
  std::int64_t value_ = 0;
  std::vector<Term> elements_;
};

std::ostream& operator<<(std::ostream& os, const Term& t);
std::string to_string(const Term& t);

// Predicate identity is (name, arity).
struct PredicateKey {
  std::string name;
  std::size_t arity = 0;

  friend auto operator<=>(const PredicateKey&, const PredicateKey&) = default;
  friend bool operator==(const PredicateKey&, const PredicateKey&) = default;
};

std::string to_string(const PredicateKey& key);

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  PredicateKey key() const { return {predicate, args.size()}; }
  bool is_ground() const;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
};

std::ostream& operator<<(std::ostream& os, const Atom& a);
std::string to_string(const Atom& a);

// Explicitly negated or plain atom. There is no negation-as-failure.
struct Literal {
  Atom atom;
  bool positive = true;

  bool is_ground() const { return atom.is_ground(); }
  const std::string& predicate() const { return atom.predicate; }
  std::size_t arity() const { return atom.args.size(); }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b);
};

Literal complement(const Literal& l);
std::ostream& operator<<(std::ostream& os, const Literal& l);
std::string to_string(const Literal& l);

enum class Layer { Technical, Operational, Strategic, Background };

std::string_view to_string(Layer layer);
std::optional<Layer> parse_layer(std::string_view text);

// Built-in and literal conditions allowed in rule bodies.
struct NotEqual {
  Term left;
  Term right;
  friend bool operator==(const NotEqual&, const NotEqual&) = default;
};

struct DateApplicable {
  Term attack_date;
  Term motive_date;
  friend bool operator==(const DateApplicable&, const DateApplicable&) = default;
};

using BodyCondition = std::variant<Literal, NotEqual, DateApplicable>;

inline constexpr std::string_view kDateApplicable = "dateApplicable";

// Names a body literal may not use as a rule head.
bool is_reserved_predicate(std::string_view name);

inline const Literal* as_literal(const BodyCondition& c) {
  return std::get_if<Literal>(&c);
}
inline bool is_builtin(const BodyCondition& c) {
  return !std::holds_alternative<Literal>(c);
}

// Turns `dateApplicable(A, B)` into the built-in; anything else stays a
// literal.
BodyCondition classify_condition(Literal literal);

std::ostream& operator<<(std::ostream& os, const BodyCondition& c);
std::string to_string(const BodyCondition& c);
void collect_variables(const BodyCondition& c, std::set<std::string>& out);
void collect_variables(const Literal& l, std::set<std::string>& out);

}  // namespace abr

#endif  // ABR_TERM_HPP_
