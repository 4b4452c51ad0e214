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

#include "abr/term.hpp"

#include <sstream>
#include <utility>

namespace abr {

Term Term::constant(std::string symbol) {
  Term t;
  t.kind_ = Kind::Constant;
  t.name_ = std::move(symbol);
  return t;
}

Term Term::variable(std::string name) {
  Term t;
  t.kind_ = Kind::Variable;
  t.name_ = std::move(name);
  return t;
}

Term Term::integer(std::int64_t value) {
  Term t;
  t.kind_ = Kind::Integer;
  t.value_ = value;
  return t;
}

Term Term::list(std::vector<Term> elements) {
  Term t;
  t.kind_ = Kind::List;
  t.elements_ = std::move(elements);
  return t;
}

bool Term::is_ground() const {
  switch (kind_) {
    case Kind::Variable:
      return false;
    case Kind::List:
      for (const Term& e : elements_) {
        if (!e.is_ground()) return false;
      }
      return true;
    default:
      return true;
  }
}

void Term::collect_variables(std::set<std::string>& out) const {
  if (kind_ == Kind::Variable) {
    out.insert(name_);
  } else if (kind_ == Kind::List) {
    for (const Term& e : elements_) e.collect_variables(out);
  }
}

bool operator==(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Term::Kind::Constant:
    case Term::Kind::Variable:
      return a.name_ == b.name_;
    case Term::Kind::Integer:
      return a.value_ == b.value_;
    case Term::Kind::List:
      return a.elements_ == b.elements_;
  }
  return false;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  switch (a.kind_) {
    case Term::Kind::Constant:
    case Term::Kind::Variable:
      return a.name_ <=> b.name_;
    case Term::Kind::Integer:
      return a.value_ <=> b.value_;
    case Term::Kind::List: {
      const auto& x = a.elements_;
      const auto& y = b.elements_;
      for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (auto c = x[i] <=> y[i]; c != 0) return c;
      }
      return x.size() <=> y.size();
    }
  }
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Constant:
    case Term::Kind::Variable:
      return os << t.name();
    case Term::Kind::Integer:
      return os << t.value();
    case Term::Kind::List: {
      os << '[';
      bool first = true;
      for (const Term& e : t.elements()) {
        if (!first) os << ", ";
        first = false;
        os << e;
      }
      return os << ']';
    }
  }
  return os;
}

std::string to_string(const Term& t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

std::string to_string(const PredicateKey& key) {
  return key.name + "/" + std::to_string(key.arity);
}

bool Atom::is_ground() const {
  for (const Term& a : args) {
    if (!a.is_ground()) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (auto c = a.predicate <=> b.predicate; c != 0) return c;
  for (std::size_t i = 0; i < a.args.size() && i < b.args.size(); ++i) {
    if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
  }
  return a.args.size() <=> b.args.size();
}

std::ostream& operator<<(std::ostream& os, const Atom& a) {
  os << a.predicate;
  if (a.args.empty()) return os;
  os << '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) os << ", ";
    os << a.args[i];
  }
  return os << ')';
}

std::string to_string(const Atom& a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
  if (auto c = a.atom <=> b.atom; c != 0) return c;
  return a.positive <=> b.positive;
}

Literal complement(const Literal& l) { return Literal{l.atom, !l.positive}; }

std::ostream& operator<<(std::ostream& os, const Literal& l) {
  if (!l.positive) os << "neg ";
  return os << l.atom;
}

std::string to_string(const Literal& l) {
  std::ostringstream os;
  os << l;
  return os.str();
}

std::string_view to_string(Layer layer) {
  switch (layer) {
    case Layer::Technical:
      return "technical";
    case Layer::Operational:
      return "operational";
    case Layer::Strategic:
      return "strategic";
    case Layer::Background:
      return "background";
  }
  return "technical";
}

std::optional<Layer> parse_layer(std::string_view text) {
  if (text == "technical") return Layer::Technical;
  if (text == "operational") return Layer::Operational;
  if (text == "strategic") return Layer::Strategic;
  if (text == "background") return Layer::Background;
  return std::nullopt;
}

bool is_reserved_predicate(std::string_view name) {
  return name == kDateApplicable;
}

BodyCondition classify_condition(Literal literal) {
  if (literal.positive && literal.atom.predicate == kDateApplicable &&
      literal.atom.args.size() == 2) {
    return DateApplicable{std::move(literal.atom.args[0]),
                          std::move(literal.atom.args[1])};
  }
  return literal;
}

std::ostream& operator<<(std::ostream& os, const BodyCondition& c) {
  if (const auto* l = std::get_if<Literal>(&c)) return os << *l;
  if (const auto* ne = std::get_if<NotEqual>(&c)) {
    return os << ne->left << " != " << ne->right;
  }
  const auto& d = std::get<DateApplicable>(c);
  return os << kDateApplicable << '(' << d.attack_date << ", " << d.motive_date
            << ')';
}

std::string to_string(const BodyCondition& c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

void collect_variables(const Literal& l, std::set<std::string>& out) {
  for (const Term& a : l.atom.args) a.collect_variables(out);
}

void collect_variables(const BodyCondition& c, std::set<std::string>& out) {
  if (const auto* l = std::get_if<Literal>(&c)) {
    collect_variables(*l, out);
  } else if (const auto* ne = std::get_if<NotEqual>(&c)) {
    ne->left.collect_variables(out);
    ne->right.collect_variables(out);
  } else {
    const auto& d = std::get<DateApplicable>(c);
    d.attack_date.collect_variables(out);
    d.motive_date.collect_variables(out);
  }
}

}  // namespace abr
