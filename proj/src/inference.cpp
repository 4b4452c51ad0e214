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

#include "abr/inference.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>
#include <utility>

namespace abr {

// --- substitutions ----------------------------------------------------------

const Term* Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& var, Term value) {
  map_.insert_or_assign(var, std::move(value));
}

Term Substitution::resolve(const Term& t) const {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      const Term* bound = lookup(t.name());
      return bound ? resolve(*bound) : t;
    }
    case Term::Kind::List: {
      if (t.is_ground()) return t;
      std::vector<Term> elements;
      elements.reserve(t.elements().size());
      for (const Term& e : t.elements()) elements.push_back(resolve(e));
      return Term::list(std::move(elements));
    }
    default:
      return t;
  }
}

Atom Substitution::apply(const Atom& a) const {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(resolve(t));
  return out;
}

Literal Substitution::apply(const Literal& l) const {
  return Literal{apply(l.atom), l.positive};
}

BodyCondition Substitution::apply(const BodyCondition& c) const {
  if (const auto* l = std::get_if<Literal>(&c)) return apply(*l);
  if (const auto* ne = std::get_if<NotEqual>(&c)) {
    return NotEqual{resolve(ne->left), resolve(ne->right)};
  }
  const auto& d = std::get<DateApplicable>(c);
  return DateApplicable{resolve(d.attack_date), resolve(d.motive_date)};
}

Substitution Substitution::restricted_to(
    const std::set<std::string>& vars) const {
  Substitution out;
  for (const std::string& v : vars) {
    if (const Term* t = lookup(v)) out.bind(v, resolve(*t));
  }
  return out;
}

std::string to_string(const Substitution& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [var, value] : s.bindings()) {
    if (!first) os << ", ";
    first = false;
    os << var << " = " << value;
  }
  os << '}';
  return os.str();
}

// --- unification ------------------------------------------------------------

namespace {

const Term& walk(const Term& t, const Substitution& s) {
  const Term* cur = &t;
  while (cur->is_variable()) {
    const Term* next = s.lookup(cur->name());
    if (!next) break;
    cur = next;
  }
  return *cur;
}

bool occurs(const std::string& var, const Term& t, const Substitution& s) {
  const Term& w = walk(t, s);
  if (w.is_variable()) return w.name() == var;
  if (w.is_list()) {
    for (const Term& e : w.elements()) {
      if (occurs(var, e, s)) return true;
    }
  }
  return false;
}

bool unify_into(const Term& a, const Term& b, Substitution& s) {
  const Term& x = walk(a, s);
  const Term& y = walk(b, s);
  if (x.is_variable() && y.is_variable() && x.name() == y.name()) return true;
  if (x.is_variable()) {
    if (occurs(x.name(), y, s)) return false;
    s.bind(x.name(), y);
    return true;
  }
  if (y.is_variable()) {
    if (occurs(y.name(), x, s)) return false;
    s.bind(y.name(), x);
    return true;
  }
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Term::Kind::Constant:
      return x.name() == y.name();
    case Term::Kind::Integer:
      return x.value() == y.value();
    case Term::Kind::List: {
      if (x.elements().size() != y.elements().size()) return false;
      // Copy: binding may invalidate references into `s`.
      const std::vector<Term> xs = x.elements();
      const std::vector<Term> ys = y.elements();
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!unify_into(xs[i], ys[i], s)) return false;
      }
      return true;
    }
    case Term::Kind::Variable:
      break;
  }
  return false;
}

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b,
                                  Substitution s) {
  if (!unify_into(a, b, s)) return std::nullopt;
  return s;
}

std::optional<Substitution> unify(const Atom& a, const Atom& b,
                                  Substitution s) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size()) {
    return std::nullopt;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!unify_into(a.args[i], b.args[i], s)) return std::nullopt;
  }
  return s;
}

std::optional<Substitution> unify(const Literal& a, const Literal& b,
                                  Substitution s) {
  if (a.positive != b.positive) return std::nullopt;
  return unify(a.atom, b.atom, std::move(s));
}

namespace {

bool variant_terms(const Term& a, const Term& b,
                   std::map<std::string, std::string>& ab,
                   std::map<std::string, std::string>& ba) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Variable: {
      auto [i, fresh_a] = ab.emplace(a.name(), b.name());
      auto [j, fresh_b] = ba.emplace(b.name(), a.name());
      return i->second == b.name() && j->second == a.name();
    }
    case Term::Kind::Constant:
      return a.name() == b.name();
    case Term::Kind::Integer:
      return a.value() == b.value();
    case Term::Kind::List:
      if (a.elements().size() != b.elements().size()) return false;
      for (std::size_t k = 0; k < a.elements().size(); ++k) {
        if (!variant_terms(a.elements()[k], b.elements()[k], ab, ba)) {
          return false;
        }
      }
      return true;
  }
  return false;
}

}  // namespace

bool is_variant(const Literal& a, const Literal& b) {
  if (a.positive != b.positive || a.atom.predicate != b.atom.predicate ||
      a.atom.args.size() != b.atom.args.size()) {
    return false;
  }
  std::map<std::string, std::string> ab;
  std::map<std::string, std::string> ba;
  for (std::size_t i = 0; i < a.atom.args.size(); ++i) {
    if (!variant_terms(a.atom.args[i], b.atom.args[i], ab, ba)) return false;
  }
  return true;
}

// --- built-ins --------------------------------------------------------------

namespace {

std::optional<std::int64_t> months(const Term& date) {
  if (!date.is_list() || date.elements().size() != 2) return std::nullopt;
  const Term& y = date.elements()[0];
  const Term& m = date.elements()[1];
  if (!y.is_integer() || !m.is_integer()) return std::nullopt;
  return y.value() * 12 + m.value();
}

}  // namespace

BuiltinResult eval_builtin(const BodyCondition& cond) {
  if (const auto* ne = std::get_if<NotEqual>(&cond)) {
    if (!ne->left.is_ground() || !ne->right.is_ground()) {
      return BuiltinResult::InstantiationError;
    }
    return ne->left != ne->right ? BuiltinResult::True : BuiltinResult::False;
  }
  if (const auto* d = std::get_if<DateApplicable>(&cond)) {
    if (!d->attack_date.is_ground() || !d->motive_date.is_ground()) {
      return BuiltinResult::InstantiationError;
    }
    auto a = months(d->attack_date);
    auto m = months(d->motive_date);
    if (!a || !m) return BuiltinResult::False;
    const std::int64_t diff = *a - *m;
    return diff >= 0 && diff < 12 ? BuiltinResult::True : BuiltinResult::False;
  }
  return BuiltinResult::False;
}

void Diagnostics::merge(const Diagnostics& other) {
  depth_exceeded += other.depth_exceeded;
  step_limit_hit = step_limit_hit || other.step_limit_hit;
  for (const std::string& e : other.instantiation_errors) {
    if (std::find(instantiation_errors.begin(), instantiation_errors.end(),
                  e) == instantiation_errors.end()) {
      instantiation_errors.push_back(e);
    }
  }
}

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Fact:
      return "fact";
    case NodeKind::Rule:
      return "rule";
    case NodeKind::Hypothesis:
      return "hypothesis";
    case NodeKind::Builtin:
      return "builtin";
    case NodeKind::Missing:
      return "missing";
  }
  return "fact";
}

// --- argument trees ---------------------------------------------------------

ArgumentTree::ArgumentTree(NodePtr root) : root_(std::move(root)) {
  struct Walk {
    ArgumentTree& tree;
    void operator()(const ArgumentNode& n, int depth) {
      ++tree.node_count_;
      if (n.kind == NodeKind::Builtin) return;
      tree.depth_ = std::max(tree.depth_, depth);
      if (n.kind == NodeKind::Fact || n.kind == NodeKind::Rule) {
        tree.support_.insert(n.label);
      } else if (n.kind == NodeKind::Hypothesis) {
        tree.hypotheses_.insert(n.conclusion);
      }
      for (const NodePtr& c : n.children) (*this)(*c, depth + 1);
    }
  };
  if (root_) Walk{*this}(*root_, 1);
}

std::vector<const ArgumentNode*> ArgumentTree::nodes() const {
  std::vector<const ArgumentNode*> out;
  std::vector<const ArgumentNode*> stack;
  if (root_) stack.push_back(root_.get());
  while (!stack.empty()) {
    const ArgumentNode* n = stack.back();
    stack.pop_back();
    out.push_back(n);
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) {
      stack.push_back(it->get());
    }
  }
  return out;
}

ArgumentKey key_of(const ArgumentTree& tree) {
  return ArgumentKey{tree.conclusion(), tree.support(), tree.hypotheses()};
}

// --- solver -----------------------------------------------------------------

namespace {

struct Proto;
using ProtoPtr = std::shared_ptr<const Proto>;

// Tree node built during search; terms are resolved once the derivation
// completes.
struct Proto {
  NodeKind kind = NodeKind::Fact;
  Literal literal;
  std::optional<BodyCondition> condition;
  std::string label;
  std::vector<std::pair<std::string, Term>> renaming;
  std::vector<ProtoPtr> children;
};

struct State {
  Substitution subst;
  std::optional<Literal> gap;
  std::string gap_rule;
  std::vector<BodyCondition> pending;
};

using Cont = std::function<bool(const State&, ProtoPtr)>;

struct Ancestor {
  const Literal* goal;
  const Ancestor* parent;
};

NodePtr finalize(const Proto& p, const Substitution& s) {
  auto node = std::make_shared<ArgumentNode>();
  node->kind = p.kind;
  node->label = p.label;
  if (p.kind == NodeKind::Builtin) {
    node->condition = s.apply(*p.condition);
  } else {
    node->conclusion = s.apply(p.literal);
  }
  for (const auto& [var, renamed] : p.renaming) {
    node->bindings.bind(var, s.resolve(renamed));
  }
  node->children.reserve(p.children.size());
  for (const ProtoPtr& c : p.children) {
    node->children.push_back(finalize(*c, s));
  }
  return node;
}

class Solver {
 public:
  Solver(const KnowledgeBase& kb, const DeriveConfig& config, bool gaps)
      : kb_(kb), config_(config), gaps_(gaps) {}

  bool solve(const Literal& goal_in, int depth, const Ancestor* ancestors,
             const std::string* parent_rule, const State& state,
             const Cont& k);

  Diagnostics diagnostics;

 private:
  bool solve_body(const ArgumentRule& rule, std::size_t i, int depth,
                  const Ancestor* ancestors, const State& state,
                  std::vector<ProtoPtr> children, const Cont& k);
  ArgumentRule rename(const ArgumentRule& rule,
                      std::vector<std::pair<std::string, Term>>& renaming);
  bool complement_derivable(const Literal& goal);
  void instantiation_error(std::string message);

  const KnowledgeBase& kb_;
  DeriveConfig config_;
  bool gaps_;
  bool stopped_ = false;
  std::size_t steps_ = 0;
  std::size_t fresh_ = 0;
  std::map<Literal, bool> complement_cache_;
};

Term rename_term(const Term& t, const std::string& suffix) {
  if (t.is_variable()) return Term::variable(t.name() + suffix);
  if (t.is_list() && !t.is_ground()) {
    std::vector<Term> elements;
    for (const Term& e : t.elements()) elements.push_back(rename_term(e, suffix));
    return Term::list(std::move(elements));
  }
  return t;
}

Literal rename_literal(const Literal& l, const std::string& suffix) {
  Literal out{Atom{l.atom.predicate, {}}, l.positive};
  for (const Term& t : l.atom.args) out.atom.args.push_back(rename_term(t, suffix));
  return out;
}

ArgumentRule Solver::rename(
    const ArgumentRule& rule,
    std::vector<std::pair<std::string, Term>>& renaming) {
  const std::string suffix = "#" + std::to_string(++fresh_);
  std::set<std::string> vars;
  collect_variables(rule.head, vars);
  for (const BodyCondition& c : rule.body) collect_variables(c, vars);
  for (const std::string& v : vars) {
    renaming.emplace_back(v, Term::variable(v + suffix));
  }
  ArgumentRule out{rule.id, rule.layer, rename_literal(rule.head, suffix), {}};
  out.body.reserve(rule.body.size());
  for (const BodyCondition& c : rule.body) {
    if (const auto* l = std::get_if<Literal>(&c)) {
      out.body.emplace_back(rename_literal(*l, suffix));
    } else if (const auto* ne = std::get_if<NotEqual>(&c)) {
      out.body.emplace_back(
          NotEqual{rename_term(ne->left, suffix), rename_term(ne->right, suffix)});
    } else {
      const auto& d = std::get<DateApplicable>(c);
      out.body.emplace_back(DateApplicable{rename_term(d.attack_date, suffix),
                                           rename_term(d.motive_date, suffix)});
    }
  }
  return out;
}

void Solver::instantiation_error(std::string message) {
  auto& errs = diagnostics.instantiation_errors;
  if (std::find(errs.begin(), errs.end(), message) == errs.end()) {
    errs.push_back(std::move(message));
  }
}

bool Solver::complement_derivable(const Literal& goal) {
  auto it = complement_cache_.find(goal);
  if (it != complement_cache_.end()) return it->second;
  DeriveConfig strict = config_;
  strict.abduction = false;
  const bool result = is_derivable(kb_, complement(goal), strict);
  complement_cache_.emplace(goal, result);
  return result;
}

bool Solver::solve(const Literal& goal_in, int depth, const Ancestor* ancestors,
                   const std::string* parent_rule, const State& state,
                   const Cont& k) {
  if (stopped_) return false;
  if (depth > config_.max_depth) {
    ++diagnostics.depth_exceeded;
    return true;
  }
  const Literal goal = state.subst.apply(goal_in);
  for (const Ancestor* a = ancestors; a; a = a->parent) {
    if (is_variant(goal, state.subst.apply(*a->goal))) return true;
  }
  if (++steps_ > config_.max_steps) {
    diagnostics.step_limit_hit = true;
    stopped_ = true;
    return false;
  }
  const Ancestor self{&goal, ancestors};
  bool proved = false;

  for (std::size_t idx : kb_.rules_for(goal)) {
    std::vector<std::pair<std::string, Term>> renaming;
    ArgumentRule rule = rename(kb_.rules()[idx], renaming);
    auto s = unify(rule.head, goal, state.subst);
    if (!s) continue;
    State next = state;
    next.subst = std::move(*s);
    const Literal head = rule.head;
    Cont done = [&](const State& after, ProtoPtr body) {
      if (after.gap.has_value() == state.gap.has_value()) proved = true;
      auto node = std::make_shared<Proto>();
      node->kind = NodeKind::Rule;
      node->literal = head;
      node->label = rule.id;
      node->renaming = renaming;
      node->children = body->children;
      return k(after, node);
    };
    if (!solve_body(rule, 0, depth, &self, next, {}, done)) return false;
  }

  for (std::size_t idx : kb_.facts_for(goal)) {
    const Fact& fact = kb_.facts()[idx];
    auto s = unify(fact.literal, goal, state.subst);
    if (!s) continue;
    State next = state;
    next.subst = std::move(*s);
    proved = true;
    auto node = std::make_shared<Proto>();
    node->kind = NodeKind::Fact;
    node->literal = fact.literal;
    node->label = fact.id;
    if (!k(next, node)) return false;
  }

  const bool abducible = goal.positive && kb_.is_abducible(goal.atom.key());
  if (config_.abduction && abducible && !proved) {
    if (!goal.is_ground()) {
      instantiation_error("cannot hypothesize non-ground " + to_string(goal));
    } else if (!complement_derivable(goal)) {
      auto node = std::make_shared<Proto>();
      node->kind = NodeKind::Hypothesis;
      node->literal = goal;
      node->label = std::string(kHypothesisLabel);
      if (!k(state, node)) return false;
    }
  }

  if (gaps_ && parent_rule && !state.gap && !abducible) {
    State next = state;
    next.gap = goal;
    next.gap_rule = *parent_rule;
    auto node = std::make_shared<Proto>();
    node->kind = NodeKind::Missing;
    node->literal = goal;
    node->label = "missing";
    if (!k(next, node)) return false;
  }
  return true;
}

bool Solver::solve_body(const ArgumentRule& rule, std::size_t i, int depth,
                        const Ancestor* ancestors, const State& state,
                        std::vector<ProtoPtr> children, const Cont& k) {
  if (stopped_) return false;
  if (i == rule.body.size()) {
    auto holder = std::make_shared<Proto>();
    holder->children = std::move(children);
    return k(state, holder);
  }
  const BodyCondition& cond = rule.body[i];
  if (const Literal* lit = as_literal(cond)) {
    Cont next = [&, i, children](const State& after, ProtoPtr child) {
      std::vector<ProtoPtr> extended = children;
      extended.push_back(std::move(child));
      return solve_body(rule, i + 1, depth, ancestors, after,
                        std::move(extended), k);
    };
    return solve(*lit, depth + 1, ancestors, &rule.id, state, next);
  }

  auto node = std::make_shared<Proto>();
  node->kind = NodeKind::Builtin;
  node->condition = cond;
  node->label = "builtin";
  const BodyCondition applied = state.subst.apply(cond);
  switch (eval_builtin(applied)) {
    case BuiltinResult::False:
      return true;
    case BuiltinResult::True:
      children.push_back(node);
      return solve_body(rule, i + 1, depth, ancestors, state,
                        std::move(children), k);
    case BuiltinResult::InstantiationError:
      if (state.gap) {
        State deferred = state;
        deferred.pending.push_back(cond);
        children.push_back(node);
        return solve_body(rule, i + 1, depth, ancestors, deferred,
                          std::move(children), k);
      }
      instantiation_error(to_string(applied) + " is not ground in rule " +
                          rule.id);
      return true;
  }
  return true;
}

std::set<std::string> variables_of(const Literal& l) {
  std::set<std::string> vars;
  collect_variables(l, vars);
  return vars;
}

}  // namespace

Diagnostics derive(const KnowledgeBase& kb, const Literal& goal,
                   const DeriveConfig& config, const DerivationSink& sink) {
  Solver solver(kb, config, false);
  const std::set<std::string> vars = variables_of(goal);
  solver.solve(goal, 1, nullptr, nullptr, State{},
               [&](const State& st, ProtoPtr proto) {
                 Derivation d{st.subst.restricted_to(vars),
                              ArgumentTree(finalize(*proto, st.subst))};
                 return sink(d);
               });
  return solver.diagnostics;
}

DeriveResult derive_all(const KnowledgeBase& kb, const Literal& goal,
                        const DeriveConfig& config) {
  DeriveResult result;
  std::set<std::tuple<Substitution, std::set<std::string>, std::set<Literal>>>
      seen;
  result.diagnostics = derive(kb, goal, config, [&](const Derivation& d) {
    if (seen.emplace(d.binding, d.tree.support(), d.tree.hypotheses()).second) {
      result.derivations.push_back(d);
    }
    return true;
  });
  return result;
}

bool is_derivable(const KnowledgeBase& kb, const Literal& goal,
                  const DeriveConfig& config) {
  bool found = false;
  derive(kb, goal, config, [&](const Derivation&) {
    found = true;
    return false;
  });
  return found;
}

// --- tree validation --------------------------------------------------------

namespace {

std::string check_node(const KnowledgeBase& kb, const ArgumentNode& n);

std::string check_builtin_child(const BodyCondition& expected,
                                const ArgumentNode& child, Substitution& s) {
  if (child.kind != NodeKind::Builtin || !child.condition) {
    return "expected built-in " + to_string(expected);
  }
  const BodyCondition& actual = *child.condition;
  if (expected.index() != actual.index()) {
    return "built-in mismatch at " + to_string(actual);
  }
  std::optional<Substitution> u;
  if (const auto* ne = std::get_if<NotEqual>(&expected)) {
    const auto& a = std::get<NotEqual>(actual);
    u = unify(ne->left, a.left, s);
    if (u) u = unify(ne->right, a.right, *u);
  } else {
    const auto& d = std::get<DateApplicable>(expected);
    const auto& a = std::get<DateApplicable>(actual);
    u = unify(d.attack_date, a.attack_date, s);
    if (u) u = unify(d.motive_date, a.motive_date, *u);
  }
  if (!u) return "built-in " + to_string(actual) + " does not match the rule";
  s = std::move(*u);
  if (eval_builtin(actual) != BuiltinResult::True) {
    return "built-in " + to_string(actual) + " does not hold";
  }
  return {};
}

std::string check_node(const KnowledgeBase& kb, const ArgumentNode& n) {
  switch (n.kind) {
    case NodeKind::Fact: {
      const Fact* fact = kb.find_fact(n.label);
      if (!fact) return "unknown fact " + n.label;
      if (fact->literal != n.conclusion) {
        return "fact " + n.label + " does not state " + to_string(n.conclusion);
      }
      if (!n.children.empty()) return "fact " + n.label + " has children";
      return {};
    }
    case NodeKind::Hypothesis:
      if (!n.conclusion.positive || !n.conclusion.is_ground() ||
          !kb.is_abducible(n.conclusion.atom.key())) {
        return "invalid hypothesis " + to_string(n.conclusion);
      }
      if (!n.children.empty()) return "hypothesis has children";
      return {};
    case NodeKind::Builtin:
      return "built-in outside a rule body";
    case NodeKind::Missing:
      return "missing premise " + to_string(n.conclusion);
    case NodeKind::Rule:
      break;
  }
  const ArgumentRule* rule = kb.find_rule(n.label);
  if (!rule) return "unknown rule " + n.label;
  if (!n.conclusion.is_ground()) {
    return "non-ground conclusion " + to_string(n.conclusion);
  }
  auto s = unify(rule->head, n.conclusion);
  if (!s) {
    return "rule " + rule->id + " does not conclude " + to_string(n.conclusion);
  }
  if (n.children.size() != rule->body.size()) {
    return "rule " + rule->id + " has the wrong number of premises";
  }
  for (std::size_t i = 0; i < rule->body.size(); ++i) {
    const ArgumentNode& child = *n.children[i];
    if (const Literal* lit = as_literal(rule->body[i])) {
      if (child.kind == NodeKind::Builtin) {
        return "expected premise " + to_string(*lit);
      }
      auto u = unify(*lit, child.conclusion, *s);
      if (!u) {
        return "premise " + to_string(child.conclusion) +
               " does not match rule " + rule->id;
      }
      s = std::move(u);
    } else {
      std::string err = check_builtin_child(rule->body[i], child, *s);
      if (!err.empty()) return err;
      continue;
    }
    std::string err = check_node(kb, child);
    if (!err.empty()) return err;
  }
  return {};
}

}  // namespace

std::string validate_tree(const KnowledgeBase& kb, const ArgumentNode& root) {
  return check_node(kb, root);
}

// --- hints ------------------------------------------------------------------

std::string_view to_string(HintKind kind) {
  return kind == HintKind::Hypothesis ? "hypothesis" : "missingPremise";
}

std::string to_string(const MissingEvidenceHint& hint) {
  std::ostringstream os;
  os << to_string(hint.kind) << " via " << hint.enabling_rule << ": ";
  for (std::size_t i = 0; i < hint.missing.size(); ++i) {
    if (i) os << ", ";
    os << hint.missing[i];
  }
  os << " would conclude " << hint.would_conclude;
  if (!hint.hypotheses.empty()) {
    os << " assuming ";
    for (std::size_t i = 0; i < hint.hypotheses.size(); ++i) {
      if (i) os << ", ";
      os << hint.hypotheses[i];
    }
  }
  if (!hint.pending.empty()) {
    os << " provided ";
    for (std::size_t i = 0; i < hint.pending.size(); ++i) {
      if (i) os << ", ";
      os << hint.pending[i];
    }
  }
  return os.str();
}

namespace {

class HintCollector {
 public:
  HintCollector(std::size_t bound) : bound_(bound) {}

  // False once the bound is reached.
  bool add(MissingEvidenceHint hint) {
    if (full()) return false;
    if (std::find(hints_.begin(), hints_.end(), hint) == hints_.end()) {
      hints_.push_back(std::move(hint));
    }
    return !full();
  }
  bool full() const { return hints_.size() >= bound_; }
  std::vector<MissingEvidenceHint> take() { return std::move(hints_); }

 private:
  std::size_t bound_;
  std::vector<MissingEvidenceHint> hints_;
};

void hypothesis_hints(const KnowledgeBase& kb, const Literal& goal,
                      const DeriveConfig& config, HintCollector& out) {
  derive(kb, goal, config, [&](const Derivation& d) {
    if (d.tree.hypotheses().empty()) return true;
    MissingEvidenceHint hint;
    hint.kind = HintKind::Hypothesis;
    hint.enabling_rule = d.tree.root().label;
    hint.missing.assign(d.tree.hypotheses().begin(), d.tree.hypotheses().end());
    hint.would_conclude = d.tree.conclusion();
    return out.add(std::move(hint));
  });
}

}  // namespace

std::vector<MissingEvidenceHint> missing_evidence_hints(
    const KnowledgeBase& kb, const Literal& goal, std::size_t bound,
    const DeriveConfig& config) {
  HintCollector out(bound);
  if (bound == 0) return {};
  DeriveConfig abductive = config;
  abductive.abduction = true;

  hypothesis_hints(kb, goal, abductive, out);
  for (std::size_t idx : kb.rules_for(goal)) {
    if (out.full()) break;
    const ArgumentRule& rule = kb.rules()[idx];
    auto s = unify(rule.head, goal);
    if (!s) continue;
    for (const BodyCondition& c : rule.body) {
      if (out.full()) break;
      if (const Literal* lit = as_literal(c)) {
        hypothesis_hints(kb, s->apply(*lit), abductive, out);
      }
    }
  }
  if (out.full()) return out.take();

  Solver solver(kb, abductive, true);
  std::map<Literal, bool> derivable;
  auto has_instance = [&](const Literal& l) {
    auto it = derivable.find(l);
    if (it != derivable.end()) return it->second;
    const bool r = is_derivable(kb, l, abductive);
    derivable.emplace(l, r);
    return r;
  };
  solver.solve(goal, 1, nullptr, nullptr, State{},
               [&](const State& st, ProtoPtr proto) {
                 if (!st.gap) return true;
                 MissingEvidenceHint hint;
                 hint.kind = HintKind::MissingPremise;
                 hint.enabling_rule = st.gap_rule;
                 const Literal missing = st.subst.apply(*st.gap);
                 for (const BodyCondition& c : st.pending) {
                   const BodyCondition applied = st.subst.apply(c);
                   switch (eval_builtin(applied)) {
                     case BuiltinResult::False:
                       return true;
                     case BuiltinResult::True:
                       break;
                     case BuiltinResult::InstantiationError:
                       hint.pending.push_back(applied);
                       break;
                   }
                 }
                 hint.would_conclude = st.subst.apply(goal);
                 if (hint.would_conclude.is_ground() &&
                     has_instance(hint.would_conclude)) {
                   return true;
                 }
                 if (has_instance(missing)) return true;
                 hint.missing.push_back(missing);
                 ArgumentTree tree(finalize(*proto, st.subst));
                 hint.hypotheses.assign(tree.hypotheses().begin(),
                                        tree.hypotheses().end());
                 return out.add(std::move(hint));
               });
  return out.take();
}

}  // namespace abr
