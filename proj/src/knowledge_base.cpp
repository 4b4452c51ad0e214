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

#include "abr/knowledge_base.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "abr/inference.hpp"

namespace abr {

std::string_view to_string(Provenance p) {
  return p == Provenance::Evidence ? "evidence" : "background";
}

std::string_view to_string(KbErrorCode code) {
  switch (code) {
    case KbErrorCode::DuplicateId:
      return "DuplicateId";
    case KbErrorCode::RangeRestrictionViolation:
      return "RangeRestrictionViolation";
    case KbErrorCode::ReservedPredicate:
      return "ReservedPredicate";
    case KbErrorCode::NonGroundFact:
      return "NonGroundFact";
    case KbErrorCode::SelfPreference:
      return "SelfPreference";
    case KbErrorCode::UnknownId:
      return "UnknownId";
  }
  return "KbError";
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Error:
      return "error";
    case Severity::Warning:
      return "warning";
    case Severity::Info:
      return "info";
  }
  return "error";
}

std::size_t ValidationReport::count(Severity s) const {
  return static_cast<std::size_t>(
      std::count_if(issues.begin(), issues.end(),
                    [s](const ValidationIssue& i) { return i.severity == s; }));
}

namespace {

// (name, arity, sign)
using SignedKey = std::tuple<std::string, std::size_t, bool>;

SignedKey signed_key(const Literal& l) {
  return {l.atom.predicate, l.atom.args.size(), l.positive};
}

const std::vector<std::size_t> kNoIndices;

}  // namespace

struct KnowledgeBase::Data {
  std::vector<ArgumentRule> rules;
  std::vector<Fact> facts;
  std::vector<PreferenceRule> preferences;
  std::vector<AbducibleDecl> abducibles;

  std::unordered_set<std::string> ids;
  std::unordered_map<std::string, std::size_t> rule_by_id;
  std::unordered_map<std::string, std::size_t> fact_by_id;
  std::map<SignedKey, std::vector<std::size_t>> rule_index;
  std::map<SignedKey, std::vector<std::size_t>> fact_index;
  std::set<PredicateKey> abducible_keys;
  std::size_t next_fact_number = 1;

  void reindex() {
    rule_by_id.clear();
    fact_by_id.clear();
    rule_index.clear();
    fact_index.clear();
    for (std::size_t i = 0; i < rules.size(); ++i) {
      rule_by_id[rules[i].id] = i;
      index_rule(i);
    }
    for (std::size_t i = 0; i < facts.size(); ++i) {
      fact_by_id[facts[i].id] = i;
      fact_index[signed_key(facts[i].literal)].push_back(i);
    }
  }

  void index_rule(std::size_t i) {
    auto& bucket = rule_index[signed_key(rules[i].head)];
    auto pos = std::lower_bound(
        bucket.begin(), bucket.end(), i, [this](std::size_t a, std::size_t b) {
          return rules[a].id < rules[b].id;
        });
    bucket.insert(pos, i);
  }
};

KnowledgeBase::KnowledgeBase() : data_(std::make_shared<Data>()) {}

KnowledgeBase::KnowledgeBase(std::shared_ptr<Data> data)
    : data_(std::move(data)) {}

void KnowledgeBase::detach() {
  if (data_.use_count() > 1) data_ = std::make_shared<Data>(*data_);
}

void check_rule(const ArgumentRule& rule) {
  if (is_reserved_predicate(rule.head.atom.predicate)) {
    throw KbError(KbErrorCode::ReservedPredicate,
                  "rule " + rule.id + ": head uses built-in predicate " +
                      rule.head.atom.predicate);
  }
  std::set<std::string> head_vars;
  collect_variables(rule.head, head_vars);
  if (head_vars.empty()) return;
  std::set<std::string> covered;
  for (const BodyCondition& c : rule.body) {
    if (const Literal* l = as_literal(c)) collect_variables(*l, covered);
  }
  for (const std::string& v : head_vars) {
    if (!covered.contains(v)) {
      throw KbError(KbErrorCode::RangeRestrictionViolation,
                    "rule " + rule.id + ": head variable " + v +
                        " does not occur in a body literal");
    }
  }
}

void KnowledgeBase::insert_rule(ArgumentRule rule) {
  if (data_->ids.contains(rule.id)) {
    throw KbError(KbErrorCode::DuplicateId, "duplicate id " + rule.id);
  }
  check_rule(rule);
  detach();
  Data& d = *data_;
  d.ids.insert(rule.id);
  d.rule_by_id[rule.id] = d.rules.size();
  d.rules.push_back(std::move(rule));
  d.index_rule(d.rules.size() - 1);
}

void KnowledgeBase::insert_fact(Literal literal, Layer layer,
                                Provenance provenance,
                                std::optional<std::string> id) {
  if (!literal.is_ground()) {
    throw KbError(KbErrorCode::NonGroundFact,
                  "fact " + to_string(literal) + " is not ground");
  }
  if (is_reserved_predicate(literal.atom.predicate)) {
    throw KbError(KbErrorCode::ReservedPredicate,
                  "fact uses built-in predicate " + literal.atom.predicate);
  }
  if (id && data_->ids.contains(*id)) {
    throw KbError(KbErrorCode::DuplicateId, "duplicate id " + *id);
  }
  detach();
  Data& d = *data_;
  std::string label;
  if (id) {
    label = std::move(*id);
  } else {
    do {
      label = "fact_" + std::to_string(d.next_fact_number++);
    } while (d.ids.contains(label));
  }
  d.ids.insert(label);
  d.fact_by_id[label] = d.facts.size();
  d.fact_index[signed_key(literal)].push_back(d.facts.size());
  d.facts.push_back(Fact{std::move(label), std::move(literal), layer,
                         provenance});
}

void KnowledgeBase::insert_preference(PreferenceRule pref) {
  if (pref.higher == pref.lower) {
    throw KbError(KbErrorCode::SelfPreference,
                  "preference " + pref.id + " ranks " + pref.higher +
                      " above itself");
  }
  if (data_->ids.contains(pref.id)) {
    throw KbError(KbErrorCode::DuplicateId, "duplicate id " + pref.id);
  }
  detach();
  data_->ids.insert(pref.id);
  data_->preferences.push_back(std::move(pref));
}

void KnowledgeBase::insert_abducible(AbducibleDecl decl) {
  if (data_->abducible_keys.contains(decl.key())) return;
  detach();
  data_->abducible_keys.insert(decl.key());
  data_->abducibles.push_back(std::move(decl));
}

KnowledgeBase KnowledgeBase::with_rule(ArgumentRule rule) const& {
  KnowledgeBase copy(*this);
  copy.insert_rule(std::move(rule));
  return copy;
}
KnowledgeBase KnowledgeBase::with_rule(ArgumentRule rule) && {
  insert_rule(std::move(rule));
  return std::move(*this);
}
KnowledgeBase KnowledgeBase::with_fact(Literal literal, Layer layer,
                                       Provenance provenance,
                                       std::optional<std::string> id) const& {
  KnowledgeBase copy(*this);
  copy.insert_fact(std::move(literal), layer, provenance, std::move(id));
  return copy;
}
KnowledgeBase KnowledgeBase::with_fact(Literal literal, Layer layer,
                                       Provenance provenance,
                                       std::optional<std::string> id) && {
  insert_fact(std::move(literal), layer, provenance, std::move(id));
  return std::move(*this);
}
KnowledgeBase KnowledgeBase::with_preference(PreferenceRule pref) const& {
  KnowledgeBase copy(*this);
  copy.insert_preference(std::move(pref));
  return copy;
}
KnowledgeBase KnowledgeBase::with_preference(PreferenceRule pref) && {
  insert_preference(std::move(pref));
  return std::move(*this);
}
KnowledgeBase KnowledgeBase::with_abducible(AbducibleDecl decl) const& {
  KnowledgeBase copy(*this);
  copy.insert_abducible(std::move(decl));
  return copy;
}
KnowledgeBase KnowledgeBase::with_abducible(AbducibleDecl decl) && {
  insert_abducible(std::move(decl));
  return std::move(*this);
}

KnowledgeBase KnowledgeBase::without(std::string_view id) const {
  const std::string key(id);
  auto data = std::make_shared<Data>(*data_);
  bool removed = false;
  if (auto it = data->rule_by_id.find(key); it != data->rule_by_id.end()) {
    data->rules.erase(data->rules.begin() +
                      static_cast<std::ptrdiff_t>(it->second));
    removed = true;
  } else if (auto f = data->fact_by_id.find(key); f != data->fact_by_id.end()) {
    data->facts.erase(data->facts.begin() +
                      static_cast<std::ptrdiff_t>(f->second));
    removed = true;
  } else {
    auto p = std::find_if(data->preferences.begin(), data->preferences.end(),
                          [&](const PreferenceRule& r) { return r.id == key; });
    if (p != data->preferences.end()) {
      data->preferences.erase(p);
      removed = true;
    }
  }
  if (!removed) throw KbError(KbErrorCode::UnknownId, "unknown id " + key);
  data->ids.erase(key);
  data->reindex();
  return KnowledgeBase(std::move(data));
}

std::span<const ArgumentRule> KnowledgeBase::rules() const {
  return data_->rules;
}
std::span<const Fact> KnowledgeBase::facts() const { return data_->facts; }
std::span<const PreferenceRule> KnowledgeBase::preferences() const {
  return data_->preferences;
}
std::span<const AbducibleDecl> KnowledgeBase::abducibles() const {
  return data_->abducibles;
}

const ArgumentRule* KnowledgeBase::find_rule(std::string_view id) const {
  auto it = data_->rule_by_id.find(std::string(id));
  return it == data_->rule_by_id.end() ? nullptr : &data_->rules[it->second];
}

const Fact* KnowledgeBase::find_fact(std::string_view id) const {
  auto it = data_->fact_by_id.find(std::string(id));
  return it == data_->fact_by_id.end() ? nullptr : &data_->facts[it->second];
}

const PreferenceRule* KnowledgeBase::find_preference(
    std::string_view id) const {
  for (const PreferenceRule& p : data_->preferences) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

bool KnowledgeBase::has_id(std::string_view id) const {
  return data_->ids.contains(std::string(id));
}

bool KnowledgeBase::has_rule_label(std::string_view id) const {
  return find_rule(id) != nullptr || find_fact(id) != nullptr;
}

std::optional<Layer> KnowledgeBase::layer_of(std::string_view label) const {
  if (const ArgumentRule* r = find_rule(label)) return r->layer;
  if (const Fact* f = find_fact(label)) return f->layer;
  return std::nullopt;
}

bool KnowledgeBase::is_abducible(const PredicateKey& key) const {
  return data_->abducible_keys.contains(key);
}

const std::vector<std::size_t>& KnowledgeBase::rules_for(
    const Literal& goal) const {
  auto it = data_->rule_index.find(signed_key(goal));
  return it == data_->rule_index.end() ? kNoIndices : it->second;
}

const std::vector<std::size_t>& KnowledgeBase::facts_for(
    const Literal& goal) const {
  auto it = data_->fact_index.find(signed_key(goal));
  return it == data_->fact_index.end() ? kNoIndices : it->second;
}

namespace {

void collect_ground(const Term& t, std::set<Term>& out) {
  if (!t.is_ground()) {
    if (t.is_list()) {
      for (const Term& e : t.elements()) collect_ground(e, out);
    }
    return;
  }
  out.insert(t);
  if (t.is_list()) {
    for (const Term& e : t.elements()) collect_ground(e, out);
  }
}

void collect_ground(const Literal& l, std::set<Term>& out) {
  for (const Term& a : l.atom.args) collect_ground(a, out);
}

}  // namespace

std::set<Term> KnowledgeBase::constants() const {
  std::set<Term> out;
  for (const Fact& f : data_->facts) collect_ground(f.literal, out);
  for (const ArgumentRule& r : data_->rules) {
    collect_ground(r.head, out);
    for (const BodyCondition& c : r.body) {
      if (const Literal* l = as_literal(c)) {
        collect_ground(*l, out);
      } else if (const auto* ne = std::get_if<NotEqual>(&c)) {
        collect_ground(ne->left, out);
        collect_ground(ne->right, out);
      } else {
        const auto& d = std::get<DateApplicable>(c);
        collect_ground(d.attack_date, out);
        collect_ground(d.motive_date, out);
      }
    }
  }
  return out;
}

KnowledgeBase add_rule(KnowledgeBase kb, ArgumentRule rule) {
  return std::move(kb).with_rule(std::move(rule));
}

KnowledgeBase add_fact(KnowledgeBase kb, Literal literal, Layer layer,
                       Provenance provenance) {
  return std::move(kb).with_fact(std::move(literal), layer, provenance);
}

KnowledgeBase add_preference(KnowledgeBase kb, PreferenceRule pref) {
  return std::move(kb).with_preference(std::move(pref));
}

KnowledgeBase add_abducible(KnowledgeBase kb, AbducibleDecl decl) {
  return std::move(kb).with_abducible(std::move(decl));
}

// --- validation -------------------------------------------------------------

namespace {

int layer_rank(Layer l) {
  switch (l) {
    case Layer::Technical:
    case Layer::Background:
      return 0;
    case Layer::Operational:
      return 1;
    case Layer::Strategic:
      return 2;
  }
  return 0;
}

// Heads of `a` and `b` can derive complementary instances.
bool heads_conflict(const Literal& a, const Literal& b) {
  // Rename b apart.
  Literal renamed = b;
  for (Term& t : renamed.atom.args) {
    std::set<std::string> vars;
    t.collect_variables(vars);
    Substitution s;
    for (const std::string& v : vars) s.bind(v, Term::variable(v + "'"));
    t = s.resolve(t);
  }
  return unify(a, complement(renamed)).has_value();
}

const Literal* head_of(const KnowledgeBase& kb, const std::string& label) {
  if (const ArgumentRule* r = kb.find_rule(label)) return &r->head;
  if (const Fact* f = kb.find_fact(label)) return &f->literal;
  return nullptr;
}

void check_preferences(const KnowledgeBase& kb, ValidationReport& report) {
  std::map<std::string, std::set<std::string>> edges;
  for (const PreferenceRule& p : kb.preferences()) {
    for (const std::string* label : {&p.higher, &p.lower}) {
      if (!kb.has_rule_label(*label)) {
        report.issues.push_back(
            {Severity::Error, "dangling-preference",
             "preference " + p.id + " names unknown rule " + *label});
      }
    }
    edges[p.higher].insert(p.lower);
  }

  // Reachability over the unconditional preference graph.
  std::map<std::string, std::set<std::string>> reach;
  for (const auto& [from, _] : edges) {
    std::set<std::string>& seen = reach[from];
    std::vector<std::string> stack(edges[from].begin(), edges[from].end());
    while (!stack.empty()) {
      std::string cur = std::move(stack.back());
      stack.pop_back();
      if (!seen.insert(cur).second) continue;
      if (auto it = edges.find(cur); it != edges.end()) {
        stack.insert(stack.end(), it->second.begin(), it->second.end());
      }
    }
  }
  for (const auto& [a, reachable] : reach) {
    for (const std::string& b : reachable) {
      if (!(a < b)) continue;
      auto back = reach.find(b);
      if (back == reach.end() || !back->second.contains(a)) continue;
      const Literal* ha = head_of(kb, a);
      const Literal* hb = head_of(kb, b);
      if (ha && hb && heads_conflict(*ha, *hb)) {
        report.issues.push_back({Severity::Warning, "priority-cycle",
                                 "priority cycle between " + a + " and " + b +
                                     "; treated as no priority"});
      }
    }
  }
}

void check_layers(const KnowledgeBase& kb, ValidationReport& report) {
  std::map<SignedKey, int> lowest_deriver;
  for (const ArgumentRule& r : kb.rules()) {
    auto key = signed_key(r.head);
    int rank = layer_rank(r.layer);
    auto [it, inserted] = lowest_deriver.emplace(key, rank);
    if (!inserted) it->second = std::min(it->second, rank);
  }
  std::set<SignedKey> has_facts;
  for (const Fact& f : kb.facts()) has_facts.insert(signed_key(f.literal));

  for (const ArgumentRule& r : kb.rules()) {
    if (r.layer == Layer::Background) continue;
    const int rank = layer_rank(r.layer);
    for (const BodyCondition& c : r.body) {
      const Literal* l = as_literal(c);
      if (!l) continue;
      auto key = signed_key(*l);
      auto it = lowest_deriver.find(key);
      if (it == lowest_deriver.end() || has_facts.contains(key)) continue;
      if (it->second > rank) {
        report.issues.push_back(
            {Severity::Warning, "layer-order",
             std::string(to_string(r.layer)) + " rule " + r.id + " uses " +
                 l->atom.predicate + ", derivable only by higher layers"});
      }
    }
  }
}

void check_abducibles(const KnowledgeBase& kb, ValidationReport& report) {
  std::set<PredicateKey> used;
  auto note = [&](const std::vector<BodyCondition>& body) {
    for (const BodyCondition& c : body) {
      if (const Literal* l = as_literal(c)) used.insert(l->atom.key());
    }
  };
  for (const ArgumentRule& r : kb.rules()) note(r.body);
  for (const PreferenceRule& p : kb.preferences()) note(p.body);
  for (const AbducibleDecl& a : kb.abducibles()) {
    if (!used.contains(a.key())) {
      report.issues.push_back({Severity::Info, "unused-abducible",
                               "abducible " + to_string(a.key()) +
                                   " is not used in any rule body"});
    }
  }
}

}  // namespace

ValidationReport validate_kb(const KnowledgeBase& kb) {
  ValidationReport report;
  check_preferences(kb, report);
  check_layers(kb, report);
  check_abducibles(kb, report);
  std::stable_sort(report.issues.begin(), report.issues.end(),
                   [](const ValidationIssue& a, const ValidationIssue& b) {
                     return std::tie(a.severity, a.code, a.message) <
                            std::tie(b.severity, b.code, b.message);
                   });
  return report;
}

}  // namespace abr
