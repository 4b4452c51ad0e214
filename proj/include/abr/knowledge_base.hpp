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

// Validated, immutable knowledge-base snapshots: argument rules, preference
// rules, ground facts and abducible declarations.

#ifndef ABR_KNOWLEDGE_BASE_HPP_
#define ABR_KNOWLEDGE_BASE_HPP_

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abr/term.hpp"

namespace abr {

/// Labeled defeasible rule `id [layer]: head <- body`.
struct ArgumentRule {
  std::string id;
  Layer layer = Layer::Technical;
  Literal head;
  std::vector<BodyCondition> body;

  friend bool operator==(const ArgumentRule&, const ArgumentRule&) = default;
};

/// `id: higher > lower <- body`. An empty body means the priority always
/// holds; otherwise it holds when the body is derivable.
struct PreferenceRule {
  std::string id;
  std::string higher;
  std::string lower;
  std::vector<BodyCondition> body;

  friend bool operator==(const PreferenceRule&, const PreferenceRule&) = default;
};

struct AbducibleDecl {
  std::string predicate;
  std::size_t arity = 0;

  PredicateKey key() const { return {predicate, arity}; }
  friend bool operator==(const AbducibleDecl&, const AbducibleDecl&) = default;
};

enum class Provenance { Evidence, Background };

std::string_view to_string(Provenance p);

/// A ground fact. Facts behave as bodyless rules labeled by `id`, so
/// preferences may rank them like any other rule.
struct Fact {
  std::string id;
  Literal literal;
  Layer layer = Layer::Technical;
  Provenance provenance = Provenance::Evidence;
};

enum class KbErrorCode {
  DuplicateId,
  RangeRestrictionViolation,
  ReservedPredicate,
  NonGroundFact,
  SelfPreference,
  UnknownId,
};

std::string_view to_string(KbErrorCode code);

class KbError : public std::runtime_error {
 public:
  KbError(KbErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  KbErrorCode code() const { return code_; }

 private:
  KbErrorCode code_;
};

enum class Severity { Error, Warning, Info };

std::string_view to_string(Severity s);

struct ValidationIssue {
  Severity severity = Severity::Error;
  std::string code;  // dangling-preference, priority-cycle, layer-order, unused-abducible
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  std::size_t count(Severity s) const;
  bool ok() const { return count(Severity::Error) == 0; }
};

// Immutable snapshot with copy-on-write construction. Copies are cheap and
// share storage; the with_* members never modify a snapshot that another
// value still references.
class KnowledgeBase {
 public:
  KnowledgeBase();

  [[nodiscard]] KnowledgeBase with_rule(ArgumentRule rule) const&;
  [[nodiscard]] KnowledgeBase with_rule(ArgumentRule rule) &&;
  [[nodiscard]] KnowledgeBase with_fact(
      Literal literal, Layer layer, Provenance provenance,
      std::optional<std::string> id = std::nullopt) const&;
  [[nodiscard]] KnowledgeBase with_fact(
      Literal literal, Layer layer, Provenance provenance,
      std::optional<std::string> id = std::nullopt) &&;
  [[nodiscard]] KnowledgeBase with_preference(PreferenceRule pref) const&;
  [[nodiscard]] KnowledgeBase with_preference(PreferenceRule pref) &&;
  [[nodiscard]] KnowledgeBase with_abducible(AbducibleDecl decl) const&;
  [[nodiscard]] KnowledgeBase with_abducible(AbducibleDecl decl) &&;

  // Removes the rule, fact or preference labeled `id`. Throws UnknownId.
  [[nodiscard]] KnowledgeBase without(std::string_view id) const;

  std::span<const ArgumentRule> rules() const;
  std::span<const Fact> facts() const;
  std::span<const PreferenceRule> preferences() const;
  std::span<const AbducibleDecl> abducibles() const;

  const ArgumentRule* find_rule(std::string_view id) const;
  const Fact* find_fact(std::string_view id) const;
  const PreferenceRule* find_preference(std::string_view id) const;
  bool has_id(std::string_view id) const;
  // Rule or fact label; preferences rank these.
  bool has_rule_label(std::string_view id) const;
  std::optional<Layer> layer_of(std::string_view label) const;

  bool is_abducible(const PredicateKey& key) const;

  // Indices into rules() whose head has the predicate and sign of `goal`,
  // ordered by rule id.
  const std::vector<std::size_t>& rules_for(const Literal& goal) const;
  // Indices into facts() with the predicate and sign of `goal`, in
  // insertion order.
  const std::vector<std::size_t>& facts_for(const Literal& goal) const;

  // Ground terms (including nested list elements) occurring in facts and
  // rules.
  std::set<Term> constants() const;

  // Identity of the underlying storage; equal tokens imply equal content.
  const void* snapshot_token() const { return data_.get(); }

 private:
  struct Data;
  explicit KnowledgeBase(std::shared_ptr<Data> data);
  void detach();
  void insert_rule(ArgumentRule rule);
  void insert_fact(Literal literal, Layer layer, Provenance provenance,
                   std::optional<std::string> id);
  void insert_preference(PreferenceRule pref);
  void insert_abducible(AbducibleDecl decl);

  std::shared_ptr<Data> data_;
};

// Functional spellings of the construction API.
KnowledgeBase add_rule(KnowledgeBase kb, ArgumentRule rule);
KnowledgeBase add_fact(KnowledgeBase kb, Literal literal, Layer layer,
                       Provenance provenance = Provenance::Evidence);
KnowledgeBase add_preference(KnowledgeBase kb, PreferenceRule pref);
KnowledgeBase add_abducible(KnowledgeBase kb, AbducibleDecl decl);

// Checks the rule is range restricted and does not define a built-in.
// Throws KbError.
void check_rule(const ArgumentRule& rule);

ValidationReport validate_kb(const KnowledgeBase& kb);

}  // namespace abr

#endif  // ABR_KNOWLEDGE_BASE_HPP_
