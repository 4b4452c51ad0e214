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

// Unification, backward chaining with abduction and built-ins, argument
// trees, and missing-evidence hints.

#ifndef ABR_INFERENCE_HPP_
#define ABR_INFERENCE_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "abr/knowledge_base.hpp"
#include "abr/term.hpp"

namespace abr {

// Triangular variable bindings. resolve() applies them fully, so the
// observable mapping is idempotent.
class Substitution {
 public:
  const Term* lookup(const std::string& var) const;
  bool binds(const std::string& var) const { return map_.contains(var); }
  void bind(const std::string& var, Term value);

  Term resolve(const Term& t) const;
  Atom apply(const Atom& a) const;
  Literal apply(const Literal& l) const;
  BodyCondition apply(const BodyCondition& c) const;

  // Fully resolved bindings for `vars` that are bound.
  Substitution restricted_to(const std::set<std::string>& vars) const;

  const std::map<std::string, Term>& bindings() const { return map_; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  friend bool operator==(const Substitution&, const Substitution&) = default;
  friend auto operator<=>(const Substitution& a, const Substitution& b) {
    return a.map_ <=> b.map_;
  }

 private:
  std::map<std::string, Term> map_;
};

std::string to_string(const Substitution& s);

// Most general unifier extending `s`, with occurs check.
std::optional<Substitution> unify(const Term& a, const Term& b,
                                  Substitution s = {});
std::optional<Substitution> unify(const Atom& a, const Atom& b,
                                  Substitution s = {});
// Literals unify when their signs agree and their atoms unify.
std::optional<Substitution> unify(const Literal& a, const Literal& b,
                                  Substitution s = {});

// True when `a` and `b` are equal up to a consistent renaming of variables.
bool is_variant(const Literal& a, const Literal& b);

enum class BuiltinResult { True, False, InstantiationError };

// `cond` must already have its bindings applied. dateApplicable(A, M) holds
// when 0 <= months(A) - months(M) < 12 for [Year, Month] dates.
BuiltinResult eval_builtin(const BodyCondition& cond);

struct DeriveConfig {
  int max_depth = 32;
  bool abduction = true;
  // Upper bound on goal expansions per call; exceeding it stops the search
  // and is reported in the diagnostics.
  std::size_t max_steps = 2'000'000;
};

struct Diagnostics {
  std::size_t depth_exceeded = 0;
  bool step_limit_hit = false;
  std::vector<std::string> instantiation_errors;

  void merge(const Diagnostics& other);
  bool clean() const {
    return depth_exceeded == 0 && !step_limit_hit &&
           instantiation_errors.empty();
  }
};

enum class NodeKind { Fact, Rule, Hypothesis, Builtin, Missing };

std::string_view to_string(NodeKind kind);

inline constexpr std::string_view kHypothesisLabel = "hyp";

struct ArgumentNode {
  NodeKind kind = NodeKind::Fact;
  // Ground conclusion. Unused for Builtin nodes.
  Literal conclusion;
  // Set for Builtin nodes only.
  std::optional<BodyCondition> condition;
  // Rule or fact label; kHypothesisLabel for hypotheses.
  std::string label;
  // Instantiation of the rule's own variables (Rule nodes).
  Substitution bindings;
  std::vector<std::shared_ptr<const ArgumentNode>> children;
};

using NodePtr = std::shared_ptr<const ArgumentNode>;

// A ground derivation with its support labels and hypotheses.
class ArgumentTree {
 public:
  ArgumentTree() = default;
  explicit ArgumentTree(NodePtr root);

  const ArgumentNode& root() const { return *root_; }
  const NodePtr& root_ptr() const { return root_; }
  const Literal& conclusion() const { return root_->conclusion; }

  // Rule and fact labels used anywhere in the tree.
  const std::set<std::string>& support() const { return support_; }
  const std::set<Literal>& hypotheses() const { return hypotheses_; }
  int depth() const { return depth_; }
  std::size_t node_count() const { return node_count_; }

  // Pre-order, children left to right.
  std::vector<const ArgumentNode*> nodes() const;

 private:
  NodePtr root_;
  std::set<std::string> support_;
  std::set<Literal> hypotheses_;
  int depth_ = 0;
  std::size_t node_count_ = 0;
};

// Arguments are identified by conclusion, support and hypotheses.
struct ArgumentKey {
  Literal conclusion;
  std::set<std::string> support;
  std::set<Literal> hypotheses;

  friend auto operator<=>(const ArgumentKey&, const ArgumentKey&) = default;
  friend bool operator==(const ArgumentKey&, const ArgumentKey&) = default;
};

ArgumentKey key_of(const ArgumentTree& tree);

struct Derivation {
  Substitution binding;  // restricted to the goal's variables
  ArgumentTree tree;
};

// Return false to stop the stream.
using DerivationSink = std::function<bool(const Derivation&)>;

// Depth-first, left-to-right backward chaining. Rules are tried in id
// order, then facts in insertion order. A goal that repeats (up to
// variable renaming) on its own ancestor chain fails.
Diagnostics derive(const KnowledgeBase& kb, const Literal& goal,
                   const DeriveConfig& config, const DerivationSink& sink);

struct DeriveResult {
  std::vector<Derivation> derivations;
  Diagnostics diagnostics;
};

// Collects derive(), dropping repeats of (binding, support, hypotheses).
DeriveResult derive_all(const KnowledgeBase& kb, const Literal& goal,
                        const DeriveConfig& config);

bool is_derivable(const KnowledgeBase& kb, const Literal& goal,
                  const DeriveConfig& config);

// Re-checks a tree node by node against the KB: rule nodes must instantiate
// their rule with children proving the body in order, fact leaves must be
// KB facts, hypotheses must be ground positive abducibles and built-ins must
// evaluate to true. Returns an empty string when valid.
std::string validate_tree(const KnowledgeBase& kb, const ArgumentNode& root);

enum class HintKind { Hypothesis, MissingPremise };

std::string_view to_string(HintKind kind);

struct MissingEvidenceHint {
  HintKind kind = HintKind::MissingPremise;
  // Rule whose body contains the missing premise, or the root rule of the
  // abductive derivation.
  std::string enabling_rule;
  // The hypothesis set, or the single missing premise (possibly partially
  // bound).
  std::vector<Literal> missing;
  Literal would_conclude;
  // Abduced atoms the missing-premise route also relies on.
  std::vector<Literal> hypotheses;
  // Built-ins that depend on the missing premise's unbound variables.
  std::vector<BodyCondition> pending;

  friend bool operator==(const MissingEvidenceHint&,
                         const MissingEvidenceHint&) = default;
};

std::string to_string(const MissingEvidenceHint& hint);

// At most `bound` hints, first-found order: hypothesis sets of abductive
// derivations of the goal (and of the premises of rules concluding it),
// then derivations of the goal that lack exactly one non-built-in premise.
std::vector<MissingEvidenceHint> missing_evidence_hints(
    const KnowledgeBase& kb, const Literal& goal, std::size_t bound = 10,
    const DeriveConfig& config = {});

}  // namespace abr

#endif  // ABR_INFERENCE_HPP_
