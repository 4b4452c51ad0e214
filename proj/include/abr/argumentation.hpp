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

// Conflicts between arguments, priority-based defeat and a dialectical game
// deciding sceptical or credulous acceptance.

#ifndef ABR_ARGUMENTATION_HPP_
#define ABR_ARGUMENTATION_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "abr/inference.hpp"
#include "abr/knowledge_base.hpp"

namespace abr {

enum class AcceptanceStatus { Sceptical, Credulous, NotSupported };

std::string_view to_string(AcceptanceStatus s);
std::optional<AcceptanceStatus> parse_status(std::string_view text);

enum class Verdict { AStrictlyDefeatsB, BStrictlyDefeatsA, MutualAttack };

std::string_view to_string(Verdict v);

struct DefeatVerdict {
  Verdict verdict = Verdict::MutualAttack;
  // Preference ids on the priority chain(s) that decided it.
  std::vector<std::string> preferences;
};

// Node `in_a` of one argument and node `in_b` of another conclude
// complementary literals.
struct ConflictPoint {
  const ArgumentNode* in_a = nullptr;
  const ArgumentNode* in_b = nullptr;
  Literal literal;  // conclusion of in_a
};

struct Conflict {
  ArgumentTree counter;
  ConflictPoint point;  // in_b is the counter's root
};

struct AttackRecord {
  Literal attacked;       // conclusion of the attacked node
  std::string attacked_label;
  Literal counter_conclusion;
  std::string counter_label;
  std::set<std::string> counter_support;
  std::set<Literal> counter_hypotheses;
  // Relative to the attacked argument (A) and the counter (B).
  DefeatVerdict verdict;
};

struct QueryConfig {
  DeriveConfig derive;
  // Limits on the dialectical game; exceeding either degrades the status to
  // credulous.
  std::size_t max_game_moves = 200'000;
  std::size_t max_game_depth = 64;
};

struct QueryAnswer {
  Substitution binding;
  AcceptanceStatus status = AcceptanceStatus::NotSupported;
  ArgumentTree argument;
  std::set<Literal> hypotheses;
  std::vector<AttackRecord> attack_log;
};

struct QueryResult {
  Literal goal;
  std::vector<QueryAnswer> answers;
  Diagnostics diagnostics;
  std::vector<std::string> notes;  // game-limit messages
};

struct Acceptance {
  AcceptanceStatus status = AcceptanceStatus::Credulous;
  std::vector<AttackRecord> attack_log;
  bool game_limit_hit = false;
};

// Caches priorities, counter-arguments and game moves for one KB snapshot.
// Not thread-safe; use one per thread.
class Reasoner {
 public:
  explicit Reasoner(KnowledgeBase kb, QueryConfig config = {});
  ~Reasoner();
  Reasoner(const Reasoner&) = delete;
  Reasoner& operator=(const Reasoner&) = delete;

  const KnowledgeBase& kb() const { return kb_; }
  const QueryConfig& config() const { return config_; }

  // Transitive priority from preferences whose bodies are derivable without
  // abduction or priorities. A hypothesis label ranks below every rule.
  bool rule_priority(std::string_view higher, std::string_view lower);
  std::vector<std::string> justifying_preferences(std::string_view higher,
                                                  std::string_view lower);

  std::vector<Conflict> find_conflicts(const ArgumentTree& a);
  DefeatVerdict decide_defeat(const ConflictPoint& conflict);
  Acceptance accept(const ArgumentTree& a);
  QueryResult query(const Literal& goal);

  const Diagnostics& diagnostics() const { return diagnostics_; }

 private:
  struct Impl;
  KnowledgeBase kb_;
  QueryConfig config_;
  Diagnostics diagnostics_;
  std::unique_ptr<Impl> impl_;
};

bool rule_priority(const KnowledgeBase& kb, std::string_view higher,
                   std::string_view lower);
std::vector<Conflict> find_conflicts(const KnowledgeBase& kb,
                                     const ArgumentTree& a,
                                     const QueryConfig& config = {});
DefeatVerdict decide_defeat(const KnowledgeBase& kb,
                            const ConflictPoint& conflict);
Acceptance accept(const KnowledgeBase& kb, const ArgumentTree& a,
                  const QueryConfig& config = {});
QueryResult query(const KnowledgeBase& kb, const Literal& goal,
                  const QueryConfig& config = {});

}  // namespace abr

#endif  // ABR_ARGUMENTATION_HPP_
