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

#include <gtest/gtest.h>

#include "abr/argumentation.hpp"
#include "test_util.hpp"

namespace abr {
namespace {

using testing::kb_from;
using testing::lit;
using testing::term;
using testing::us_bank_kb;

// str_1, str_2 and p_1 taken from the shipped corpus, plus the two facts.
KnowledgeBase claim_kb(bool with_p1) {
  KnowledgeBase corpus = load_corpus();
  KnowledgeBase kb;
  kb = kb.with_rule(*corpus.find_rule("str_1"));
  kb = kb.with_rule(*corpus.find_rule("str_2"));
  if (with_p1) kb = kb.with_preference(*corpus.find_preference("p_1"));
  return kb_from("fact claimResp(c, a).\nfact neg hasCap(c, a).", kb);
}

std::optional<AcceptanceStatus> best(const QueryResult& r) {
  if (r.answers.empty()) return std::nullopt;
  return r.answers.front().status;
}

const QueryAnswer* answer_for(const QueryResult& r, std::string_view x) {
  for (const QueryAnswer& a : r.answers) {
    if (to_string(a.binding.resolve(term("X"))) == x) return &a;
  }
  return nullptr;
}

ArgumentTree first_tree(const KnowledgeBase& kb, std::string_view goal) {
  auto r = derive_all(kb, lit(goal), {});
  if (r.derivations.empty()) throw std::logic_error("no derivation");
  return r.derivations.front().tree;
}

TEST(Priority, P1RanksStr2OverStr1) {
  KnowledgeBase kb = load_corpus();
  EXPECT_TRUE(rule_priority(kb, "str_2", "str_1"));
  EXPECT_FALSE(rule_priority(kb, "str_1", "str_2"));
}

TEST(Priority, TransitiveChain) {
  KnowledgeBase kb = kb_from(
      "rule a [technical]: p.\nrule b [technical]: q.\nrule c [technical]: s.\n"
      "prefer x: a > b.\nprefer y: b > c.");
  Reasoner r(kb);
  EXPECT_TRUE(r.rule_priority("a", "c"));
  EXPECT_FALSE(r.rule_priority("c", "a"));
  EXPECT_EQ(r.justifying_preferences("a", "c"),
            (std::vector<std::string>{"x", "y"}));
}

TEST(Priority, ConditionalPreferenceNeedsDerivableBody) {
  const std::string rules =
      "rule a [technical]: p.\nrule b [technical]: neg p.\n"
      "prefer x: a > b <- context(econ).\n";
  EXPECT_FALSE(rule_priority(kb_from(rules), "a", "b"));
  EXPECT_TRUE(rule_priority(kb_from(rules + "fact context(econ)."), "a", "b"));
}

TEST(Priority, BodyIsEvaluatedWithoutAbduction) {
  KnowledgeBase kb = kb_from(
      "abducible context/1.\n"
      "rule a [technical]: p.\nrule b [technical]: neg p.\n"
      "prefer x: a > b <- context(econ).");
  EXPECT_FALSE(rule_priority(kb, "a", "b"));
}

TEST(Priority, CycleDegradesToNoPriority) {
  KnowledgeBase kb = kb_from(
      "rule a [technical]: p.\nrule b [technical]: neg p.\n"
      "prefer x: a > b.\nprefer y: b > a.");
  QueryResult pos = query(kb, lit("p"));
  QueryResult neg = query(kb, lit("neg p"));
  EXPECT_EQ(best(pos), AcceptanceStatus::Credulous);
  EXPECT_EQ(best(neg), AcceptanceStatus::Credulous);
}

TEST(Conflicts, Str1AgainstNegHasCap) {
  KnowledgeBase kb = claim_kb(true);
  ArgumentTree a = first_tree(kb, "isCulprit(c, a)");
  auto conflicts = find_conflicts(kb, a);
  ASSERT_EQ(conflicts.size(), 1u);
  EXPECT_EQ(conflicts[0].counter.root().label, "str_2");
  EXPECT_EQ(conflicts[0].point.literal, lit("isCulprit(c, a)"));
  EXPECT_EQ(conflicts[0].point.in_b->conclusion,
            complement(conflicts[0].point.in_a->conclusion));
}

TEST(Conflicts, NoneWithoutNegativeKnowledge) {
  KnowledgeBase kb = kb_from(
      "rule r [technical]: p(X) <- q(X).\nfact q(a).");
  EXPECT_TRUE(find_conflicts(kb, first_tree(kb, "p(a)")).empty());
}

TEST(Conflicts, FoundAtSubArgument) {
  KnowledgeBase kb = kb_from(
      "fact targetC(usa, usBHack).\nfact country(usa).\n"
      "fact country(iran).\nfact goodRelation(iran, usa).",
      us_bank_kb());
  ArgumentTree a = first_tree(kb, "isCulprit(iran, usBHack)");
  auto conflicts = find_conflicts(kb, a);
  ASSERT_FALSE(conflicts.empty());
  const auto it = std::find_if(conflicts.begin(), conflicts.end(),
                               [](const Conflict& c) {
                                 return c.counter.root().label == "op_5";
                               });
  ASSERT_NE(it, conflicts.end());
  EXPECT_EQ(it->point.literal, lit("hasMotive(iran, usBHack)"));
  EXPECT_EQ(it->point.in_a->label, "op_7");
  EXPECT_NE(a.root().label, it->point.in_a->label);

  const QueryAnswer* iran =
      answer_for(query(kb, lit("isCulprit(X, usBHack)")), "iran");
  ASSERT_NE(iran, nullptr);
  EXPECT_EQ(iran->status, AcceptanceStatus::Credulous);
}

TEST(Conflicts, HypothesisBlockedByComplementFact) {
  KnowledgeBase kb = kb_from(
      "abducible s/1.\n"
      "rule a [technical]: p(X) <- q(X), s(X).\n"
      "rule b [technical]: neg p(X) <- q(X), neg s(X).\n"
      "fact q(k).\nfact neg s(k).");
  // a's only argument needs s(k) hypothesized, which the fact rules out.
  EXPECT_TRUE(derive_all(kb, lit("p(k)"), {}).derivations.empty());
  EXPECT_EQ(best(query(kb, lit("neg p(k)"))), AcceptanceStatus::Sceptical);
}

TEST(Defeat, P1DecidesStr2) {
  KnowledgeBase kb = claim_kb(true);
  ArgumentTree a = first_tree(kb, "isCulprit(c, a)");
  auto conflicts = find_conflicts(kb, a);
  ASSERT_EQ(conflicts.size(), 1u);
  DefeatVerdict v = decide_defeat(kb, conflicts[0].point);
  EXPECT_EQ(v.verdict, Verdict::BStrictlyDefeatsA);
  EXPECT_EQ(v.preferences, std::vector<std::string>{"p_1"});
}

TEST(Defeat, UnrankedIsMutual) {
  KnowledgeBase kb = claim_kb(false);
  ArgumentTree a = first_tree(kb, "isCulprit(c, a)");
  auto conflicts = find_conflicts(kb, a);
  ASSERT_EQ(conflicts.size(), 1u);
  EXPECT_EQ(decide_defeat(kb, conflicts[0].point).verdict,
            Verdict::MutualAttack);
}

TEST(Defeat, RuleBeatsHypothesis) {
  KnowledgeBase kb =
      kb_from("fact target(other_bank, usBHack).", us_bank_kb());
  // The counter to a hypothesized specificTarget is op_2's conclusion.
  ArgumentTree op2 = first_tree(kb, "neg specificTarget(usBHack)");
  ArgumentNode hyp;
  hyp.kind = NodeKind::Hypothesis;
  hyp.conclusion = lit("specificTarget(usBHack)");
  hyp.label = std::string(kHypothesisLabel);
  ConflictPoint point{&op2.root(), &hyp, op2.conclusion()};
  EXPECT_EQ(decide_defeat(kb, point).verdict, Verdict::AStrictlyDefeatsB);
}

TEST(Accept, UsBankIranIsSceptical) {
  KnowledgeBase kb = us_bank_kb();
  Acceptance acc = accept(kb, first_tree(kb, "isCulprit(iran, usBHack)"));
  EXPECT_EQ(acc.status, AcceptanceStatus::Sceptical);
  EXPECT_TRUE(acc.attack_log.empty());
}

TEST(Accept, MutualAttackIsCredulousOnBothSides) {
  KnowledgeBase kb = claim_kb(false);
  Acceptance pos = accept(kb, first_tree(kb, "isCulprit(c, a)"));
  Acceptance neg = accept(kb, first_tree(kb, "neg isCulprit(c, a)"));
  EXPECT_EQ(pos.status, AcceptanceStatus::Credulous);
  EXPECT_EQ(neg.status, AcceptanceStatus::Credulous);
  EXPECT_EQ(pos.attack_log.size(), 1u);
  EXPECT_EQ(neg.attack_log.size(), 1u);
}

TEST(Accept, StrictDefeatWithoutReply) {
  KnowledgeBase kb = claim_kb(true);
  EXPECT_EQ(accept(kb, first_tree(kb, "neg isCulprit(c, a)")).status,
            AcceptanceStatus::Sceptical);
  EXPECT_EQ(accept(kb, first_tree(kb, "isCulprit(c, a)")).status,
            AcceptanceStatus::NotSupported);
}

TEST(Accept, ReinstatementByDefender) {
  // c defeats b, b defeats a: a is defended.
  KnowledgeBase kb = kb_from(
      "rule a [technical]: p.\n"
      "rule b [technical]: neg p <- q.\n"
      "rule c [technical]: neg q.\n"
      "fact fq: q.\n"
      "prefer x: b > a.\nprefer y: c > fq.");
  EXPECT_EQ(best(query(kb, lit("p"))), AcceptanceStatus::Sceptical);
}

TEST(Accept, GameLimitDegradesToCredulous) {
  KnowledgeBase kb = kb_from(
      "rule a [technical]: p.\n"
      "rule b [technical]: neg p <- q.\n"
      "rule c [technical]: neg q.\n"
      "fact fq: q.\n"
      "prefer x: b > a.\nprefer y: c > fq.");
  QueryConfig tight;
  tight.max_game_moves = 0;
  QueryResult r = query(kb, lit("p"), tight);
  EXPECT_EQ(best(r), AcceptanceStatus::Credulous);
  EXPECT_FALSE(r.notes.empty());
}

TEST(Query, UsBankAnswer) {
  QueryResult r = query(us_bank_kb(), lit("isCulprit(X, usBHack)"));
  ASSERT_EQ(r.answers.size(), 1u);
  const QueryAnswer& a = r.answers[0];
  EXPECT_EQ(to_string(a.binding), "{X = iran}");
  EXPECT_EQ(a.status, AcceptanceStatus::Sceptical);
  EXPECT_EQ(a.hypotheses,
            (std::set<Literal>{lit("specificTarget(usBHack)")}));
}

TEST(Query, ClaimAddsSecondBinding) {
  KnowledgeBase kb =
      kb_from("fact claimResp(alQassamCF, usBHack).", us_bank_kb());
  QueryResult r = query(kb, lit("isCulprit(X, usBHack)"));
  ASSERT_EQ(r.answers.size(), 2u);
  const QueryAnswer* aq = answer_for(r, "alQassamCF");
  ASSERT_NE(aq, nullptr);
  EXPECT_EQ(aq->argument.root().label, "str_1");
  EXPECT_NE(answer_for(r, "iran"), nullptr);
}

TEST(Query, EmptyKb) {
  EXPECT_TRUE(query({}, lit("isCulprit(X, a)")).answers.empty());
}

TEST(Query, PreferenceResolution) {
  KnowledgeBase kb = claim_kb(true);
  EXPECT_EQ(best(query(kb, lit("neg isCulprit(c, a)"))),
            AcceptanceStatus::Sceptical);
  for (const QueryAnswer& a : query(kb, lit("isCulprit(c, a)")).answers) {
    EXPECT_NE(a.status, AcceptanceStatus::Sceptical);
  }
  KnowledgeBase no_p1 = kb.without("p_1");
  EXPECT_EQ(best(query(no_p1, lit("neg isCulprit(c, a)"))),
            AcceptanceStatus::Credulous);
  EXPECT_EQ(best(query(no_p1, lit("isCulprit(c, a)"))),
            AcceptanceStatus::Credulous);
}

TEST(Query, SecondTargetRemovesIranFromSceptical) {
  KnowledgeBase kb =
      kb_from("fact target(other_bank, usBHack).", us_bank_kb());
  for (const QueryAnswer& a :
       query(kb, lit("isCulprit(X, usBHack)")).answers) {
    EXPECT_FALSE(to_string(a.binding) == "{X = iran}" &&
                 a.status == AcceptanceStatus::Sceptical);
  }
}

TEST(Query, SortedByStatus) {
  KnowledgeBase kb = kb_from(
      "rule a [technical]: p(X) <- q(X).\n"
      "rule b [technical]: neg p(X) <- r(X).\n"
      "fact q(one).\nfact q(two).\nfact r(one).");
  QueryResult r = query(kb, lit("p(X)"));
  ASSERT_EQ(r.answers.size(), 2u);
  EXPECT_EQ(to_string(r.answers[0].binding), "{X = two}");
  EXPECT_EQ(r.answers[0].status, AcceptanceStatus::Sceptical);
  EXPECT_EQ(r.answers[1].status, AcceptanceStatus::Credulous);
  EXPECT_FALSE(r.answers[1].attack_log.empty());
}

}  // namespace
}  // namespace abr
