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

#include "abr/inference.hpp"
#include "test_util.hpp"

namespace abr {
namespace {

using testing::kb_from;
using testing::lit;
using testing::term;
using testing::us_bank_kb;

BodyCondition cond(std::string_view text) {
  ConditionParse c = parse_condition(text);
  if (!c.condition) throw std::invalid_argument(c.error->message());
  return *c.condition;
}

std::set<std::string> leaf_labels(const ArgumentNode& n) {
  std::set<std::string> out;
  if (n.children.empty()) out.insert(n.label);
  for (const auto& c : n.children) {
    auto sub = leaf_labels(*c);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

TEST(Unify, BindsVariable) {
  auto s = unify(term("X"), term("iran"));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->resolve(term("X")), term("iran"));
}

TEST(Unify, MatchesExampleFact) {
  auto s = unify(lit("target(T, usBHack)").atom,
                 lit("target(us_banks, usBHack)").atom);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->size(), 1u);
  EXPECT_EQ(s->resolve(term("T")), term("us_banks"));
}

TEST(Unify, OccursCheckFails) {
  EXPECT_FALSE(unify(term("X"), term("[2012, X]")));
}

TEST(Unify, SignsMustAgree) {
  EXPECT_FALSE(unify(lit("p(X)"), lit("neg p(a)")));
  EXPECT_TRUE(unify(lit("neg p(X)"), lit("neg p(a)")));
}

TEST(Unify, ChainsAreResolved) {
  auto s = unify(lit("p(X, Y, [Y])").atom, lit("p(Y, Z, [a])").atom);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->apply(lit("q(X, Y, Z)")), lit("q(a, a, a)"));
}

TEST(Variant, RenamingOnly) {
  EXPECT_TRUE(is_variant(lit("p(X, Y)"), lit("p(A, B)")));
  EXPECT_FALSE(is_variant(lit("p(X, X)"), lit("p(A, B)")));
  EXPECT_FALSE(is_variant(lit("p(X)"), lit("p(a)")));
}

TEST(Builtin, DateWithinYear) {
  EXPECT_EQ(eval_builtin(cond("dateApplicable([2012, 9], [2012, 2])")),
            BuiltinResult::True);
}

TEST(Builtin, MotiveAfterAttack) {
  EXPECT_EQ(eval_builtin(cond("dateApplicable([2012, 9], [2013, 1])")),
            BuiltinResult::False);
}

TEST(Builtin, ThirteenMonths) {
  EXPECT_EQ(eval_builtin(cond("dateApplicable([2013, 3], [2012, 2])")),
            BuiltinResult::False);
}

TEST(Builtin, MonthArithmeticMatchesDirectCount) {
  // Independent count: walk month by month from the motive date.
  for (int y1 = 2010; y1 <= 2012; ++y1) {
    for (int m1 = 1; m1 <= 12; ++m1) {
      for (int y2 = 2010; y2 <= 2012; ++y2) {
        for (int m2 = 1; m2 <= 12; ++m2) {
          int steps = 0;
          int y = y2;
          int m = m2;
          bool reached = false;
          while (steps < 12) {
            if (y == y1 && m == m1) {
              reached = true;
              break;
            }
            ++steps;
            if (++m == 13) {
              m = 1;
              ++y;
            }
          }
          const std::string text = "dateApplicable([" + std::to_string(y1) +
                                   ", " + std::to_string(m1) + "], [" +
                                   std::to_string(y2) + ", " +
                                   std::to_string(m2) + "])";
          EXPECT_EQ(eval_builtin(cond(text)),
                    reached ? BuiltinResult::True : BuiltinResult::False)
              << text;
        }
      }
    }
  }
}

TEST(Builtin, NonGroundIsInstantiationError) {
  EXPECT_EQ(eval_builtin(cond("dateApplicable(D, [2012, 2])")),
            BuiltinResult::InstantiationError);
  EXPECT_EQ(eval_builtin(cond("X != a")), BuiltinResult::InstantiationError);
}

TEST(Builtin, NotEqualIsStructural) {
  EXPECT_EQ(eval_builtin(cond("a != b")), BuiltinResult::True);
  EXPECT_EQ(eval_builtin(cond("[1, a] != [1, a]")), BuiltinResult::False);
}

TEST(Derive, ReqHighResViaT4) {
  auto r = derive_all(us_bank_kb(), lit("reqHighRes(usBHack)"), {});
  ASSERT_EQ(r.derivations.size(), 1u);
  EXPECT_EQ(r.derivations[0].tree.root().label, "t_4");
}

TEST(Derive, PolMotiveBindsDate) {
  auto r = derive_all(us_bank_kb(), lit("hasPolMotive(iran, usa, D)"), {});
  ASSERT_EQ(r.derivations.size(), 1u);
  EXPECT_EQ(r.derivations[0].binding.resolve(term("D")), term("[2012, 2]"));
  EXPECT_EQ(r.derivations[0].tree.root().label, "op_4");
}

TEST(Derive, HypothesizesSpecificTarget) {
  KnowledgeBase kb = us_bank_kb();
  auto r = derive_all(kb, lit("specificTarget(usBHack)"), {});
  ASSERT_EQ(r.derivations.size(), 1u);
  EXPECT_EQ(r.derivations[0].tree.root().kind, NodeKind::Hypothesis);
  EXPECT_EQ(r.derivations[0].tree.root().label, kHypothesisLabel);

  KnowledgeBase two = kb_from("fact target(other_bank, usBHack).", kb);
  EXPECT_TRUE(derive_all(two, lit("specificTarget(usBHack)"), {})
                  .derivations.empty());
  EXPECT_TRUE(is_derivable(two, lit("neg specificTarget(usBHack)"), {}));
}

TEST(Derive, NoAbductionWhenDisabled) {
  DeriveConfig c;
  c.abduction = false;
  EXPECT_FALSE(is_derivable(us_bank_kb(), lit("specificTarget(usBHack)"), c));
}

TEST(Derive, HasResourcesOnePerCountry) {
  KnowledgeBase kb = load_corpus();
  auto r = derive_all(kb, lit("hasResources(X)"), {});
  std::set<std::string> got;
  for (const auto& d : r.derivations) {
    got.insert(to_string(d.binding.resolve(term("X"))));
  }
  // Independent recount from the background facts.
  std::set<std::string> want;
  for (const Fact& f : kb.facts()) {
    const Literal& l = f.literal;
    if (l.predicate() == "cybersuperpower") {
      want.insert(to_string(l.atom.args[0]));
    }
    if (l.predicate() == "gci_tier" && to_string(l.atom.args[1]) == "leading") {
      want.insert(to_string(l.atom.args[0]));
    }
  }
  EXPECT_FALSE(want.empty());
  EXPECT_EQ(got, want);
}

TEST(Derive, EmptyKbHasNoDerivations) {
  EXPECT_TRUE(derive_all({}, lit("isCulprit(X, a)"), {}).derivations.empty());
}

TEST(Derive, LoopCheckTerminates) {
  KnowledgeBase kb = kb_from(
      "rule r1 [technical]: p(X) <- q(X).\n"
      "rule r2 [technical]: q(X) <- p(X).\n"
      "fact q(a).");
  auto r = derive_all(kb, lit("p(X)"), {});
  ASSERT_EQ(r.derivations.size(), 1u);
  EXPECT_EQ(r.derivations[0].tree.support(),
            (std::set<std::string>{"r1", "fact_1"}));
}

TEST(Derive, DepthLimitIsReported) {
  KnowledgeBase kb = kb_from(
      "rule r1 [technical]: p(X) <- q(X).\n"
      "rule r2 [technical]: q(X) <- s(X).\n"
      "fact s(a).");
  DeriveConfig c;
  c.max_depth = 2;
  auto r = derive_all(kb, lit("p(a)"), c);
  EXPECT_TRUE(r.derivations.empty());
  EXPECT_GT(r.diagnostics.depth_exceeded, 0u);
  c.max_depth = 3;
  EXPECT_EQ(derive_all(kb, lit("p(a)"), c).derivations.size(), 1u);
}

TEST(Derive, NonGroundAbducibleIsDiagnosed) {
  KnowledgeBase kb = kb_from(
      "abducible s/1.\n"
      "rule r [technical]: p(X) <- s(Y), q(X, Y).\n"
      "fact q(a, b).");
  auto r = derive_all(kb, lit("p(X)"), {});
  EXPECT_TRUE(r.derivations.empty());
  EXPECT_FALSE(r.diagnostics.instantiation_errors.empty());
}

TEST(Derive, StreamStopsWhenSinkDeclines) {
  KnowledgeBase kb = kb_from("fact p(a).\nfact p(b).\nfact p(c).");
  int seen = 0;
  derive(kb, lit("p(X)"), {}, [&](const Derivation&) { return ++seen < 2; });
  EXPECT_EQ(seen, 2);
}

TEST(Derive, OrderIsRuleIdThenFacts) {
  KnowledgeBase kb = kb_from(
      "fact p(c).\n"
      "rule zz [technical]: p(X) <- q(X).\n"
      "rule aa [technical]: p(X) <- r(X).\n"
      "fact q(a).\nfact r(b).");
  auto r = derive_all(kb, lit("p(X)"), {});
  ASSERT_EQ(r.derivations.size(), 3u);
  EXPECT_EQ(r.derivations[0].tree.root().label, "aa");
  EXPECT_EQ(r.derivations[1].tree.root().label, "zz");
  EXPECT_EQ(r.derivations[2].tree.root().kind, NodeKind::Fact);
}

TEST(Derive, SoundOnCorpusScenarios) {
  for (const char* name : {"us_bank", "sony", "stuxnet", "conficker"}) {
    Scenario s = load_scenario(name);
    for (const char* goal :
         {"isCulprit(X, Att)", "hasCap(X, Att)", "hasMotive(X, Att)",
          "neg specificTarget(Att)", "attackPOrig(X, Att)"}) {
      for (const auto& d : derive_all(s.kb, lit(goal), {}).derivations) {
        EXPECT_EQ(validate_tree(s.kb, d.tree.root()), "") << name << goal;
      }
    }
  }
}

TEST(Derive, HypothesesAreMinimalAndConsistent) {
  for (const char* name : {"us_bank", "sony", "stuxnet", "conficker"}) {
    Scenario s = load_scenario(name);
    DeriveConfig off;
    off.abduction = false;
    for (const auto& d :
         derive_all(s.kb, lit("isCulprit(X, Att)"), {}).derivations) {
      for (const Literal& h : d.tree.hypotheses()) {
        EXPECT_FALSE(is_derivable(s.kb, complement(h), off)) << to_string(h);
        // Without the hypothesis the same tree no longer validates: the
        // leaf would have to be a fact.
        EXPECT_FALSE(is_derivable(s.kb, h, off)) << to_string(h);
      }
    }
  }
}

TEST(ValidateTree, RejectsTamperedFact) {
  KnowledgeBase kb = us_bank_kb();
  auto r = derive_all(kb, lit("reqHighRes(usBHack)"), {});
  ASSERT_EQ(r.derivations.size(), 1u);
  KnowledgeBase gone = testing::without_fact(kb, lit("highLevelSkill(usBHack)"));
  EXPECT_NE(validate_tree(gone, r.derivations[0].tree.root()), "");
}

TEST(ArgumentTree, SupportExcludesHypotheses) {
  auto r = derive_all(us_bank_kb(), lit("isCulprit(X, usBHack)"), {});
  ASSERT_FALSE(r.derivations.empty());
  const ArgumentTree& t = r.derivations[0].tree;
  EXPECT_FALSE(t.support().contains(std::string(kHypothesisLabel)));
  EXPECT_EQ(t.hypotheses(),
            (std::set<Literal>{lit("specificTarget(usBHack)")}));
  EXPECT_EQ(t.nodes().size(), t.node_count());
  EXPECT_TRUE(leaf_labels(t.root()).contains(std::string(kHypothesisLabel)));
}

}  // namespace
}  // namespace abr
