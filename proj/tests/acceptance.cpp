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

// Runs the end-to-end acceptance checks and prints one PASS/FAIL line each.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "abr/argumentation.hpp"
#include "abr/corpus.hpp"
#include "abr/dsl.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

namespace abr {
namespace {

namespace fs = std::filesystem;
using testing::kb_from;
using testing::lit;
using testing::without_fact;

using Clock = std::chrono::steady_clock;

class Failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string binding_value(const QueryAnswer& a, const Literal& goal) {
  const Literal bound = a.binding.apply(goal);
  std::ostringstream os;
  os << bound.atom.args.at(0);
  return os.str();
}

std::set<std::string> sceptical_culprits(const QueryResult& r) {
  std::set<std::string> out;
  for (const QueryAnswer& a : r.answers) {
    if (a.status == AcceptanceStatus::Sceptical) {
      out.insert(binding_value(a, r.goal));
    }
  }
  return out;
}

std::string criterion1() {
  Scenario s = load_scenario("us_bank");
  const Literal goal = lit("isCulprit(X, usBHack)");
  const auto start = Clock::now();
  QueryResult r = query(s.kb, goal);
  const double t = seconds_since(start);
  require(r.answers.size() == 1, "expected one answer");
  const QueryAnswer& a = r.answers[0];
  require(binding_value(a, goal) == "iran", "binding is not iran");
  require(a.status == AcceptanceStatus::Sceptical, "status is not sceptical");
  require(a.hypotheses == std::set<Literal>{lit("specificTarget(usBHack)")},
          "hypotheses differ");
  const auto& support = a.argument.support();
  for (const char* rule : {"t_4", "op_3", "op_4", "op_7", "str_3"}) {
    require(support.contains(rule), std::string("support lacks ") + rule);
  }
  bool resource = support.contains("t_8");
  for (const Fact& f : s.kb.facts()) {
    if (support.contains(f.id) && f.literal.atom.predicate == "cybersuperpower") {
      resource = true;
    }
  }
  require(resource, "no resource rule or cybersuperpower fact");
  require(t < 1.0, "took " + std::to_string(t) + " s");
  std::ostringstream os;
  os << "iran sceptical assuming specificTarget(usBHack), " << t * 1000
     << " ms";
  return os.str();
}

std::string criterion2() {
  Scenario s = load_scenario("us_bank");
  const Literal goal = lit("isCulprit(X, usBHack)");
  KnowledgeBase kb = s.kb.with_fact(lit("claimResp(alQassamCF, usBHack)"),
                                    Layer::Technical, Provenance::Evidence);
  QueryResult r = query(kb, goal);
  require(r.answers.size() == 2, "expected two bindings");
  bool via_str1 = false;
  for (const QueryAnswer& a : r.answers) {
    if (binding_value(a, goal) == "alQassamCF" &&
        a.argument.support().contains("str_1")) {
      via_str1 = true;
    }
  }
  require(via_str1, "no alQassamCF binding via str_1");
  return "second binding alQassamCF via str_1";
}

KnowledgeBase claim_kb(bool with_p1) {
  const KnowledgeBase corpus = load_corpus();
  KnowledgeBase kb;
  kb = kb.with_rule(*corpus.find_rule("str_1"));
  kb = kb.with_rule(*corpus.find_rule("str_2"));
  if (with_p1) {
    for (const PreferenceRule& p : corpus.preferences()) {
      if (p.id == "p_1") kb = kb.with_preference(p);
    }
  }
  return kb_from("fact claimResp(c, a).\nfact neg hasCap(c, a).", kb);
}

bool has_status(const QueryResult& r, AcceptanceStatus s) {
  return std::any_of(r.answers.begin(), r.answers.end(),
                     [s](const QueryAnswer& a) { return a.status == s; });
}

std::string criterion3() {
  const Literal pos = lit("isCulprit(c, a)");
  const Literal neg = lit("neg isCulprit(c, a)");
  {
    KnowledgeBase kb = claim_kb(true);
    require(kb.preferences().size() == 1, "p_1 missing from corpus");
    QueryResult n = query(kb, neg);
    QueryResult p = query(kb, pos);
    require(n.answers.size() == 1 &&
                n.answers[0].status == AcceptanceStatus::Sceptical,
            "neg isCulprit(c, a) not sceptical with p_1");
    require(!has_status(p, AcceptanceStatus::Sceptical),
            "isCulprit(c, a) sceptical with p_1");
  }
  {
    KnowledgeBase kb = claim_kb(false);
    QueryResult n = query(kb, neg);
    QueryResult p = query(kb, pos);
    require(n.answers.size() == 1 &&
                n.answers[0].status == AcceptanceStatus::Credulous,
            "neg isCulprit(c, a) not credulous without p_1");
    require(p.answers.size() == 1 &&
                p.answers[0].status == AcceptanceStatus::Credulous,
            "isCulprit(c, a) not credulous without p_1");
  }
  return "p_1 selects neg isCulprit(c, a); without it both credulous";
}

std::string criterion4() {
  Scenario s = load_scenario("us_bank");
  const Literal goal = lit("isCulprit(X, usBHack)");
  QueryResult before = query(s.kb, goal);
  require(!before.answers.empty() &&
              before.answers[0].hypotheses.contains(
                  lit("specificTarget(usBHack)")),
          "specificTarget(usBHack) not hypothesized");
  require(sceptical_culprits(before).contains("iran"),
          "iran not sceptical with one target");
  KnowledgeBase kb = s.kb.with_fact(lit("target(other_org, usBHack)"),
                                    Layer::Technical, Provenance::Evidence);
  DeriveConfig off;
  off.abduction = false;
  bool op2 = false;
  for (const Derivation& d :
       derive_all(kb, lit("neg specificTarget(usBHack)"), off).derivations) {
    if (d.tree.support().contains("op_2")) op2 = true;
  }
  require(op2, "op_2 not activated");
  QueryResult after = query(kb, goal);
  require(!sceptical_culprits(after).contains("iran"),
          "iran still sceptical with two targets");
  return "op_2 activated by a second target; iran no longer sceptical";
}

std::string criterion5() {
  QueryConfig config;
  config.derive.max_depth = 4;
  config.derive.abduction = false;
  std::mt19937 rng(20260415);
  std::size_t goals = 0;
  const auto start = Clock::now();
  for (int round = 0; round < 200; ++round) {
    const oracle::Program p = oracle::random_program(rng);
    oracle::Oracle o(p);
    Reasoner engine(oracle::to_kb(p), config);
    for (const Literal& goal : oracle::ground_literals(p)) {
      ++goals;
      const auto want = o.status(goal);
      const QueryResult got = engine.query(goal);
      const std::string where =
          "KB " + std::to_string(round) + " goal " + to_string(goal);
      if (!want) {
        require(got.answers.empty(), where + ": unexpected answer");
        continue;
      }
      require(got.answers.size() == 1, where + ": expected one answer");
      require(got.answers[0].status == *want,
              where + ": status " +
                  std::string(to_string(got.answers[0].status)) + " vs " +
                  std::string(to_string(*want)));
    }
  }
  const double t = seconds_since(start);
  require(t < 60.0, "took " + std::to_string(t) + " s");
  std::ostringstream os;
  os << "200 KBs, " << goals << " ground goals agree, " << t << " s";
  return os.str();
}

std::string criterion6() {
  {
    Scenario s = load_scenario("stuxnet");
    QueryResult r = query(s.kb, lit("isCulprit(X, stuxnet)"));
    std::set<std::string> got;
    for (const QueryAnswer& a : r.answers) got.insert(binding_value(a, r.goal));
    require(got.contains("united_states") && got.contains("israel"),
            "stuxnet culprits lack united_states or israel");
  }
  {
    Scenario s = load_scenario("sony");
    QueryResult r = query(s.kb, lit("isCulprit(X, sonyHack)"));
    std::set<std::string> got;
    for (const QueryAnswer& a : r.answers) got.insert(binding_value(a, r.goal));
    require(got == std::set<std::string>{"north_korea", "iran",
                                         "guardians_of_peace"},
            "sony bindings differ");
  }
  {
    Scenario s = load_scenario("conficker");
    const Literal goal = lit("isCulprit(X, conficker)");
    QueryResult r = query(s.kb, goal);
    require(sceptical_culprits(r).empty(), "conficker has a sceptical culprit");
    require(!missing_evidence_hints(s.kb, goal).empty(), "conficker no hints");
  }
  for (const ScenarioBundle& b : list_scenarios()) {
    require(!b.notes.empty(), b.name + " lacks notes");
  }
  return "stuxnet, sony and conficker outcomes hold";
}

std::string criterion7() {
  std::size_t files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(corpus_dir())) {
    if (entry.path().extension() != ".abr") continue;
    ++files;
    const std::string name = entry.path().filename().string();
    ProgramParse first = parse_program(read_file(entry.path()));
    require(first.ok(), name + " does not parse");
    const std::string rendered = render_program(first.program);
    ProgramParse second = parse_program(rendered);
    require(second.ok(), name + " rendering does not parse");
    require(second.program == first.program, name + " changes on round trip");
    require(render_program(second.program) == rendered,
            name + " rendering is not a fixpoint");
  }
  require(files >= 6, "too few .abr files");
  std::size_t errors = validate_kb(load_corpus()).count(Severity::Error);
  for (const ScenarioBundle& b : list_scenarios()) {
    errors += validate_kb(load_scenario(b.name).kb).count(Severity::Error);
  }
  require(errors == 0, std::to_string(errors) + " validation errors");
  return std::to_string(files) + " files round-trip, zero validation errors";
}

std::string criterion8() {
  const std::vector<std::string> facts{"target(us_banks, usBHack)",
                                       "targetCountry(usa, usBHack)",
                                       "attackPeriod(usBHack, [2012, 9])",
                                       "highLevelSkill(usBHack)",
                                       "malwareUsed(itsOKnp, usBHack)",
                                       "imposedSanc(usa, iran, [2012, 2])"};
  Scenario conficker = load_scenario("conficker");
  for (std::size_t b = 1; b <= 5; ++b) {
    const auto hints =
        missing_evidence_hints(conficker.kb, lit("isCulprit(X, conficker)"), b);
    require(hints.size() <= b, "bound " + std::to_string(b) + " exceeded");
  }
  const KnowledgeBase us_bank = load_scenario("us_bank").kb;
  std::vector<std::string> named;
  for (const std::string& f : facts) {
    const Literal deleted = lit(f);
    KnowledgeBase kb = without_fact(us_bank, deleted);
    const auto hints =
        missing_evidence_hints(kb, lit("isCulprit(X, usBHack)"), 10);
    require(hints.size() <= 10, "bound 10 exceeded");
    for (const MissingEvidenceHint& h : hints) {
      if (h.kind == HintKind::MissingPremise && h.missing.size() == 1 &&
          unify(h.missing[0], deleted)) {
        named.push_back(f);
        break;
      }
    }
  }
  require(named.size() >= 4,
          "only " + std::to_string(named.size()) + " of 6 facts named");
  return "bounds hold; " + std::to_string(named.size()) +
         " of 6 deleted facts named";
}

}  // namespace
}  // namespace abr

int main() {
  const std::vector<std::pair<const char*, std::function<std::string()>>>
      criteria{{"us_bank end to end", abr::criterion1},
               {"iterative update", abr::criterion2},
               {"preference resolution", abr::criterion3},
               {"abduction and non-monotonicity", abr::criterion4},
               {"oracle equivalence", abr::criterion5},
               {"scenario regression", abr::criterion6},
               {"DSL round trip", abr::criterion7},
               {"hint bound", abr::criterion8}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      detail = criteria[i].second();
      ok = true;
    } catch (const std::exception& e) {
      detail = e.what();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << " ("
              << criteria[i].first << "): " << detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
