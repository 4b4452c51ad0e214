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

#include "abr/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#ifndef ABR_CORPUS_DIR
#define ABR_CORPUS_DIR "corpus"
#endif

namespace abr {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path corpus_dir() {
  if (const char* env = std::getenv("ABR_CORPUS_DIR"); env && *env) {
    return fs::path(env);
  }
  return fs::path(ABR_CORPUS_DIR);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SourceProgram parse_file(const fs::path& path) {
  ProgramParse parsed = parse_program(read_file(path));
  if (!parsed.ok()) {
    std::string msg;
    for (const ParseError& e : parsed.errors) {
      msg += path.string() + ":" + e.message() + "\n";
    }
    throw CorpusError(msg);
  }
  return std::move(parsed.program);
}

KnowledgeBase load_corpus(const fs::path& dir) {
  KnowledgeBase kb = load_program(parse_file(dir / "rules.abr"));
  return load_program(parse_file(dir / "background.abr"), std::move(kb),
                      Provenance::Background);
}

namespace {

std::vector<AcceptanceStatus> parse_statuses(const json& j) {
  std::vector<AcceptanceStatus> out;
  auto one = [&](const json& s) {
    auto st = parse_status(s.get<std::string>());
    if (!st) throw CorpusError("unknown status " + s.dump());
    out.push_back(*st);
  };
  if (j.is_array()) {
    for (const json& s : j) one(s);
  } else {
    one(j);
  }
  return out;
}

ScenarioBundle parse_bundle(const fs::path& expect_file) {
  ScenarioBundle b;
  json j;
  try {
    j = json::parse(read_file(expect_file));
    b.name = j.at("name").get<std::string>();
    b.notes = j.value("notes", "");
    b.reconstruction = j.value("reconstruction", false);
    for (const json& q : j.at("queries")) {
      ExpectedQuery eq;
      eq.goal = q.at("goal").get<std::string>();
      const std::string match = q.value("match", "exact");
      if (match == "exact") {
        eq.match = MatchMode::Exact;
      } else if (match == "superset") {
        eq.match = MatchMode::Superset;
      } else {
        throw CorpusError("unknown match mode " + match);
      }
      eq.no_sceptical = q.value("noSceptical", false);
      eq.min_hints = q.value("minHints", std::size_t{0});
      eq.min_hypothesis_hints = q.value("minHypothesisHints", std::size_t{0});
      for (const json& a : q.value("answers", json::array())) {
        ExpectedAnswer ea;
        ea.binding = a.at("binding").get<std::map<std::string, std::string>>();
        ea.statuses = parse_statuses(a.at("status"));
        if (a.contains("hypotheses")) {
          ea.hypotheses = a.at("hypotheses").get<std::vector<std::string>>();
        }
        eq.answers.push_back(std::move(ea));
      }
      b.queries.push_back(std::move(eq));
    }
  } catch (const json::exception& e) {
    throw CorpusError(expect_file.string() + ": " + e.what());
  }
  b.evidence_file = expect_file.parent_path() / (b.name + ".abr");
  return b;
}

std::map<std::string, std::string> binding_strings(const Substitution& s) {
  std::map<std::string, std::string> out;
  for (const auto& [var, value] : s.bindings()) out[var] = to_string(value);
  return out;
}

std::string describe(const std::map<std::string, std::string>& binding) {
  std::string out = "{";
  for (const auto& [k, v] : binding) {
    if (out.size() > 1) out += ", ";
    out += k + " = " + v;
  }
  return out + "}";
}

}  // namespace

std::vector<ScenarioBundle> list_scenarios(const fs::path& dir) {
  std::vector<ScenarioBundle> out;
  const fs::path scenarios = dir / "scenarios";
  if (!fs::is_directory(scenarios)) return out;
  const std::string suffix = ".expect.json";
  for (const auto& entry : fs::directory_iterator(scenarios)) {
    const std::string file = entry.path().filename().string();
    if (file.size() > suffix.size() &&
        file.compare(file.size() - suffix.size(), suffix.size(), suffix) == 0) {
      out.push_back(parse_bundle(entry.path()));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ScenarioBundle& a, const ScenarioBundle& b) {
              return a.name < b.name;
            });
  return out;
}

Scenario load_scenario(const std::string& name, const fs::path& dir) {
  const fs::path expect = dir / "scenarios" / (name + ".expect.json");
  if (name.empty() || name.find('/') != std::string::npos ||
      !fs::exists(expect)) {
    throw UnknownScenario(name);
  }
  Scenario s{load_corpus(dir), parse_bundle(expect)};
  s.kb = load_program(parse_file(s.bundle.evidence_file), std::move(s.kb));
  return s;
}

std::vector<QueryCheck> check_scenario(const Scenario& scenario,
                                       const QueryConfig& config) {
  std::vector<QueryCheck> checks;
  Reasoner reasoner(scenario.kb, config);
  for (const ExpectedQuery& q : scenario.bundle.queries) {
    QueryCheck check;
    check.goal = q.goal;
    QueryParse goal = parse_query(q.goal);
    if (!goal.literal) {
      check.failures.push_back("bad goal: " + goal.error->message());
      checks.push_back(std::move(check));
      continue;
    }
    check.result = reasoner.query(*goal.literal);
    const auto& answers = check.result.answers;

    std::set<std::map<std::string, std::string>> expected;
    for (const ExpectedAnswer& ea : q.answers) {
      expected.insert(ea.binding);
      auto it = std::find_if(answers.begin(), answers.end(),
                             [&](const QueryAnswer& a) {
                               return binding_strings(a.binding) == ea.binding;
                             });
      if (it == answers.end()) {
        check.failures.push_back("missing answer " + describe(ea.binding));
        continue;
      }
      if (std::find(ea.statuses.begin(), ea.statuses.end(), it->status) ==
          ea.statuses.end()) {
        check.failures.push_back("answer " + describe(ea.binding) +
                                 " has status " +
                                 std::string(to_string(it->status)));
      }
      if (ea.hypotheses) {
        std::set<std::string> want(ea.hypotheses->begin(),
                                   ea.hypotheses->end());
        std::set<std::string> got;
        for (const Literal& h : it->hypotheses) got.insert(to_string(h));
        if (want != got) {
          check.failures.push_back("answer " + describe(ea.binding) +
                                   " has different hypotheses");
        }
      }
    }
    if (q.match == MatchMode::Exact) {
      for (const QueryAnswer& a : answers) {
        if (a.status == AcceptanceStatus::NotSupported) continue;
        auto b = binding_strings(a.binding);
        if (!expected.contains(b)) {
          check.failures.push_back("unexpected answer " + describe(b));
        }
      }
    }
    if (q.no_sceptical) {
      for (const QueryAnswer& a : answers) {
        if (a.status == AcceptanceStatus::Sceptical) {
          check.failures.push_back("unexpected sceptical answer " +
                                   describe(binding_strings(a.binding)));
        }
      }
    }
    if (q.min_hints > 0 || q.min_hypothesis_hints > 0) {
      auto hints = missing_evidence_hints(scenario.kb, *goal.literal, 10,
                                          config.derive);
      check.hint_count = hints.size();
      const auto hyp = static_cast<std::size_t>(
          std::count_if(hints.begin(), hints.end(), [](const auto& h) {
            return h.kind == HintKind::Hypothesis;
          }));
      if (hints.size() < q.min_hints) {
        check.failures.push_back("only " + std::to_string(hints.size()) +
                                 " hints");
      }
      if (hyp < q.min_hypothesis_hints) {
        check.failures.push_back("only " + std::to_string(hyp) +
                                 " hypothesis hints");
      }
    }
    check.passed = check.failures.empty();
    checks.push_back(std::move(check));
  }
  return checks;
}

}  // namespace abr
