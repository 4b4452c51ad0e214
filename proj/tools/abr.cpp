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

// abr: command-line front end.
//
//   abr check <files...>
//   abr query [-k kb.abr]... [-e evidence.abr]... [--max-depth N]
//             [--hints B] [--format text|json|dot] [--no-abduction] "<goal>"
//   abr scenario <name> [--expect]
//   abr serve [--port P] [--state DIR]

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "abr/corpus.hpp"
#include "abr/explanation.hpp"
#include "abr/service.hpp"

namespace {

using namespace abr;

int run_check(const std::vector<std::string>& files) {
  KnowledgeBase kb;
  bool ok = true;
  for (const std::string& file : files) {
    std::string text;
    try {
      text = read_file(file);
    } catch (const CorpusError& e) {
      std::cerr << e.what() << '\n';
      ok = false;
      continue;
    }
    ProgramParse parsed = parse_program(text);
    for (const ParseError& e : parsed.errors) {
      std::cerr << file << ':' << e.message() << '\n';
    }
    if (!parsed.ok()) {
      ok = false;
      continue;
    }
    try {
      const bool background =
          std::filesystem::path(file).filename() == "background.abr";
      kb = load_program(parsed.program, std::move(kb),
                        background ? Provenance::Background
                                   : Provenance::Evidence);
    } catch (const KbError& e) {
      std::cerr << file << ": " << e.what() << '\n';
      ok = false;
    }
  }
  if (!ok) return 1;
  const ValidationReport report = validate_kb(kb);
  for (const ValidationIssue& issue : report.issues) {
    std::cerr << to_string(issue.severity) << ": " << issue.message << '\n';
  }
  if (!report.ok()) return 1;
  std::cout << "ok: " << kb.rules().size() << " rules, " << kb.facts().size()
            << " facts, " << kb.preferences().size() << " preferences\n";
  return 0;
}

struct QueryOptions {
  std::vector<std::string> kb_files;
  std::vector<std::string> evidence_files;
  int max_depth = 32;
  std::size_t hints = 10;
  std::string format = "text";
  bool no_abduction = false;
  std::string goal;
};

int run_query(const QueryOptions& o) {
  QueryParse goal = parse_query(o.goal);
  if (!goal.literal) {
    std::cerr << "goal:" << goal.error->message() << '\n';
    return 2;
  }
  KnowledgeBase kb;
  try {
    if (o.kb_files.empty()) {
      kb = load_corpus();
    } else {
      for (const std::string& f : o.kb_files) {
        kb = load_program(parse_file(f), std::move(kb), Provenance::Background);
      }
    }
    for (const std::string& f : o.evidence_files) {
      kb = load_program(parse_file(f), std::move(kb), Provenance::Evidence);
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  QueryConfig config;
  config.derive.max_depth = o.max_depth;
  config.derive.abduction = !o.no_abduction;
  QueryResult result = Reasoner(kb, config).query(*goal.literal);
  const bool any_sceptical =
      std::any_of(result.answers.begin(), result.answers.end(),
                  [](const QueryAnswer& a) {
                    return a.status == AcceptanceStatus::Sceptical;
                  });
  std::vector<MissingEvidenceHint> hints;
  if (!any_sceptical) {
    hints = missing_evidence_hints(kb, *goal.literal, o.hints, config.derive);
  }

  if (o.format == "json") {
    nlohmann::json out = {{"goal", to_string(*goal.literal)},
                          {"answers", nlohmann::json::array()},
                          {"hints", hints_to_json(hints)}};
    for (QueryAnswer& a : result.answers) {
      out["answers"].push_back(
          to_json(kb, Explanation{*goal.literal, std::move(a), hints}));
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  }
  if (result.answers.empty()) {
    if (o.format == "text") {
      std::cout << "no answers for " << *goal.literal << '\n';
      for (const MissingEvidenceHint& h : hints) {
        std::cout << "hint: " << to_string(h) << '\n';
      }
    }
    return 0;
  }
  for (std::size_t i = 0; i < result.answers.size(); ++i) {
    Explanation e{*goal.literal, std::move(result.answers[i]), hints};
    if (o.format == "dot") {
      std::cout << to_dot(kb, e);
    } else {
      if (i > 0) std::cout << '\n';
      std::cout << to_text(kb, e);
    }
  }
  for (const std::string& note : result.notes) {
    std::cerr << "note: " << note << '\n';
  }
  return 0;
}

int run_scenario(const std::string& name, bool expect) {
  Scenario scenario;
  try {
    scenario = load_scenario(name);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  std::cout << "scenario " << scenario.bundle.name
            << (scenario.bundle.reconstruction ? " (reconstruction)" : "")
            << '\n';
  bool all = true;
  for (const QueryCheck& check : check_scenario(scenario)) {
    std::cout << "query " << check.goal << '\n';
    for (const QueryAnswer& a : check.result.answers) {
      std::cout << "  " << to_string(a.binding) << "  "
                << to_string(a.status);
      if (!a.hypotheses.empty()) {
        std::cout << "  assuming";
        for (const Literal& h : a.hypotheses) std::cout << ' ' << h;
      }
      std::cout << '\n';
    }
    if (check.result.answers.empty()) std::cout << "  no answers\n";
    if (expect) {
      std::cout << (check.passed ? "  expectation met\n"
                                 : "  expectation FAILED\n");
      for (const std::string& f : check.failures) {
        std::cout << "    " << f << '\n';
      }
    }
    all = all && check.passed;
  }
  return expect && !all ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Argumentation-based reasoner for cyber-attack attribution"};
  app.require_subcommand(1);

  std::vector<std::string> check_files;
  auto* check = app.add_subcommand("check", "Parse and validate .abr files");
  check->add_option("files", check_files)->required();

  QueryOptions q;
  auto* query = app.add_subcommand("query", "Answer a goal");
  query->add_option("-k,--kb", q.kb_files,
                    "Knowledge base file (default: shipped corpus)");
  query->add_option("-e,--evidence", q.evidence_files, "Evidence file");
  query->add_option("--max-depth", q.max_depth)->check(CLI::PositiveNumber);
  query->add_option("--hints", q.hints, "Hint bound");
  query->add_option("--format", q.format)
      ->check(CLI::IsMember({"text", "json", "dot"}));
  query->add_flag("--no-abduction", q.no_abduction);
  query->add_option("goal", q.goal)->required();

  std::string scenario_name;
  bool expect = false;
  auto* scenario = app.add_subcommand("scenario", "Run a scenario bundle");
  scenario->add_option("name", scenario_name)->required();
  scenario->add_flag("--expect", expect, "Compare with expected outcomes");

  int port = 8080;
  std::string host = "127.0.0.1";
  std::string state;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", port);
  serve->add_option("--host", host);
  serve->add_option("--state", state, "Session log directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return run_check(check_files);
    if (*query) return run_query(q);
    if (*scenario) return run_scenario(scenario_name, expect);
    if (*serve) {
      std::optional<std::filesystem::path> dir;
      if (!state.empty()) dir = state;
      return abr::serve(host, port, dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "abr: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
