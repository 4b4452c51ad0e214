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

// Shipped rules, background knowledge and evaluation scenarios.
//
// Layout under the corpus directory:
//   rules.abr, background.abr
//   scenarios/<name>.abr          evidence
//   scenarios/<name>.expect.json  expected query outcomes

#ifndef ABR_CORPUS_HPP_
#define ABR_CORPUS_HPP_

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "abr/argumentation.hpp"
#include "abr/dsl.hpp"
#include "abr/knowledge_base.hpp"

namespace abr {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownScenario : public CorpusError {
 public:
  explicit UnknownScenario(const std::string& name)
      : CorpusError("unknown scenario " + name), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// $ABR_CORPUS_DIR when set, else the directory configured at build time.
std::filesystem::path corpus_dir();

std::string read_file(const std::filesystem::path& path);

// Parses a .abr file; throws CorpusError listing every parse error.
SourceProgram parse_file(const std::filesystem::path& path);

// rules.abr plus background.abr (as background facts).
KnowledgeBase load_corpus(const std::filesystem::path& dir = corpus_dir());

enum class MatchMode { Exact, Superset };

struct ExpectedAnswer {
  std::map<std::string, std::string> binding;
  std::vector<AcceptanceStatus> statuses;  // any of these
  std::optional<std::vector<std::string>> hypotheses;
};

struct ExpectedQuery {
  std::string goal;
  std::vector<ExpectedAnswer> answers;
  MatchMode match = MatchMode::Exact;
  bool no_sceptical = false;
  std::size_t min_hints = 0;
  std::size_t min_hypothesis_hints = 0;
};

struct ScenarioBundle {
  std::string name;
  std::string notes;
  bool reconstruction = false;
  std::filesystem::path evidence_file;
  std::vector<ExpectedQuery> queries;
};

struct Scenario {
  KnowledgeBase kb;  // corpus plus evidence
  ScenarioBundle bundle;
};

// Sorted by name.
std::vector<ScenarioBundle> list_scenarios(
    const std::filesystem::path& dir = corpus_dir());

// Throws UnknownScenario.
Scenario load_scenario(const std::string& name,
                       const std::filesystem::path& dir = corpus_dir());

struct QueryCheck {
  std::string goal;
  bool passed = false;
  std::vector<std::string> failures;
  QueryResult result;
  std::size_t hint_count = 0;
};

std::vector<QueryCheck> check_scenario(const Scenario& scenario,
                                       const QueryConfig& config = {});

}  // namespace abr

#endif  // ABR_CORPUS_HPP_
