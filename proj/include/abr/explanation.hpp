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

// Text, Graphviz and JSON renderings of query answers.
//
// JSON document ("schema": "abr-explanation/1"):
//
//   {
//     "schema": "abr-explanation/1",
//     "goal": "isCulprit(X, usBHack)",
//     "binding": {"X": "iran"},
//     "status": "sceptical" | "credulous" | "notSupported",
//     "tree": {
//       "literal": "...",            // condition text for built-ins
//       "kind": "rule" | "fact" | "hypothesis" | "builtin",
//       "ruleId": "...",             // rule nodes
//       "factId": "...",             // fact nodes
//       "layer": "...",              // rule and fact nodes
//       "bindings": {"Var": "term"}, // rule nodes
//       "children": [ ... ]
//     },
//     "hypotheses": ["specificTarget(usBHack)"],
//     "attacks": [{"attacked", "attackedRule", "counterRoot", "counterRule",
//                  "counterSupport", "counterHypotheses", "verdict",
//                  "preferences"}],
//     "hints": [{"kind", "enablingRule", "missing", "wouldConclude",
//                "hypotheses", "pending"}]
//   }

#ifndef ABR_EXPLANATION_HPP_
#define ABR_EXPLANATION_HPP_

#include <string>
#include <vector>

#include "abr/argumentation.hpp"
#include "abr/inference.hpp"
#include "abr/knowledge_base.hpp"
#include "json.hpp"

namespace abr {

inline constexpr const char* kExplanationSchema = "abr-explanation/1";

struct Explanation {
  Literal goal;
  QueryAnswer answer;
  std::vector<MissingEvidenceHint> hints;
};

// `kb` supplies layers for rule and fact labels.
std::string to_text(const KnowledgeBase& kb, const Explanation& e);
std::string to_dot(const KnowledgeBase& kb, const Explanation& e);
nlohmann::json to_json(const KnowledgeBase& kb, const Explanation& e);

nlohmann::json hint_to_json(const MissingEvidenceHint& hint);
nlohmann::json hints_to_json(const std::vector<MissingEvidenceHint>& hints);

// Rebuilds the argument tree of a to_json document (its "tree" member).
// Throws std::invalid_argument on malformed input.
ArgumentTree tree_from_json(const nlohmann::json& tree);

}  // namespace abr

#endif  // ABR_EXPLANATION_HPP_
