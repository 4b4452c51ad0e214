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

#include "abr/explanation.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "abr/dsl.hpp"

namespace abr {

namespace {

std::string layer_tag(const KnowledgeBase& kb, const std::string& label) {
  auto layer = kb.layer_of(label);
  return layer ? "[" + std::string(to_string(*layer)) + "]" : "";
}

std::string node_text(const ArgumentNode& n) {
  return n.kind == NodeKind::Builtin ? to_string(*n.condition)
                                     : to_string(n.conclusion);
}

std::string premise_status(const ArgumentNode& child) {
  switch (child.kind) {
    case NodeKind::Fact:
      return "[fact " + child.label + "]";
    case NodeKind::Rule:
      return "[derived by " + child.label + "]";
    case NodeKind::Hypothesis:
      return "[hypothesized]";
    case NodeKind::Builtin:
      return "[builtin]";
    case NodeKind::Missing:
      return "[missing]";
  }
  return "";
}

void text_steps(const KnowledgeBase& kb, const ArgumentNode& n,
                std::ostream& os) {
  for (const NodePtr& c : n.children) text_steps(kb, *c, os);
  os << "  ";
  switch (n.kind) {
    case NodeKind::Rule: {
      os << n.label << layer_tag(kb, n.label) << ": " << n.conclusion;
      if (!n.children.empty()) os << " <- ";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) os << ", ";
        os << node_text(*n.children[i]) << ' '
           << premise_status(*n.children[i]);
      }
      break;
    }
    case NodeKind::Fact:
      os << n.label << layer_tag(kb, n.label) << ": " << n.conclusion
         << " [fact]";
      break;
    case NodeKind::Hypothesis:
      os << "[hypothesized] " << n.conclusion;
      break;
    case NodeKind::Builtin:
      os << "[builtin] " << *n.condition;
      break;
    case NodeKind::Missing:
      os << "[missing] " << n.conclusion;
      break;
  }
  os << '\n';
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

template <typename Range>
std::vector<std::string> strings(const Range& r) {
  std::vector<std::string> out;
  for (const auto& x : r) {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::string>) {
      out.push_back(x);
    } else {
      out.push_back(to_string(x));
    }
  }
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_text(const KnowledgeBase& kb, const Explanation& e) {
  const QueryAnswer& a = e.answer;
  std::ostringstream os;
  os << "query: " << e.goal << '\n';
  os << "binding: " << to_string(a.binding) << '\n';
  os << "status: " << to_string(a.status) << '\n';
  os << "derivation:\n";
  if (a.argument.root_ptr()) text_steps(kb, a.argument.root(), os);
  os << "hypotheses: "
     << (a.hypotheses.empty() ? "none" : join(strings(a.hypotheses))) << '\n';
  os << "attacks:";
  if (a.attack_log.empty()) os << " none";
  os << '\n';
  for (const AttackRecord& r : a.attack_log) {
    os << "  " << r.counter_label << ": " << r.counter_conclusion
       << " attacks " << r.attacked_label << ": " << r.attacked << " -> "
       << to_string(r.verdict.verdict);
    if (!r.verdict.preferences.empty()) {
      os << " (" << join(r.verdict.preferences) << ')';
    }
    os << '\n';
  }
  if (!e.hints.empty()) {
    os << "hints:\n";
    for (const MissingEvidenceHint& h : e.hints) {
      os << "  " << to_string(h) << '\n';
    }
  }
  return os.str();
}

std::string to_dot(const KnowledgeBase& kb, const Explanation& e) {
  const QueryAnswer& a = e.answer;
  std::ostringstream os;
  os << "digraph explanation {\n";
  os << "  rankdir=BT;\n";
  os << "  node [fontname=\"Helvetica\"];\n";
  const std::vector<const ArgumentNode*> nodes = a.argument.root_ptr()
                                                     ? a.argument.nodes()
                                                     : std::vector<const ArgumentNode*>{};
  std::map<const ArgumentNode*, std::size_t> ids;
  for (std::size_t i = 0; i < nodes.size(); ++i) ids[nodes[i]] = i;

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const ArgumentNode& n = *nodes[i];
    os << "  n" << i << " [";
    switch (n.kind) {
      case NodeKind::Rule:
        os << "shape=box, label=\""
           << dot_escape(n.label + " " + layer_tag(kb, n.label)) << "\\n"
           << dot_escape(to_string(n.conclusion)) << "\"";
        break;
      case NodeKind::Fact:
        os << "shape=ellipse, label=\""
           << dot_escape(to_string(n.conclusion)) << "\", tooltip=\""
           << dot_escape(n.label) << "\"";
        break;
      case NodeKind::Hypothesis:
        os << "shape=ellipse, style=dashed, label=\""
           << dot_escape(to_string(n.conclusion)) << "\"";
        break;
      case NodeKind::Builtin:
        os << "shape=ellipse, style=dotted, label=\""
           << dot_escape(to_string(*n.condition)) << "\"";
        break;
      case NodeKind::Missing:
        os << "shape=ellipse, style=dashed, color=gray, label=\""
           << dot_escape(to_string(n.conclusion)) << "\"";
        break;
    }
    os << "];\n";
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (const NodePtr& c : nodes[i]->children) {
      os << "  n" << ids[c.get()] << " -> n" << i << ";\n";
    }
  }

  std::size_t k = 0;
  for (const AttackRecord& r : a.attack_log) {
    const ArgumentNode* target = nullptr;
    for (const ArgumentNode* n : nodes) {
      if (n->kind != NodeKind::Builtin && n->conclusion == r.attacked &&
          n->label == r.attacked_label) {
        target = n;
        break;
      }
    }
    if (!target) continue;
    const std::string counter = "c" + std::to_string(k++);
    os << "  " << counter << " [shape=box, style=filled, fillcolor=mistyrose, "
       << "label=\"" << dot_escape(r.counter_label) << "\\n"
       << dot_escape(to_string(r.counter_conclusion)) << "\"];\n";
    const std::string prefs = join(r.verdict.preferences);
    const std::string node = "n" + std::to_string(ids[target]);
    switch (r.verdict.verdict) {
      case Verdict::BStrictlyDefeatsA:
        os << "  " << counter << " -> " << node << " [color=red, label=\""
           << dot_escape(prefs) << "\"];\n";
        break;
      case Verdict::AStrictlyDefeatsB:
        os << "  " << node << " -> " << counter << " [color=red, label=\""
           << dot_escape(prefs) << "\"];\n";
        break;
      case Verdict::MutualAttack:
        os << "  " << counter << " -> " << node
           << " [dir=both, style=dashed, label=\"mutual\"];\n";
        break;
    }
  }
  os << "}\n";
  return os.str();
}

namespace {

nlohmann::json node_to_json(const KnowledgeBase& kb, const ArgumentNode& n) {
  nlohmann::json j;
  j["literal"] = node_text(n);
  j["kind"] = std::string(to_string(n.kind));
  if (n.kind == NodeKind::Rule) j["ruleId"] = n.label;
  if (n.kind == NodeKind::Fact) j["factId"] = n.label;
  if (auto layer = kb.layer_of(n.label);
      layer && (n.kind == NodeKind::Rule || n.kind == NodeKind::Fact)) {
    j["layer"] = std::string(to_string(*layer));
  }
  if (n.kind == NodeKind::Rule) {
    nlohmann::json b = nlohmann::json::object();
    for (const auto& [var, value] : n.bindings.bindings()) {
      b[var] = to_string(value);
    }
    j["bindings"] = std::move(b);
  }
  nlohmann::json children = nlohmann::json::array();
  for (const NodePtr& c : n.children) children.push_back(node_to_json(kb, *c));
  j["children"] = std::move(children);
  return j;
}

}  // namespace

nlohmann::json hint_to_json(const MissingEvidenceHint& hint) {
  return {
      {"kind", std::string(to_string(hint.kind))},
      {"enablingRule", hint.enabling_rule},
      {"missing", strings(hint.missing)},
      {"wouldConclude", to_string(hint.would_conclude)},
      {"hypotheses", strings(hint.hypotheses)},
      {"pending", strings(hint.pending)},
  };
}

nlohmann::json hints_to_json(const std::vector<MissingEvidenceHint>& hints) {
  nlohmann::json out = nlohmann::json::array();
  for (const MissingEvidenceHint& h : hints) out.push_back(hint_to_json(h));
  return out;
}

nlohmann::json to_json(const KnowledgeBase& kb, const Explanation& e) {
  const QueryAnswer& a = e.answer;
  nlohmann::json binding = nlohmann::json::object();
  for (const auto& [var, value] : a.binding.bindings()) {
    binding[var] = to_string(value);
  }
  nlohmann::json attacks = nlohmann::json::array();
  for (const AttackRecord& r : a.attack_log) {
    attacks.push_back({
        {"attacked", to_string(r.attacked)},
        {"attackedRule", r.attacked_label},
        {"counterRoot", to_string(r.counter_conclusion)},
        {"counterRule", r.counter_label},
        {"counterSupport", strings(r.counter_support)},
        {"counterHypotheses", strings(r.counter_hypotheses)},
        {"verdict", std::string(to_string(r.verdict.verdict))},
        {"preferences", r.verdict.preferences},
    });
  }
  nlohmann::json doc;
  doc["schema"] = kExplanationSchema;
  doc["goal"] = to_string(e.goal);
  doc["binding"] = std::move(binding);
  doc["status"] = std::string(to_string(a.status));
  doc["tree"] = a.argument.root_ptr() ? node_to_json(kb, a.argument.root())
                                      : nlohmann::json(nullptr);
  doc["hypotheses"] = strings(a.hypotheses);
  doc["attacks"] = std::move(attacks);
  doc["hints"] = hints_to_json(e.hints);
  return doc;
}

namespace {

NodeKind parse_kind(const std::string& s) {
  if (s == "fact") return NodeKind::Fact;
  if (s == "rule") return NodeKind::Rule;
  if (s == "hypothesis") return NodeKind::Hypothesis;
  if (s == "builtin") return NodeKind::Builtin;
  if (s == "missing") return NodeKind::Missing;
  throw std::invalid_argument("unknown node kind " + s);
}

NodePtr node_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("tree node is not an object");
  auto node = std::make_shared<ArgumentNode>();
  node->kind = parse_kind(j.at("kind").get<std::string>());
  const std::string text = j.at("literal").get<std::string>();
  if (node->kind == NodeKind::Builtin) {
    ConditionParse c = parse_condition(text);
    if (!c.condition || !is_builtin(*c.condition)) {
      throw std::invalid_argument("bad built-in " + text);
    }
    node->condition = *c.condition;
    node->label = "builtin";
  } else {
    QueryParse q = parse_query(text);
    if (!q.literal) throw std::invalid_argument("bad literal " + text);
    node->conclusion = *q.literal;
  }
  switch (node->kind) {
    case NodeKind::Rule:
      node->label = j.at("ruleId").get<std::string>();
      break;
    case NodeKind::Fact:
      node->label = j.at("factId").get<std::string>();
      break;
    case NodeKind::Hypothesis:
      node->label = std::string(kHypothesisLabel);
      break;
    case NodeKind::Missing:
      node->label = "missing";
      break;
    case NodeKind::Builtin:
      break;
  }
  if (auto it = j.find("bindings"); it != j.end()) {
    for (const auto& [var, value] : it->items()) {
      TermParse t = parse_term(value.get<std::string>());
      if (!t.term) throw std::invalid_argument("bad binding for " + var);
      node->bindings.bind(var, *t.term);
    }
  }
  for (const nlohmann::json& c : j.at("children")) {
    node->children.push_back(node_from_json(c));
  }
  return node;
}

}  // namespace

ArgumentTree tree_from_json(const nlohmann::json& tree) {
  try {
    return ArgumentTree(node_from_json(tree));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(e.what());
  }
}

}  // namespace abr
