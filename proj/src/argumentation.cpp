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

#include "abr/argumentation.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <utility>

namespace abr {

std::string_view to_string(AcceptanceStatus s) {
  switch (s) {
    case AcceptanceStatus::Sceptical:
      return "sceptical";
    case AcceptanceStatus::Credulous:
      return "credulous";
    case AcceptanceStatus::NotSupported:
      return "notSupported";
  }
  return "notSupported";
}

std::optional<AcceptanceStatus> parse_status(std::string_view text) {
  if (text == "sceptical") return AcceptanceStatus::Sceptical;
  if (text == "credulous") return AcceptanceStatus::Credulous;
  if (text == "notSupported") return AcceptanceStatus::NotSupported;
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::AStrictlyDefeatsB:
      return "AStrictlyDefeatsB";
    case Verdict::BStrictlyDefeatsA:
      return "BStrictlyDefeatsA";
    case Verdict::MutualAttack:
      return "MutualAttack";
  }
  return "MutualAttack";
}

namespace {

struct GameLimit {};

struct ConflictRef {
  const ArgumentNode* node;  // in the attacked argument
  std::size_t counter;
};

int rank(AcceptanceStatus s) {
  switch (s) {
    case AcceptanceStatus::Sceptical:
      return 0;
    case AcceptanceStatus::Credulous:
      return 1;
    case AcceptanceStatus::NotSupported:
      return 2;
  }
  return 2;
}

bool contradicts(const std::set<Literal>& hyps, const std::set<Literal>& other,
                 const KnowledgeBase& kb) {
  for (const Literal& h : hyps) {
    const Literal c = complement(h);
    if (other.contains(c)) return true;
    for (std::size_t i : kb.facts_for(c)) {
      if (kb.facts()[i].literal == c) return true;
    }
  }
  return false;
}

}  // namespace

struct Reasoner::Impl {
  Reasoner& owner;
  bool priorities_ready = false;
  // higher -> (lower, preference id)
  std::map<std::string, std::vector<std::pair<std::string, std::string>>>
      edges;
  std::map<std::pair<std::string, std::string>,
           std::optional<std::vector<std::string>>>
      paths;

  std::deque<ArgumentTree> args;
  std::map<ArgumentKey, std::size_t> index;
  std::map<Literal, std::vector<std::size_t>> counters_by_literal;
  std::map<std::size_t, std::vector<ConflictRef>> conflicts;
  std::map<std::size_t, std::vector<std::size_t>> moves_cache;
  std::map<std::size_t, std::vector<std::size_t>> replies_cache;
  std::size_t game_steps = 0;

  explicit Impl(Reasoner& r) : owner(r) {}

  void build_priorities() {
    if (priorities_ready) return;
    priorities_ready = true;
    const KnowledgeBase& kb = owner.kb_;
    KnowledgeBase bodies = kb;
    for (const PreferenceRule& p : kb.preferences()) {
      if (p.body.empty()) continue;
      ArgumentRule r{"__pref_" + p.id, Layer::Background,
                     Literal{Atom{"__pref_" + p.id, {}}, true}, p.body};
      bodies = std::move(bodies).with_rule(std::move(r));
    }
    DeriveConfig strict = owner.config_.derive;
    strict.abduction = false;
    ++strict.max_depth;  // the synthetic head occupies one level
    for (const PreferenceRule& p : kb.preferences()) {
      bool holds = p.body.empty();
      if (!holds) {
        holds = is_derivable(bodies, Literal{Atom{"__pref_" + p.id, {}}, true},
                             strict);
      }
      if (holds) edges[p.higher].emplace_back(p.lower, p.id);
    }
  }

  // Preference ids along a shortest chain higher -> ... -> lower.
  const std::optional<std::vector<std::string>>& path(const std::string& from,
                                                      const std::string& to) {
    build_priorities();
    auto key = std::make_pair(from, to);
    if (auto it = paths.find(key); it != paths.end()) return it->second;
    std::map<std::string, std::pair<std::string, std::string>> parent;
    std::set<std::string> seen{from};
    std::queue<std::string> frontier;
    frontier.push(from);
    std::optional<std::vector<std::string>> found;
    while (!frontier.empty() && !found) {
      const std::string cur = frontier.front();
      frontier.pop();
      auto it = edges.find(cur);
      if (it == edges.end()) continue;
      for (const auto& [next, pref] : it->second) {
        if (next == to) {
          std::vector<std::string> chain{pref};
          for (std::string n = cur; n != from;) {
            const auto& [prev, via] = parent.at(n);
            chain.push_back(via);
            n = prev;
          }
          std::reverse(chain.begin(), chain.end());
          found = std::move(chain);
          break;
        }
        if (seen.insert(next).second) {
          parent.emplace(next, std::make_pair(cur, pref));
          frontier.push(next);
        }
      }
    }
    return paths.emplace(key, std::move(found)).first->second;
  }

  bool priority(const std::string& higher, const std::string& lower) {
    if (higher == kHypothesisLabel) return false;
    if (lower == kHypothesisLabel) return true;
    return path(higher, lower).has_value();
  }

  bool strictly(const std::string& a, const std::string& b) {
    return priority(a, b) && !priority(b, a);
  }

  DefeatVerdict verdict(const std::string& a, const std::string& b) {
    DefeatVerdict v;
    const bool ab = priority(a, b);
    const bool ba = priority(b, a);
    auto append = [&](const std::string& x, const std::string& y) {
      if (x == kHypothesisLabel || y == kHypothesisLabel) return;
      if (const auto& p = path(x, y)) {
        v.preferences.insert(v.preferences.end(), p->begin(), p->end());
      }
    };
    if (ab && !ba) {
      v.verdict = Verdict::AStrictlyDefeatsB;
      append(a, b);
    } else if (ba && !ab) {
      v.verdict = Verdict::BStrictlyDefeatsA;
      append(b, a);
    } else {
      v.verdict = Verdict::MutualAttack;
      if (ab) {
        append(a, b);
        append(b, a);
      }
    }
    return v;
  }

  std::size_t intern(const ArgumentTree& tree) {
    ArgumentKey key = key_of(tree);
    if (auto it = index.find(key); it != index.end()) return it->second;
    args.push_back(tree);
    index.emplace(std::move(key), args.size() - 1);
    return args.size() - 1;
  }

  const std::vector<std::size_t>& counters(const Literal& l) {
    if (auto it = counters_by_literal.find(l); it != counters_by_literal.end()) {
      return it->second;
    }
    DeriveResult r = derive_all(owner.kb_, complement(l), owner.config_.derive);
    owner.diagnostics_.merge(r.diagnostics);
    std::vector<std::size_t> ids;
    for (const Derivation& d : r.derivations) {
      std::size_t id = intern(d.tree);
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    return counters_by_literal.emplace(l, std::move(ids)).first->second;
  }

  const std::vector<ConflictRef>& conflicts_of(std::size_t x) {
    if (auto it = conflicts.find(x); it != conflicts.end()) return it->second;
    std::vector<ConflictRef> out;
    const std::vector<const ArgumentNode*> nodes = args[x].nodes();
    for (const ArgumentNode* n : nodes) {
      if (n->kind == NodeKind::Builtin) continue;
      const std::vector<std::size_t> found = counters(n->conclusion);
      for (std::size_t c : found) {
        if (contradicts(args[c].hypotheses(), args[x].hypotheses(),
                        owner.kb_)) {
          continue;
        }
        out.push_back({n, c});
      }
    }
    return conflicts.emplace(x, std::move(out)).first->second;
  }

  const std::vector<std::size_t>& moves(std::size_t x) {
    if (auto it = moves_cache.find(x); it != moves_cache.end()) {
      return it->second;
    }
    std::vector<std::size_t> out;
    const std::vector<ConflictRef> refs = conflicts_of(x);
    for (const ConflictRef& r : refs) {
      if (strictly(r.node->label, args[r.counter].root().label)) continue;
      if (std::find(out.begin(), out.end(), r.counter) == out.end()) {
        out.push_back(r.counter);
      }
    }
    return moves_cache.emplace(x, std::move(out)).first->second;
  }

  const std::vector<std::size_t>& replies(std::size_t b) {
    if (auto it = replies_cache.find(b); it != replies_cache.end()) {
      return it->second;
    }
    std::vector<std::size_t> out;
    const std::vector<ConflictRef> refs = conflicts_of(b);
    for (const ConflictRef& r : refs) {
      if (!strictly(args[r.counter].root().label, r.node->label)) continue;
      if (std::find(out.begin(), out.end(), r.counter) == out.end()) {
        out.push_back(r.counter);
      }
    }
    return replies_cache.emplace(b, std::move(out)).first->second;
  }

  static bool used(const std::vector<std::size_t>& history, std::size_t a) {
    return std::find(history.begin(), history.end(), a) != history.end();
  }

  bool answered(std::size_t b, std::vector<std::size_t>& history) {
    const std::vector<std::size_t> options = replies(b);
    for (std::size_t c : options) {
      if (used(history, c)) continue;
      history.push_back(c);
      const bool ok = wins(c, history);
      history.pop_back();
      if (ok) return true;
    }
    return false;
  }

  // The proponent of `x` (last in `history`) can answer every opponent move.
  bool wins(std::size_t x, std::vector<std::size_t>& history) {
    if (++game_steps > owner.config_.max_game_moves ||
        history.size() > owner.config_.max_game_depth) {
      throw GameLimit{};
    }
    const std::vector<std::size_t> options = moves(x);
    for (std::size_t b : options) {
      if (used(history, b)) continue;
      history.push_back(b);
      const bool ok = answered(b, history);
      history.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  AttackRecord record(std::size_t x, const ConflictRef& r) {
    const ArgumentTree& counter = args[r.counter];
    AttackRecord rec;
    rec.attacked = r.node->conclusion;
    rec.attacked_label = r.node->label;
    rec.counter_conclusion = counter.conclusion();
    rec.counter_label = counter.root().label;
    rec.counter_support = counter.support();
    rec.counter_hypotheses = counter.hypotheses();
    rec.verdict = verdict(r.node->label, counter.root().label);
    (void)x;
    return rec;
  }

  Acceptance accept(std::size_t x) {
    Acceptance result;
    const std::vector<ConflictRef> refs = conflicts_of(x);
    for (const ConflictRef& r : refs) result.attack_log.push_back(record(x, r));

    game_steps = 0;
    try {
      std::vector<std::size_t> history{x};
      std::set<std::size_t> unanswered;
      for (std::size_t b : moves(x)) {
        if (used(history, b)) continue;
        history.push_back(b);
        if (!answered(b, history)) unanswered.insert(b);
        history.pop_back();
      }
      if (unanswered.empty()) {
        result.status = AcceptanceStatus::Sceptical;
        return result;
      }
      result.status = AcceptanceStatus::Credulous;
      for (const ConflictRef& r : refs) {
        if (unanswered.contains(r.counter) &&
            strictly(args[r.counter].root().label, r.node->label)) {
          result.status = AcceptanceStatus::NotSupported;
          break;
        }
      }
    } catch (const GameLimit&) {
      result.status = AcceptanceStatus::Credulous;
      result.game_limit_hit = true;
    }
    return result;
  }
};

Reasoner::Reasoner(KnowledgeBase kb, QueryConfig config)
    : kb_(std::move(kb)),
      config_(config),
      impl_(std::make_unique<Impl>(*this)) {}

Reasoner::~Reasoner() = default;

bool Reasoner::rule_priority(std::string_view higher, std::string_view lower) {
  return impl_->priority(std::string(higher), std::string(lower));
}

std::vector<std::string> Reasoner::justifying_preferences(
    std::string_view higher, std::string_view lower) {
  const auto& p = impl_->path(std::string(higher), std::string(lower));
  return p ? *p : std::vector<std::string>{};
}

std::vector<Conflict> Reasoner::find_conflicts(const ArgumentTree& a) {
  const std::size_t x = impl_->intern(a);
  std::vector<Conflict> out;
  const ArgumentTree& stored = impl_->args[x];
  // Map nodes of the stored tree back onto `a` by pre-order position.
  const auto stored_nodes = stored.nodes();
  const auto own_nodes = a.nodes();
  for (const ConflictRef& r : impl_->conflicts_of(x)) {
    const ArgumentNode* node = r.node;
    if (stored_nodes.size() == own_nodes.size()) {
      auto pos = std::find(stored_nodes.begin(), stored_nodes.end(), r.node);
      node = own_nodes[static_cast<std::size_t>(pos - stored_nodes.begin())];
    }
    const ArgumentTree& counter = impl_->args[r.counter];
    out.push_back(Conflict{counter, ConflictPoint{node, &counter.root(),
                                                  node->conclusion}});
  }
  return out;
}

DefeatVerdict Reasoner::decide_defeat(const ConflictPoint& conflict) {
  return impl_->verdict(conflict.in_a->label, conflict.in_b->label);
}

Acceptance Reasoner::accept(const ArgumentTree& a) {
  return impl_->accept(impl_->intern(a));
}

QueryResult Reasoner::query(const Literal& goal) {
  QueryResult result;
  result.goal = goal;
  DeriveResult derived = derive_all(kb_, goal, config_.derive);
  diagnostics_.merge(derived.diagnostics);

  std::vector<Substitution> order;
  std::map<Substitution, std::vector<const Derivation*>> groups;
  for (const Derivation& d : derived.derivations) {
    auto [it, inserted] = groups.try_emplace(d.binding);
    if (inserted) order.push_back(d.binding);
    it->second.push_back(&d);
  }

  bool limit_hit = false;
  for (const Substitution& binding : order) {
    std::optional<QueryAnswer> best;
    for (const Derivation* d : groups[binding]) {
      Acceptance acc = accept(d->tree);
      limit_hit = limit_hit || acc.game_limit_hit;
      if (best && rank(acc.status) >= rank(best->status)) continue;
      best = QueryAnswer{binding, acc.status, d->tree, d->tree.hypotheses(),
                         std::move(acc.attack_log)};
      if (best->status == AcceptanceStatus::Sceptical) break;
    }
    result.answers.push_back(std::move(*best));
  }
  std::stable_sort(result.answers.begin(), result.answers.end(),
                   [](const QueryAnswer& a, const QueryAnswer& b) {
                     return rank(a.status) < rank(b.status);
                   });
  if (limit_hit) {
    result.notes.push_back(
        "game limit exceeded; affected answers degraded to credulous");
  }
  result.diagnostics = diagnostics_;
  return result;
}

bool rule_priority(const KnowledgeBase& kb, std::string_view higher,
                   std::string_view lower) {
  return Reasoner(kb).rule_priority(higher, lower);
}

std::vector<Conflict> find_conflicts(const KnowledgeBase& kb,
                                     const ArgumentTree& a,
                                     const QueryConfig& config) {
  return Reasoner(kb, config).find_conflicts(a);
}

DefeatVerdict decide_defeat(const KnowledgeBase& kb,
                            const ConflictPoint& conflict) {
  return Reasoner(kb).decide_defeat(conflict);
}

Acceptance accept(const KnowledgeBase& kb, const ArgumentTree& a,
                  const QueryConfig& config) {
  return Reasoner(kb, config).accept(a);
}

QueryResult query(const KnowledgeBase& kb, const Literal& goal,
                  const QueryConfig& config) {
  return Reasoner(kb, config).query(goal);
}

}  // namespace abr
