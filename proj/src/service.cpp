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

#include "abr/service.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "abr/explanation.hpp"
#include "httplib.h"

namespace abr {

namespace fs = std::filesystem;
using nlohmann::json;

json ServiceError::body() const {
  json b = {{"error", what()}, {"status", status_}};
  if (!details_.is_null()) b["details"] = details_;
  return b;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string now_utc() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string random_id() {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard<std::mutex> lock(mu);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(rng()));
  return buf;
}

json error_json(const ParseError& e) {
  return {{"line", e.line},
          {"column", e.column},
          {"expected", e.expected},
          {"lexeme", e.lexeme},
          {"message", e.message()}};
}

std::string fact_text(const FactStmt& f) {
  return (f.id ? *f.id + ": " : std::string()) + to_string(f.literal);
}

struct Evidence {
  std::uint64_t seq = 0;
  std::string text;
  FactStmt fact;
  std::string time;
  bool retracted = false;
};

struct Op {
  bool assert = true;
  std::uint64_t seq = 0;
};

struct QueryRecord {
  std::string qid;
  std::string goal;
  int max_depth = 32;
  std::size_t hints = 10;
  bool abduction = true;
  std::size_t position = 0;  // number of evidence operations applied
  std::string digest;
  std::string time;
};

struct Computed {
  KnowledgeBase kb;
  json response;
  std::vector<Explanation> explanations;
};

}  // namespace

struct SessionStore::Session {
  std::mutex mu;
  std::string id;
  std::optional<std::string> scenario;
  std::string created;
  std::vector<Op> ops;
  std::map<std::uint64_t, Evidence> evidence;
  std::vector<QueryRecord> queries;
  std::map<std::string, std::shared_ptr<Computed>> computed;
  std::uint64_t next_seq = 1;
  std::optional<fs::path> log_path;

  void append(const json& record) {
    if (!log_path) return;
    std::ofstream out(*log_path, std::ios::app);
    out << record.dump() << '\n';
    out.flush();
    if (!out) throw ServiceError(500, "cannot write " + log_path->string());
  }

  KnowledgeBase kb_at(const KnowledgeBase& corpus, std::size_t position) const {
    std::vector<std::uint64_t> active;
    for (std::size_t i = 0; i < position && i < ops.size(); ++i) {
      if (ops[i].assert) {
        active.push_back(ops[i].seq);
      } else {
        std::erase(active, ops[i].seq);
      }
    }
    KnowledgeBase kb = corpus;
    std::set<Literal> seen;
    for (std::uint64_t seq : active) {
      const FactStmt& f = evidence.at(seq).fact;
      if (!seen.insert(f.literal).second) continue;
      try {
        kb = std::move(kb).with_fact(f.literal, Layer::Technical,
                                     Provenance::Evidence, f.id);
      } catch (const KbError&) {
        // Rejected at assert time; a replayed log can only get here if the
        // corpus changed underneath it.
      }
    }
    return kb;
  }

  Evidence& assert_fact(FactStmt fact, std::string time) {
    Evidence e{next_seq++, fact_text(fact), std::move(fact), std::move(time),
               false};
    ops.push_back({true, e.seq});
    return evidence.emplace(e.seq, std::move(e)).first->second;
  }
};

SessionStore::SessionStore(std::optional<fs::path> state_dir, fs::path corpus)
    : state_dir_(std::move(state_dir)), corpus_dir_(std::move(corpus)) {
  try {
    corpus_ = load_corpus(corpus_dir_);
  } catch (const std::exception& e) {
    throw ServiceError(500, std::string("cannot load corpus: ") + e.what());
  }
  if (!state_dir_) return;
  fs::create_directories(*state_dir_);
  std::vector<fs::path> logs;
  for (const auto& entry : fs::directory_iterator(*state_dir_)) {
    if (entry.path().extension() == ".jsonl") logs.push_back(entry.path());
  }
  std::sort(logs.begin(), logs.end());
  for (const fs::path& p : logs) replay(p);
}

SessionStore::~SessionStore() = default;

void SessionStore::replay(const fs::path& log) {
  std::ifstream in(log);
  auto s = std::make_shared<Session>();
  s->log_path = log;
  std::string line;
  bool created = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json r = json::parse(line, nullptr, false);
    if (r.is_discarded()) continue;
    const std::string type = r.value("type", "");
    if (type == "create") {
      s->id = r.at("sessionId").get<std::string>();
      if (r.contains("scenario") && r["scenario"].is_string()) {
        s->scenario = r["scenario"].get<std::string>();
      }
      s->created = r.value("time", "");
      created = true;
    } else if (type == "assert") {
      FactParse f = parse_fact(r.at("fact").get<std::string>());
      if (!f.fact) continue;
      s->next_seq = r.at("seq").get<std::uint64_t>();
      s->assert_fact(std::move(*f.fact), r.value("time", ""));
    } else if (type == "retract") {
      const auto seq = r.at("seq").get<std::uint64_t>();
      auto it = s->evidence.find(seq);
      if (it == s->evidence.end()) continue;
      it->second.retracted = true;
      s->ops.push_back({false, seq});
    } else if (type == "query") {
      QueryRecord q;
      q.qid = r.at("qid").get<std::string>();
      q.goal = r.at("goal").get<std::string>();
      q.max_depth = r.value("maxDepth", 32);
      q.hints = r.value("hints", std::size_t{10});
      q.abduction = r.value("abduction", true);
      q.position = r.at("position").get<std::size_t>();
      q.digest = r.value("digest", "");
      q.time = r.value("time", "");
      s->queries.push_back(std::move(q));
    }
  }
  if (created && !s->id.empty()) sessions_[s->id] = s;
}

std::shared_ptr<SessionStore::Session> SessionStore::find(
    const std::string& id) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "unknown session " + id);
  return it->second;
}

std::size_t SessionStore::session_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sessions_.size();
}

json SessionStore::create_session(const std::optional<std::string>& scenario) {
  auto s = std::make_shared<Session>();
  s->created = now_utc();
  s->scenario = scenario;
  SourceProgram evidence;
  if (scenario) {
    try {
      Scenario sc = load_scenario(*scenario, corpus_dir_);
      evidence = parse_file(sc.bundle.evidence_file);
    } catch (const UnknownScenario&) {
      throw ServiceError(400, "unknown scenario " + *scenario);
    } catch (const CorpusError& e) {
      throw ServiceError(500, e.what());
    }
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    do {
      s->id = random_id();
    } while (sessions_.contains(s->id));
    if (state_dir_) s->log_path = *state_dir_ / (s->id + ".jsonl");
  }
  json create = {{"type", "create"},
                 {"sessionId", s->id},
                 {"scenario", scenario ? json(*scenario) : json(nullptr)},
                 {"time", s->created}};
  s->append(create);
  for (const Statement& stmt : evidence.statements) {
    if (const auto* f = std::get_if<FactStmt>(&stmt)) {
      Evidence& e = s->assert_fact(*f, s->created);
      s->append({{"type", "assert"},
                 {"seq", e.seq},
                 {"fact", e.text},
                 {"time", e.time}});
    }
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    sessions_[s->id] = s;
  }
  return {{"sessionId", s->id}};
}

json SessionStore::get_session(const std::string& id) {
  auto s = find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  json evidence = json::array();
  for (const auto& [seq, e] : s->evidence) {
    evidence.push_back({{"seq", seq},
                        {"fact", e.text},
                        {"time", e.time},
                        {"retracted", e.retracted}});
  }
  json queries = json::array();
  for (const QueryRecord& q : s->queries) {
    queries.push_back({{"qid", q.qid},
                       {"goal", q.goal},
                       {"time", q.time},
                       {"digest", q.digest}});
  }
  return {{"sessionId", s->id},
          {"scenario", s->scenario ? json(*s->scenario) : json(nullptr)},
          {"created", s->created},
          {"evidence", std::move(evidence)},
          {"queries", std::move(queries)}};
}

json SessionStore::add_evidence(const std::string& id,
                                const std::string& fact) {
  auto s = find(id);
  FactParse parsed = parse_fact(fact);
  if (!parsed.fact) {
    throw ServiceError(422, "parse error",
                       json{{"errors", json::array({error_json(*parsed.error)})}});
  }
  std::lock_guard<std::mutex> lock(s->mu);
  try {
    (void)s->kb_at(corpus_, s->ops.size())
        .with_fact(parsed.fact->literal, Layer::Technical,
                   Provenance::Evidence, parsed.fact->id);
  } catch (const KbError& e) {
    throw ServiceError(422, e.what(),
                       json{{"code", std::string(to_string(e.code()))}});
  }
  const std::string time = now_utc();
  Evidence& e = s->assert_fact(std::move(*parsed.fact), time);
  s->append({{"type", "assert"},
             {"seq", e.seq},
             {"fact", e.text},
             {"time", time}});
  return {{"seq", e.seq}};
}

json SessionStore::retract_evidence(const std::string& id, std::uint64_t seq) {
  auto s = find(id);
  std::lock_guard<std::mutex> lock(s->mu);
  auto it = s->evidence.find(seq);
  if (it == s->evidence.end()) {
    throw ServiceError(404, "unknown evidence seq " + std::to_string(seq));
  }
  if (it->second.retracted) {
    throw ServiceError(409, "evidence " + std::to_string(seq) +
                                " is already retracted");
  }
  it->second.retracted = true;
  s->ops.push_back({false, seq});
  s->append({{"type", "retract"}, {"seq", seq}, {"time", now_utc()}});
  return {{"seq", seq}, {"retracted", true}};
}

namespace {

std::shared_ptr<Computed> evaluate(const KnowledgeBase& kb,
                                   const QueryRecord& q) {
  QueryParse goal = parse_query(q.goal);
  if (!goal.literal) {
    throw ServiceError(422, "parse error",
                       json{{"errors", json::array({error_json(*goal.error)})}});
  }
  QueryConfig config;
  config.derive.max_depth = q.max_depth;
  config.derive.abduction = q.abduction;
  Reasoner reasoner(kb, config);
  QueryResult result = reasoner.query(*goal.literal);

  std::vector<MissingEvidenceHint> hints;
  const bool any_sceptical =
      std::any_of(result.answers.begin(), result.answers.end(),
                  [](const QueryAnswer& a) {
                    return a.status == AcceptanceStatus::Sceptical;
                  });
  if (!any_sceptical) {
    hints = missing_evidence_hints(kb, *goal.literal, q.hints, config.derive);
  }

  auto c = std::make_shared<Computed>();
  c->kb = kb;
  json answers = json::array();
  for (QueryAnswer& a : result.answers) {
    Explanation e{*goal.literal, std::move(a), hints};
    answers.push_back(to_json(kb, e));
    c->explanations.push_back(std::move(e));
  }
  json diagnostics = {
      {"depthExceeded", result.diagnostics.depth_exceeded},
      {"stepLimitHit", result.diagnostics.step_limit_hit},
      {"instantiationErrors", result.diagnostics.instantiation_errors},
      {"notes", result.notes}};
  c->response = {{"qid", q.qid},
                 {"goal", to_string(*goal.literal)},
                 {"answers", std::move(answers)},
                 {"hints", hints_to_json(hints)},
                 {"diagnostics", std::move(diagnostics)}};
  return c;
}

std::string digest_of(const json& response) {
  return fnv1a_hex(response.at("answers").dump() +
                   response.at("hints").dump());
}

}  // namespace

json SessionStore::run_query(const std::string& id, const json& request) {
  auto s = find(id);
  if (!request.is_object() || !request.contains("goal") ||
      !request["goal"].is_string()) {
    throw ServiceError(400, "request needs a string field \"goal\"");
  }
  QueryRecord q;
  q.goal = request["goal"].get<std::string>();
  try {
    q.max_depth = request.value("maxDepth", 32);
    q.hints = request.value("hints", std::size_t{10});
    q.abduction = request.value("abduction", true);
  } catch (const json::exception& e) {
    throw ServiceError(400, e.what());
  }
  if (q.max_depth < 1) throw ServiceError(400, "maxDepth must be positive");

  std::lock_guard<std::mutex> lock(s->mu);
  q.position = s->ops.size();
  q.qid = "q" + std::to_string(s->queries.size() + 1);
  q.time = now_utc();
  auto computed = evaluate(s->kb_at(corpus_, q.position), q);
  q.digest = digest_of(computed->response);
  s->append({{"type", "query"},
             {"qid", q.qid},
             {"goal", q.goal},
             {"maxDepth", q.max_depth},
             {"hints", q.hints},
             {"abduction", q.abduction},
             {"position", q.position},
             {"digest", q.digest},
             {"time", q.time}});
  s->queries.push_back(q);
  s->computed[q.qid] = computed;
  json response = computed->response;
  response["digest"] = q.digest;
  return response;
}

Rendered SessionStore::get_explanation(const std::string& id,
                                       const std::string& qid,
                                       const std::string& format,
                                       std::size_t answer) {
  auto s = find(id);
  std::shared_ptr<Computed> c;
  {
    std::lock_guard<std::mutex> lock(s->mu);
    auto it = s->computed.find(qid);
    if (it != s->computed.end()) {
      c = it->second;
    } else {
      auto q = std::find_if(s->queries.begin(), s->queries.end(),
                            [&](const QueryRecord& r) { return r.qid == qid; });
      if (q == s->queries.end()) {
        throw ServiceError(404, "unknown query " + qid);
      }
      c = evaluate(s->kb_at(corpus_, q->position), *q);
      s->computed[qid] = c;
    }
  }
  if (answer >= c->explanations.size()) {
    throw ServiceError(404, "query " + qid + " has no answer " +
                                std::to_string(answer));
  }
  const Explanation& e = c->explanations[answer];
  if (format == "text") return {"text/plain", to_text(c->kb, e)};
  if (format == "json") {
    return {"application/json", to_json(c->kb, e).dump(2)};
  }
  if (format == "dot") return {"text/vnd.graphviz", to_dot(c->kb, e)};
  throw ServiceError(400, "unknown format " + format);
}

json SessionStore::scenarios() const {
  json out = json::array();
  try {
    for (const ScenarioBundle& b : list_scenarios(corpus_dir_)) {
      out.push_back({{"name", b.name},
                     {"notes", b.notes},
                     {"reconstruction", b.reconstruction}});
    }
  } catch (const CorpusError& e) {
    throw ServiceError(500, e.what());
  }
  return out;
}

// --- HTTP -------------------------------------------------------------------

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const ServiceError& e) {
      send_json(res, e.status(), e.body());
    } catch (const json::exception& e) {
      send_json(res, 400, {{"error", e.what()}, {"status", 400}});
    } catch (const std::exception& e) {
      send_json(res, 500, {{"error", e.what()}, {"status", 500}});
    }
  };
}

json body_of(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json j = json::parse(req.body, nullptr, false);
  if (j.is_discarded()) throw ServiceError(400, "request body is not JSON");
  return j;
}

}  // namespace

void register_routes(httplib::Server& server, SessionStore& store) {
  server.set_default_headers(
      {{"Access-Control-Allow-Origin", "*"},
       {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
       {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  server.Post("/sessions", guarded([&store](const httplib::Request& req,
                                            httplib::Response& res) {
    json body = body_of(req);
    std::optional<std::string> scenario;
    if (body.contains("scenario") && !body["scenario"].is_null()) {
      scenario = body["scenario"].get<std::string>();
    }
    send_json(res, 201, store.create_session(scenario));
  }));
  server.Get(R"(/sessions/([0-9a-f]+))",
             guarded([&store](const httplib::Request& req,
                              httplib::Response& res) {
               send_json(res, 200, store.get_session(req.matches[1]));
             }));
  server.Post(R"(/sessions/([0-9a-f]+)/evidence)",
              guarded([&store](const httplib::Request& req,
                               httplib::Response& res) {
                json body = body_of(req);
                if (!body.contains("fact") || !body["fact"].is_string()) {
                  throw ServiceError(400,
                                     "request needs a string field \"fact\"");
                }
                send_json(res, 201,
                          store.add_evidence(req.matches[1],
                                             body["fact"].get<std::string>()));
              }));
  server.Delete(R"(/sessions/([0-9a-f]+)/evidence/(\d+))",
                guarded([&store](const httplib::Request& req,
                                 httplib::Response& res) {
                  const std::uint64_t seq =
                      std::stoull(std::string(req.matches[2]));
                  send_json(res, 200,
                            store.retract_evidence(req.matches[1], seq));
                }));
  server.Post(R"(/sessions/([0-9a-f]+)/query)",
              guarded([&store](const httplib::Request& req,
                               httplib::Response& res) {
                send_json(res, 200,
                          store.run_query(req.matches[1], body_of(req)));
              }));
  server.Get(R"(/sessions/([0-9a-f]+)/explanations/([A-Za-z0-9_]+))",
             guarded([&store](const httplib::Request& req,
                              httplib::Response& res) {
               const std::string format = req.has_param("format")
                                              ? req.get_param_value("format")
                                              : "json";
               std::size_t answer = 0;
               if (req.has_param("answer")) {
                 try {
                   answer = std::stoul(req.get_param_value("answer"));
                 } catch (const std::exception&) {
                   throw ServiceError(400, "bad answer index");
                 }
               }
               Rendered r = store.get_explanation(req.matches[1],
                                                  req.matches[2], format,
                                                  answer);
               res.status = 200;
               res.set_content(r.body, r.content_type);
             }));
  server.Get("/scenarios", guarded([&store](const httplib::Request&,
                                            httplib::Response& res) {
    send_json(res, 200, store.scenarios());
  }));
}

int serve(const std::string& host, int port,
          std::optional<fs::path> state_dir) {
  if (const char* env = std::getenv("ABR_STATE_DIR"); env && *env) {
    state_dir = fs::path(env);
  }
  SessionStore store(state_dir);
  httplib::Server server;
  register_routes(server, store);
  std::cerr << "abr: listening on " << host << ':' << port << '\n';
  if (!server.listen(host, port)) {
    std::cerr << "abr: cannot listen on " << host << ':' << port << '\n';
    return 1;
  }
  return 0;
}

}  // namespace abr
