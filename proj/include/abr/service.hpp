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

// Investigation sessions: an append-only evidence log per session, queries
// against the corpus plus active evidence, and the HTTP front end.
//
// Endpoints:
//   POST   /sessions                         {"scenario"?} -> {"sessionId"}
//   GET    /sessions/{id}
//   POST   /sessions/{id}/evidence           {"fact"} -> {"seq"}
//   DELETE /sessions/{id}/evidence/{seq}
//   POST   /sessions/{id}/query              {"goal", "maxDepth"?, "hints"?,
//                                             "abduction"?}
//   GET    /sessions/{id}/explanations/{qid}?format=text|json|dot&answer=N
//   GET    /scenarios
//
// With a state directory each session is persisted as <id>.jsonl, one
// record per line: create, assert, retract and query.

#ifndef ABR_SERVICE_HPP_
#define ABR_SERVICE_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "abr/corpus.hpp"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace abr {

class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, const std::string& message,
               nlohmann::json details = nullptr)
      : std::runtime_error(message), status_(status),
        details_(std::move(details)) {}
  int status() const { return status_; }
  nlohmann::json body() const;

 private:
  int status_;
  nlohmann::json details_;
};

// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

struct Rendered {
  std::string content_type;
  std::string body;
};

class SessionStore {
 public:
  // Replays every session log found in `state_dir`.
  explicit SessionStore(std::optional<std::filesystem::path> state_dir,
                        std::filesystem::path corpus = corpus_dir());
  ~SessionStore();
  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  // All operations throw ServiceError.
  nlohmann::json create_session(const std::optional<std::string>& scenario);
  nlohmann::json get_session(const std::string& id);
  nlohmann::json add_evidence(const std::string& id, const std::string& fact);
  nlohmann::json retract_evidence(const std::string& id, std::uint64_t seq);
  nlohmann::json run_query(const std::string& id,
                           const nlohmann::json& request);
  Rendered get_explanation(const std::string& id, const std::string& qid,
                           const std::string& format, std::size_t answer);
  nlohmann::json scenarios() const;

  std::size_t session_count() const;

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id);
  void replay(const std::filesystem::path& log);

  std::optional<std::filesystem::path> state_dir_;
  std::filesystem::path corpus_dir_;
  KnowledgeBase corpus_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

void register_routes(httplib::Server& server, SessionStore& store);

// Blocks until the server stops. ABR_STATE_DIR overrides `state_dir`.
int serve(const std::string& host, int port,
          std::optional<std::filesystem::path> state_dir);

}  // namespace abr

#endif  // ABR_SERVICE_HPP_
