// Copyright 2026 The pdflow Authors.
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

#ifndef PDFLOW_SERVER_H_
#define PDFLOW_SERVER_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "pdflow/findings.h"
#include "pdflow/triage.h"

namespace httplib {
class Server;
}

namespace pdflow {

struct ServerOptions {
  std::string labels_path;
  // Directory that finding paths are relative to, for snippets.
  std::string root = ".";
  // Optional static UI bundle served at "/".
  std::string ui_dir;
  std::string host = "127.0.0.1";
  int port = 8765;  // 0 picks a free port
  std::int64_t threshold = kDefaultSuppressionThreshold;
};

// Local review API over one immutable findings document. Reads run
// concurrently; label writes are serialized and persisted atomically.
class ApiServer {
 public:
  // Loads the labels file. Errors: kIoError, kSchemaMismatch.
  static absl::StatusOr<std::unique_ptr<ApiServer>> Create(
      FindingsDocument doc, ServerOptions options);
  ~ApiServer();

  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Binds the socket and returns the port. Errors: kPortInUse.
  absl::StatusOr<int> Bind();
  // Serves until Stop(). Call after Bind(). Returns at once if Stop() came
  // first.
  absl::Status Serve();
  void Stop();

  // Handlers, exposed for in-process tests. Return values are JSON bodies;
  // errors carry their kind.
  absl::StatusOr<nlohmann::json> Findings(
      const std::string& group_by, const std::vector<std::string>& filters,
      std::int64_t page, std::int64_t page_size) const;
  nlohmann::json TypeView() const;
  nlohmann::json Heatmap() const;
  nlohmann::json Ropa() const;
  nlohmann::json Metrics() const;
  nlohmann::json Labels() const;
  // Errors: kUnknownKey for an unknown id, kIoError when the file is gone.
  absl::StatusOr<nlohmann::json> Snippet(const std::string& id,
                                         int context) const;
  // Errors: kSchemaMismatch for a bad body, kUnknownKey for an unknown
  // finding id, kIoError when persisting fails (the label is not kept).
  absl::StatusOr<nlohmann::json> PostLabel(const std::string& body);

 private:
  ApiServer(FindingsDocument doc, ServerOptions options,
            std::vector<TriageLabel> labels);
  void Routes();
  const Finding* FindById(const std::string& id) const;

  const FindingsDocument doc_;
  const ServerOptions options_;
  mutable std::shared_mutex labels_mu_;
  std::vector<TriageLabel> labels_;
  std::unique_ptr<httplib::Server> http_;
  // Lets Stop() win against a Serve() that has not started listening yet.
  std::atomic<bool> stop_requested_{false};
  std::atomic<bool> serving_{false};
};

}  // namespace pdflow

#endif  // PDFLOW_SERVER_H_
