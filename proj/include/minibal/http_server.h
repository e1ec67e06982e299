// Copyright 2026 The Minibal Authors
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

// HTTP + JSON front end for SessionStore.

#ifndef MINIBAL_HTTP_SERVER_H_
#define MINIBAL_HTTP_SERVER_H_

#include <memory>
#include <string>

#include "minibal/error.h"
#include "minibal/service.h"

namespace httplib {
class Server;
}

namespace minibal {

// Routes:
//   POST /sessions                 {game, agent, human_seat, seed}
//   GET  /sessions/{id}
//   POST /sessions/{id}/move       {action}
//   POST /sessions/{id}/agent-move
//   GET  /games
// Errors are {code, message, legal_actions?}.
class PlayServer {
 public:
  explicit PlayServer(SessionStore* store);
  ~PlayServer();

  PlayServer(const PlayServer&) = delete;
  PlayServer& operator=(const PlayServer&) = delete;

  // Binds to an ephemeral port and returns it, or -1 on failure.
  int BindToAnyPort(const std::string& host);
  bool Bind(const std::string& host, int port);
  // Blocks until Stop() is called.
  bool ListenAfterBind();
  void Stop();
  void WaitUntilReady() const;

 private:
  std::unique_ptr<httplib::Server> server_;
  SessionStore* store_;
};

int HttpStatusFor(ErrorCode code);

}  // namespace minibal

#endif  // MINIBAL_HTTP_SERVER_H_
