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

#include "minibal/http_server.h"

#include <httplib.h>

#include "minibal/error.h"

namespace minibal {

using nlohmann::json;

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownSession:
      return 404;
    case ErrorCode::kWrongTurn:
      return 409;
    case ErrorCode::kUnknownGame:
    case ErrorCode::kInvalidAgentSpec:
    case ErrorCode::kIllegalMove:
    case ErrorCode::kParseError:
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kInvalidBudget:
      return 400;
    default:
      return 500;
  }
}

namespace {

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response& res, ErrorCode code,
                const std::string& message,
                const json& legal_actions = nullptr) {
  json body = {{"code", ErrorCodeName(code)}, {"message", message}};
  if (!legal_actions.is_null()) body["legal_actions"] = legal_actions;
  Reply(res, HttpStatusFor(code), body);
}

json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError,
                std::string("request body is not JSON: ") + e.what());
  }
}

// Runs `handler`, mapping errors onto the uniform error body.
template <typename Handler>
void Guarded(httplib::Response& res, Handler&& handler) {
  try {
    handler();
  } catch (const Error& e) {
    ReplyError(res, e.code(), e.what());
  } catch (const json::exception& e) {
    ReplyError(res, ErrorCode::kParseError, e.what());
  } catch (const std::exception& e) {
    ReplyError(res, ErrorCode::kAgentFailure, e.what());
  }
}

}  // namespace

PlayServer::PlayServer(SessionStore* store)
    : server_(std::make_unique<httplib::Server>()), store_(store) {
  httplib::Server& s = *server_;

  s.Post("/sessions", [this](const httplib::Request& req,
                             httplib::Response& res) {
    Guarded(res, [&] { Reply(res, 201, store_->Create(ParseBody(req))); });
  });

  s.Get(R"(/sessions/([^/]+))", [this](const httplib::Request& req,
                                       httplib::Response& res) {
    Guarded(res, [&] { Reply(res, 200, store_->Get(req.matches[1])); });
  });

  s.Post(R"(/sessions/([^/]+)/move)", [this](const httplib::Request& req,
                                             httplib::Response& res) {
    const std::string id = req.matches[1];
    try {
      Reply(res, 200, store_->Move(id, ParseBody(req)));
    } catch (const Error& e) {
      json legal = nullptr;
      if (e.code() == ErrorCode::kIllegalMove) {
        legal = store_->Get(id)["legal_actions"];
      }
      ReplyError(res, e.code(), e.what(), legal);
    } catch (const std::exception& e) {
      ReplyError(res, ErrorCode::kParseError, e.what());
    }
  });

  s.Post(R"(/sessions/([^/]+)/agent-move)",
         [this](const httplib::Request& req, httplib::Response& res) {
           Guarded(res,
                   [&] { Reply(res, 200, store_->AgentMove(req.matches[1])); });
         });

  s.Get("/games", [this](const httplib::Request&, httplib::Response& res) {
    Reply(res, 200, store_->Games());
  });

  // The browser client is served from another origin during development.
  s.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  s.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

PlayServer::~PlayServer() = default;

int PlayServer::BindToAnyPort(const std::string& host) {
  return server_->bind_to_any_port(host);
}

bool PlayServer::Bind(const std::string& host, int port) {
  return server_->bind_to_port(host, port);
}

bool PlayServer::ListenAfterBind() { return server_->listen_after_bind(); }

void PlayServer::Stop() { server_->stop(); }

void PlayServer::WaitUntilReady() const { server_->wait_until_ready(); }

}  // namespace minibal
