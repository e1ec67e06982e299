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

// Play service: sessions of a human against a search agent over HTTP.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "minibal/error.h"
#include "minibal/http_server.h"
#include "minibal/service.h"

namespace {

minibal::PlayServer* g_server = nullptr;

void HandleSignal(int) {
  if (g_server != nullptr) g_server->Stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced-play session service"};
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string snapshot;
  minibal::BudgetCaps caps;
  app.add_option("--host", host, "Listen address")->capture_default_str();
  app.add_option("--port", port, "Listen port")->capture_default_str();
  app.add_option("--snapshot", snapshot,
                 "Session snapshot file, loaded at start and written on exit");
  app.add_option("--max-iterations", caps.max_iterations,
                 "Per-move iteration cap")
      ->capture_default_str();
  app.add_option("--max-seconds", caps.max_seconds, "Per-move time cap")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  minibal::SessionStore store(caps);
  try {
    if (!snapshot.empty() && std::filesystem::exists(snapshot)) {
      std::printf("restored %zu sessions\n", store.Load(snapshot));
    }
  } catch (const minibal::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  minibal::PlayServer server(&store);
  if (!server.Bind(host, port)) {
    std::fprintf(stderr, "error: cannot bind %s:%d\n", host.c_str(), port);
    return 2;
  }
  g_server = &server;
  std::signal(SIGINT, HandleSignal);
  std::signal(SIGTERM, HandleSignal);
  std::printf("listening on http://%s:%d\n", host.c_str(), port);
  std::fflush(stdout);
  server.ListenAfterBind();
  g_server = nullptr;

  if (!snapshot.empty()) {
    try {
      store.Snapshot(snapshot);
      std::printf("saved %zu sessions to %s\n", store.size(),
                  snapshot.c_str());
    } catch (const minibal::Error& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 2;
    }
  }
  return 0;
}
