#pragma once

#include <memory>
#include <string>

#include "anthroscore/backend.hpp"

namespace anthro {

// Serves a StubBackend over the fill-mask protocol, so the remote client
// path can be exercised end to end without a real model.
class StubServer {
 public:
  explicit StubServer(StubBackend stub);
  ~StubServer();

  // Binds to 127.0.0.1 on the given port (0 picks a free port) and serves
  // on a background thread.  Returns the bound port.
  int start(int port = 0);
  void stop();

  int port() const { return port_; }

  // Blocking serve loop for the CLI's serve-stub subcommand.
  void run(const std::string& host, int port);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

}  // namespace anthro
