#include "anthroscore/stub_server.hpp"

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "anthroscore/errors.hpp"
#include "anthroscore/scoring.hpp"

namespace anthro {

using nlohmann::json;

struct StubServer::Impl {
  explicit Impl(StubBackend stub_in) : stub(std::move(stub_in)) {
    server.Post("/fill-mask", [this](const httplib::Request& req, httplib::Response& res) {
      handle(req, res);
    });
  }

  void handle(const httplib::Request& req, httplib::Response& res) {
    json request;
    try {
      request = json::parse(req.body);
    } catch (const json::exception&) {
      res.status = 400;
      res.set_content(R"({"error": "bad_request"})", "application/json");
      return;
    }
    const std::string text = request.value("text", "");
    if (count_mask_placeholders(text) != 1) {
      res.status = 422;
      res.set_content(R"({"error": "mask_tokenization"})", "application/json");
      return;
    }
    json probabilities = json::object();
    json variants = json::object();
    for (const auto& target : request.value("targets", std::vector<std::string>{})) {
      probabilities[target] = stub.probability(text, target);
      variants[target] = json::array({target});
    }
    json response;
    response["model"] = stub.model_id();
    response["probabilities"] = probabilities;
    response["resolved_variants"] = variants;
    res.set_content(response.dump(), "application/json");
  }

  StubBackend stub;
  httplib::Server server;
  std::thread thread;
};

StubServer::StubServer(StubBackend stub) : impl_(std::make_unique<Impl>(std::move(stub))) {}

StubServer::~StubServer() { stop(); }

int StubServer::start(int port) {
  if (port == 0) {
    port_ = impl_->server.bind_to_any_port("127.0.0.1");
  } else {
    if (!impl_->server.bind_to_port("127.0.0.1", port)) {
      throw ConfigError("cannot bind stub server to port " + std::to_string(port));
    }
    port_ = port;
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port_;
}

void StubServer::stop() {
  if (impl_ && impl_->server.is_running()) {
    impl_->server.stop();
  }
  if (impl_ && impl_->thread.joinable()) {
    impl_->thread.join();
  }
}

void StubServer::run(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) {
    throw ConfigError("stub server failed to listen on " + host + ":" +
                      std::to_string(port));
  }
}

}  // namespace anthro
