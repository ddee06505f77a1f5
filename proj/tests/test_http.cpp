#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "anthroscore/backend.hpp"
#include "anthroscore/cache.hpp"
#include "anthroscore/errors.hpp"
#include "anthroscore/remote_backend.hpp"
#include "anthroscore/stub_server.hpp"

using namespace anthro;

namespace {

struct ServerFixture {
  ServerFixture() : server(StubBackend::lexical()) { port = server.start(0); }
  ~ServerFixture() { server.stop(); }

  BackendDescriptor descriptor() const {
    BackendDescriptor d;
    d.kind = BackendKind::kRemote;
    d.model_id = "stub-lexical";
    d.endpoint = "http://127.0.0.1:" + std::to_string(port);
    return d;
  }

  StubServer server;
  int port = 0;
};

}  // namespace

TEST_CASE("remote client round-trips the stub server") {
  ServerFixture fx;
  auto inv = PronounInventory::bundled();
  RemoteBackend remote(fx.descriptor());
  StubBackend local = StubBackend::lexical();

  for (const std::string text :
       {"[MASK] halts.", "[MASK] learns chess.", "We propose [MASK] here."}) {
    auto over_http = remote.fill_mask_pronouns(text, inv);
    auto in_process = local.fill_mask_pronouns(text, inv);
    CHECK(over_http.probabilities == in_process.probabilities);
    CHECK(over_http.model_id == "stub-lexical");
  }
}

TEST_CASE("mask errors surface as MaskTokenizationError via 422") {
  ServerFixture fx;
  auto inv = PronounInventory::bundled();
  RemoteBackend remote(fx.descriptor());
  CHECK_THROWS_AS(remote.fill_mask_pronouns("no mask here", inv),
                  MaskTokenizationError);
  CHECK_THROWS_AS(remote.fill_mask_pronouns("[MASK] then [MASK]", inv),
                  MaskTokenizationError);
}

TEST_CASE("unreachable endpoints raise BackendUnreachable after retries") {
  BackendDescriptor d;
  d.kind = BackendKind::kRemote;
  d.model_id = "m";
  d.endpoint = "http://127.0.0.1:9";  // discard port, nothing listens
  RemoteBackend remote(d);
  auto inv = PronounInventory::bundled();
  CHECK_THROWS_AS(remote.fill_mask_pronouns("[MASK] halts.", inv),
                  BackendUnreachable);
}

TEST_CASE("remote backend composes with the cache") {
  ServerFixture fx;
  auto dir = std::filesystem::temp_directory_path() / "anthro-tests";
  std::filesystem::create_directories(dir);
  auto path = (dir / "remote-cache.log").string();
  std::filesystem::remove(path);

  auto inv = PronounInventory::bundled();
  auto backend = make_backend(fx.descriptor(), path);
  auto first = backend->fill_mask_pronouns("[MASK] halts.", inv);

  // Stop the server: the cached copy must still answer.
  fx.server.stop();
  auto second = backend->fill_mask_pronouns("[MASK] halts.", inv);
  CHECK(second.probabilities == first.probabilities);
}
