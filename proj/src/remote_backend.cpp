#include "anthroscore/remote_backend.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "anthroscore/errors.hpp"
#include "anthroscore/scoring.hpp"
#include "anthroscore/serialize.hpp"

namespace anthro {

using nlohmann::json;

namespace {

// Splits "http://host:port/base/path" into origin and path prefix.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
  auto scheme_end = endpoint.find("://");
  std::size_t path_start =
      endpoint.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
  if (path_start == std::string::npos) return {endpoint, ""};
  std::string base = endpoint.substr(path_start);
  while (!base.empty() && base.back() == '/') base.pop_back();
  return {endpoint.substr(0, path_start), base};
}

}  // namespace

RemoteBackend::RemoteBackend(BackendDescriptor descriptor)
    : descriptor_(std::move(descriptor)) {
  descriptor_.validate();
  if (descriptor_.kind != BackendKind::kRemote) {
    throw ConfigError("RemoteBackend requires a remote descriptor");
  }
  std::tie(host_, base_path_) = split_endpoint(descriptor_.endpoint);
}

RemoteBackend::~RemoteBackend() = default;

PronounDistribution RemoteBackend::fill_mask_pronouns(
    const std::string& masked_sentence, const PronounInventory& inventory) const {
  if (count_mask_placeholders(masked_sentence) != 1) {
    throw MaskTokenizationError("expected exactly one placeholder in: " +
                                masked_sentence);
  }
  std::string text = masked_sentence;
  auto pos = text.find(kMaskPlaceholder);
  text.replace(pos, std::string(kMaskPlaceholder).size(), descriptor_.mask_token);

  json request;
  request["model"] = descriptor_.model_id;
  request["text"] = text;
  request["targets"] = inventory.all();
  const std::string body = request.dump();

  httplib::Client client(host_);
  client.set_connection_timeout(10);
  client.set_read_timeout(120);
  httplib::Headers headers;
  if (const char* token = std::getenv("ANTHROSCORE_API_TOKEN")) {
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }

  const int kAttempts = 3;
  std::string last_error;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(200 << (attempt - 1)));
    }
    auto res = client.Post(base_path_ + "/fill-mask", headers, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status == 422) {
      throw MaskTokenizationError("backend reports mask spans more than one token: " +
                                  masked_sentence);
    }
    if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    json response;
    try {
      response = json::parse(res->body);
    } catch (const json::exception& e) {
      throw BackendUnreachable(std::string("malformed backend response: ") + e.what());
    }
    PronounDistribution dist = distribution_from_json(response);
    for (const auto& p : inventory.all()) {
      if (!dist.probabilities.count(p)) {
        throw MissingPronoun("backend response missing pronoun '" + p + "'");
      }
      auto it = dist.resolved_variants.find(p);
      if (it != dist.resolved_variants.end() && it->second.empty()) {
        throw VocabularyMiss("pronoun '" + p +
                             "' has no vocabulary variants in model " +
                             dist.model_id);
      }
    }
    return dist;
  }
  throw BackendUnreachable("fill-mask request to " + descriptor_.endpoint +
                           " failed after " + std::to_string(kAttempts) +
                           " attempts: " + last_error);
}

}  // namespace anthro
